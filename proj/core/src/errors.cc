// Copyright 2026 The CCSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccss/errors.h"

namespace ccss {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyMask: return "empty-mask";
    case ErrorCode::kDegenerateObject: return "degenerate-object";
    case ErrorCode::kDegenerateSilhouette: return "degenerate-silhouette";
    case ErrorCode::kSingularPoint: return "singular-point";
    case ErrorCode::kDegenerateChord: return "degenerate-chord";
    case ErrorCode::kScheduleMismatch: return "schedule-mismatch";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kEmptyDatabase: return "empty-database";
    case ErrorCode::kNotFound: return "not-found";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace ccss
