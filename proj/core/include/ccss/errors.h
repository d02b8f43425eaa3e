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

#ifndef CCSS_ERRORS_H_
#define CCSS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ccss {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyMask,
  kDegenerateObject,
  kDegenerateSilhouette,
  kSingularPoint,
  kDegenerateChord,
  kScheduleMismatch,
  kFileNotFound,
  kIo,
  kParse,
  kVersionMismatch,
  kEmptyDatabase,
  kNotFound,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (CLI exit paths, HTTP status mapping) can branch without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ccss

#endif  // CCSS_ERRORS_H_
