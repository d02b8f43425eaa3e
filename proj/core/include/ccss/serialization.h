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

#ifndef CCSS_SERIALIZATION_H_
#define CCSS_SERIALIZATION_H_

#include <nlohmann/json.hpp>

#include "ccss/contour.h"
#include "ccss/descriptor.h"

namespace ccss {

inline constexpr int kDescriptorFormatVersion = 1;

// {"format_version": 1, "schedule": [sigma...],
//  "rows": [[[x_deck, c, "max" | "min"], ...], ...]}
// Points within a row are written in x_deck order across both families.
nlohmann::json CcssToJson(const CCSSImage& image);
CCSSImage CcssFromJson(const nlohmann::json& doc);

nlohmann::json SilhouetteToJson(const NormalizedSilhouette& silhouette);
NormalizedSilhouette SilhouetteFromJson(const nlohmann::json& doc);

}  // namespace ccss

#endif  // CCSS_SERIALIZATION_H_
