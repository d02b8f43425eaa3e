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

#include "ccss/serialization.h"

#include <algorithm>

#include "ccss/errors.h"

namespace ccss {

using nlohmann::json;

json CcssToJson(const CCSSImage& image) {
  json rows = json::array();
  for (const CcssRow& row : image.rows) {
    std::vector<ScalePoint> merged = row.max_points;
    merged.insert(merged.end(), row.min_points.begin(), row.min_points.end());
    std::stable_sort(merged.begin(), merged.end(),
                     [](const ScalePoint& a, const ScalePoint& b) {
                       return a.x_deck < b.x_deck;
                     });
    json out_row = json::array();
    for (const ScalePoint& p : merged) {
      out_row.push_back(json::array({p.x_deck, p.c, ExtremumKindName(p.kind)}));
    }
    rows.push_back(std::move(out_row));
  }
  return json{{"format_version", kDescriptorFormatVersion},
              {"schedule", image.schedule.sigmas},
              {"rows", std::move(rows)}};
}

CCSSImage CcssFromJson(const json& doc) {
  try {
    if (doc.at("format_version").get<int>() != kDescriptorFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "descriptor format version " +
                      doc.at("format_version").dump());
    }
    CCSSImage image;
    image.schedule.sigmas = doc.at("schedule").get<std::vector<double>>();
    const json& rows = doc.at("rows");
    if (rows.size() != image.schedule.size()) {
      throw Error(ErrorCode::kParse, "descriptor row count != schedule length");
    }
    image.rows.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const json& triple : rows[r]) {
        ScalePoint p;
        p.x_deck = triple.at(0).get<double>();
        p.c = triple.at(1).get<double>();
        p.row = r;
        const std::string kind = triple.at(2).get<std::string>();
        if (kind == "max") {
          p.kind = ExtremumKind::kMaximum;
          image.rows[r].max_points.push_back(p);
        } else if (kind == "min") {
          p.kind = ExtremumKind::kMinimum;
          image.rows[r].min_points.push_back(p);
        } else {
          throw Error(ErrorCode::kParse, "unknown extremum kind " + kind);
        }
      }
    }
    return image;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("descriptor: ") + e.what());
  }
}

json SilhouetteToJson(const NormalizedSilhouette& s) {
  json points = json::array();
  for (const Point2& p : s.points) points.push_back(json::array({p.x, p.y}));
  return json{{"points", std::move(points)},
              {"bow_index", s.bow_index},
              {"stern_index", s.stern_index},
              {"deck_span", json::array({s.deck_span.x_min, s.deck_span.x_max})},
              {"origin", json::array({s.origin.x, s.origin.y})},
              {"pixel_scale", s.pixel_scale}};
}

NormalizedSilhouette SilhouetteFromJson(const json& doc) {
  try {
    NormalizedSilhouette s;
    for (const json& p : doc.at("points")) {
      s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    s.bow_index = doc.at("bow_index").get<std::size_t>();
    s.stern_index = doc.at("stern_index").get<std::size_t>();
    s.deck_span = {doc.at("deck_span").at(0).get<double>(),
                   doc.at("deck_span").at(1).get<double>()};
    s.origin = {doc.at("origin").at(0).get<double>(),
                doc.at("origin").at(1).get<double>()};
    s.pixel_scale = doc.at("pixel_scale").get<double>();
    if (s.bow_index >= s.points.size() || s.stern_index >= s.points.size()) {
      throw Error(ErrorCode::kParse, "silhouette index out of range");
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("silhouette: ") + e.what());
  }
}

}  // namespace ccss
