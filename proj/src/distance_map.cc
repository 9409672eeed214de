//
// Copyright 2026 The dpkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpkit/distance_map.h"

#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {

DistanceMap DistanceMap::Linear(ExtRational slope) {
  return DistanceMap(Shape::kLinear, std::move(slope), nullptr, "");
}

DistanceMap DistanceMap::Quadratic(ExtRational coefficient) {
  return DistanceMap(Shape::kQuadratic, std::move(coefficient), nullptr, "");
}

DistanceMap DistanceMap::General(Fn fn, std::string description) {
  return DistanceMap(Shape::kGeneral, ExtRational(), std::move(fn),
                     std::move(description));
}

ExtRational DistanceMap::operator()(const ExtRational& d) const {
  switch (shape_) {
    case Shape::kLinear:
      return coefficient_ * d;
    case Shape::kQuadratic:
      return coefficient_ * (d * d);
    case Shape::kGeneral:
      return fn_(d);
  }
  return ExtRational::Infinity();
}

std::string DistanceMap::ToString() const {
  switch (shape_) {
    case Shape::kLinear:
      return absl::StrCat("linear(", coefficient_.ToString(), ")");
    case Shape::kQuadratic:
      return absl::StrCat("quadratic(", coefficient_.ToString(), ")");
    case Shape::kGeneral:
      return description_;
  }
  return "";
}

DistanceMap ComposeMaps(const DistanceMap& outer, const DistanceMap& inner) {
  using Shape = DistanceMap::Shape;
  if (inner.shape() == Shape::kLinear) {
    const ExtRational& a = inner.coefficient();
    if (outer.shape() == Shape::kLinear) {
      return DistanceMap::Linear(outer.coefficient() * a);
    }
    if (outer.shape() == Shape::kQuadratic) {
      return DistanceMap::Quadratic(outer.coefficient() * (a * a));
    }
  }
  if (inner.shape() == Shape::kQuadratic && outer.shape() == Shape::kLinear) {
    return DistanceMap::Quadratic(outer.coefficient() * inner.coefficient());
  }
  return DistanceMap::General(
      [outer, inner](const ExtRational& d) { return outer(inner(d)); },
      absl::StrCat(outer.ToString(), " o ", inner.ToString()));
}

absl::StatusOr<DistanceMap> SumMaps(std::span<const DistanceMap> maps) {
  if (maps.empty()) {
    return absl::InvalidArgumentError("EmptyList: cannot sum zero maps");
  }
  DistanceMap::Shape shape = maps.front().shape();
  bool uniform = shape != DistanceMap::Shape::kGeneral;
  for (const DistanceMap& m : maps) uniform = uniform && m.shape() == shape;
  if (uniform) {
    ExtRational total;
    for (const DistanceMap& m : maps) total += m.coefficient();
    return shape == DistanceMap::Shape::kLinear ? DistanceMap::Linear(total)
                                                : DistanceMap::Quadratic(total);
  }
  std::vector<DistanceMap> parts(maps.begin(), maps.end());
  std::string description = "sum(";
  for (size_t i = 0; i < parts.size(); ++i) {
    absl::StrAppend(&description, i ? ", " : "", parts[i].ToString());
  }
  description += ")";
  return DistanceMap::General(
      [parts](const ExtRational& d) {
        ExtRational total;
        for (const DistanceMap& m : parts) total += m(d);
        return total;
      },
      description);
}

}  // namespace dpkit
