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

#ifndef DPKIT_DISTANCE_MAP_H_
#define DPKIT_DISTANCE_MAP_H_

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "dpkit/rational.h"

namespace dpkit {

// A monotone nondecreasing map on [0, inf] with map(0) = 0. Stability
// functions of transformations and privacy functions of measurements are
// both DistanceMaps.
//
// The shape tag keeps common compositions exact and inspectable:
//   kLinear     d -> c * d
//   kQuadratic  d -> c * d^2   (zCDP privacy of integer-valued Gaussian noise)
//   kGeneral    anything else, kept as an opaque function
class DistanceMap {
 public:
  enum class Shape { kLinear, kQuadratic, kGeneral };
  using Fn = std::function<ExtRational(const ExtRational&)>;

  static DistanceMap Identity() { return Linear(ExtRational(1)); }
  static DistanceMap Linear(ExtRational slope);
  static DistanceMap Quadratic(ExtRational coefficient);
  // `fn` must be monotone with fn(0) = 0.
  static DistanceMap General(Fn fn, std::string description = "general");

  ExtRational operator()(const ExtRational& d) const;

  Shape shape() const { return shape_; }
  // The slope (kLinear) or coefficient (kQuadratic).
  const ExtRational& coefficient() const { return coefficient_; }
  bool is_linear() const { return shape_ == Shape::kLinear; }

  std::string ToString() const;

 private:
  DistanceMap(Shape shape, ExtRational coefficient, Fn fn, std::string desc)
      : shape_(shape),
        coefficient_(std::move(coefficient)),
        fn_(std::move(fn)),
        description_(std::move(desc)) {}

  Shape shape_;
  ExtRational coefficient_;
  Fn fn_;  // only for kGeneral
  std::string description_;
};

// d -> outer(inner(d)). Linear after linear stays linear (slopes multiply);
// quadratic after linear and linear after quadratic stay quadratic.
DistanceMap ComposeMaps(const DistanceMap& outer, const DistanceMap& inner);

// Pointwise sum. Linear + linear is linear and quadratic + quadratic is
// quadratic; mixed shapes become general. "EmptyList" (InvalidArgument) for
// an empty input.
absl::StatusOr<DistanceMap> SumMaps(std::span<const DistanceMap> maps);

}  // namespace dpkit

#endif  // DPKIT_DISTANCE_MAP_H_
