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

// Integer-valued noise with exact samplers.
//
// Every sampler here consumes only uniform integers from an RngStream and
// performs rational arithmetic, so its output distribution is exactly the
// stated one (no floating-point rounding) and identical on every platform
// for a given stream.

#ifndef DPKIT_NOISE_H_
#define DPKIT_NOISE_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "dpkit/distance_map.h"
#include "dpkit/metric.h"
#include "dpkit/rational.h"
#include "dpkit/rng.h"

namespace dpkit {

// Requires 0 <= p <= 1.
bool SampleBernoulli(const Rational& p, RngStream& rng);
// Bernoulli(exp(-gamma)). Requires gamma >= 0.
bool SampleBernoulliExp(const Rational& gamma, RngStream& rng);
// P(Z = k) proportional to exp(-|k| / scale). Requires scale > 0.
BigInt SampleDiscreteLaplace(const Rational& scale, RngStream& rng);
// P(Z = k) proportional to exp(-k^2 / (2 sigma2)). Requires sigma2 > 0.
BigInt SampleDiscreteGaussian(const Rational& sigma2, RngStream& rng);

// How a measurement buys privacy, stated per unit of input distance.
//
//   Geometric(eps):        pure DP, privacy map linear(eps).
//   DiscreteGaussian(rho): zCDP, privacy map quadratic(rho).
class NoiseSpec {
 public:
  enum class Kind { kGeometric, kDiscreteGaussian };

  // "NonPositiveEpsilon" unless epsilon_unit > 0. Infinity means no noise.
  static absl::StatusOr<NoiseSpec> Geometric(ExtRational epsilon_unit);
  // "NonPositiveRho" unless rho_unit > 0. Infinity means no noise.
  static absl::StatusOr<NoiseSpec> DiscreteGaussian(ExtRational rho_unit);
  // rho_unit = 1 / (2 sigma^2) for a unit-sensitivity query.
  // "NonPositiveSigma" unless sigma > 0.
  static absl::StatusOr<NoiseSpec> DiscreteGaussianWithSigma(
      const Rational& sigma);

  Kind kind() const { return kind_; }
  const ExtRational& unit_cost() const { return unit_cost_; }
  Measure measure() const;
  DistanceMap privacy_map() const;
  // Same kind, unit_cost * factor. Requires factor > 0.
  NoiseSpec Scaled(const Rational& factor) const;
  std::string ToString() const;

 private:
  NoiseSpec(Kind kind, ExtRational unit_cost)
      : kind_(kind), unit_cost_(std::move(unit_cost)) {}
  Kind kind_;
  ExtRational unit_cost_;
};

// Additive noise for an integer query that moves by at most `sensitivity`
// when the input moves by one unit of distance.
//
// Geometric: P(Z = k) proportional to exp(-|k| eps / s).
// Discrete Gaussian: P(Z = k) proportional to exp(-k^2 / (2 sigma^2)) with
// sigma^2 = s^2 / (2 rho).
//
// When eps / s >= 1e9 (resp. s^2 / sigma^2 >= 1e18), including infinite
// budgets, the noise is identically zero.
class IntegerNoise {
 public:
  // "NonPositiveSensitivity" unless sensitivity >= 1.
  static absl::StatusOr<IntegerNoise> Create(const NoiseSpec& spec,
                                             const BigInt& sensitivity);

  const NoiseSpec& spec() const { return spec_; }
  const BigInt& sensitivity() const { return sensitivity_; }
  bool is_zero() const { return zero_; }
  // Geometric only: s / eps.
  const Rational& scale() const { return scale_; }
  // Discrete Gaussian only.
  const Rational& sigma2() const { return sigma2_; }

  BigInt Sample(RngStream& rng) const;

  // P(Z = k) in double precision.
  double Pmf(int64_t k) const;

 private:
  IntegerNoise(NoiseSpec spec, BigInt sensitivity)
      : spec_(std::move(spec)), sensitivity_(std::move(sensitivity)) {}

  NoiseSpec spec_;
  BigInt sensitivity_;
  bool zero_ = false;
  Rational scale_;
  Rational sigma2_;
  double normalizer_ = 1;
};

// Two-sided geometric noise with inverse scale epsilon_unit / sensitivity.
absl::StatusOr<IntegerNoise> MakeGeometric(ExtRational epsilon_unit,
                                           const BigInt& sensitivity);
// Discrete Gaussian noise with standard deviation parameter sigma; privacy
// map d -> (d s)^2 / (2 sigma^2).
absl::StatusOr<IntegerNoise> MakeDiscreteGaussian(const Rational& sigma,
                                                  const BigInt& sensitivity);

}  // namespace dpkit

#endif  // DPKIT_NOISE_H_
