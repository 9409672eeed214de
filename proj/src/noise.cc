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

#include "dpkit/noise.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {
namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

const Rational& ZeroNoiseInverseScale() {
  static const Rational* kValue = new Rational(1000000000);
  return *kValue;
}

const Rational& ZeroNoiseSignalToNoise() {
  static const Rational* kValue = new Rational(BigInt("1000000000000000000"));
  return *kValue;
}

// Requires 0 <= gamma <= 1. Returns true with probability exp(-gamma).
bool BernoulliExpUnit(const Rational& gamma, RngStream& rng) {
  BigInt k = 1;
  while (SampleBernoulli(gamma / Rational(k), rng)) ++k;
  return (k % 2) == 1;
}

BigInt FloorRational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && Rational(q) != r) --q;
  return q;
}

}  // namespace

bool SampleBernoulli(const Rational& p, RngStream& rng) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return rng.UniformBelow(denominator(p)) < numerator(p);
}

bool SampleBernoulliExp(const Rational& gamma, RngStream& rng) {
  if (gamma <= 1) return BernoulliExpUnit(gamma, rng);
  BigInt whole = FloorRational(gamma);
  static const Rational kOne(1);
  for (BigInt i = 0; i < whole; ++i) {
    if (!BernoulliExpUnit(kOne, rng)) return false;
  }
  return BernoulliExpUnit(gamma - Rational(whole), rng);
}

BigInt SampleDiscreteLaplace(const Rational& scale, RngStream& rng) {
  // Laplace with scale t / s: an exact geometric on multiples of 1/s,
  // floored back onto the integers.
  const BigInt t = numerator(scale);
  const BigInt s = denominator(scale);
  static const Rational kOne(1);
  while (true) {
    BigInt u = rng.UniformBelow(t);
    if (!SampleBernoulliExp(Rational(u, t), rng)) continue;
    BigInt v = 0;
    while (BernoulliExpUnit(kOne, rng)) ++v;
    BigInt y = (u + t * v) / s;
    bool negative = (rng.NextU64() & 1) != 0;
    if (negative && y == 0) continue;
    return negative ? BigInt(-y) : y;
  }
}

BigInt SampleDiscreteGaussian(const Rational& sigma2, RngStream& rng) {
  BigInt t = boost::multiprecision::sqrt(FloorRational(sigma2)) + 1;
  Rational shift = sigma2 / Rational(t);
  Rational twice_variance = 2 * sigma2;
  while (true) {
    BigInt y = SampleDiscreteLaplace(Rational(t), rng);
    Rational gap = Rational(abs(y)) - shift;
    if (SampleBernoulliExp(gap * gap / twice_variance, rng)) return y;
  }
}

absl::StatusOr<NoiseSpec> NoiseSpec::Geometric(ExtRational epsilon_unit) {
  if (epsilon_unit.is_zero()) {
    return absl::InvalidArgumentError(
        "NonPositiveEpsilon: epsilon must be positive");
  }
  return NoiseSpec(Kind::kGeometric, std::move(epsilon_unit));
}

absl::StatusOr<NoiseSpec> NoiseSpec::DiscreteGaussian(ExtRational rho_unit) {
  if (rho_unit.is_zero()) {
    return absl::InvalidArgumentError("NonPositiveRho: rho must be positive");
  }
  return NoiseSpec(Kind::kDiscreteGaussian, std::move(rho_unit));
}

absl::StatusOr<NoiseSpec> NoiseSpec::DiscreteGaussianWithSigma(
    const Rational& sigma) {
  if (sigma <= 0) {
    return absl::InvalidArgumentError(
        "NonPositiveSigma: sigma must be positive");
  }
  return NoiseSpec(Kind::kDiscreteGaussian,
                   ExtRational(Rational(1) / (2 * sigma * sigma)));
}

Measure NoiseSpec::measure() const {
  return kind_ == Kind::kGeometric ? Measure::kPureDp : Measure::kZcdp;
}

DistanceMap NoiseSpec::privacy_map() const {
  return kind_ == Kind::kGeometric ? DistanceMap::Linear(unit_cost_)
                                   : DistanceMap::Quadratic(unit_cost_);
}

NoiseSpec NoiseSpec::Scaled(const Rational& factor) const {
  return NoiseSpec(kind_, unit_cost_ * ExtRational(factor));
}

std::string NoiseSpec::ToString() const {
  return kind_ == Kind::kGeometric
             ? absl::StrCat("geometric(eps=", unit_cost_.ToString(), ")")
             : absl::StrCat("discrete_gaussian(rho=", unit_cost_.ToString(),
                            ")");
}

absl::StatusOr<IntegerNoise> IntegerNoise::Create(const NoiseSpec& spec,
                                                  const BigInt& sensitivity) {
  if (sensitivity < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "NonPositiveSensitivity: sensitivity must be >= 1, got ",
        sensitivity.str()));
  }
  IntegerNoise noise(spec, sensitivity);
  const ExtRational& cost = spec.unit_cost();
  Rational s(sensitivity);
  if (spec.kind() == NoiseSpec::Kind::kGeometric) {
    noise.zero_ =
        cost.is_infinite() || cost.value() / s >= ZeroNoiseInverseScale();
    if (!noise.zero_) {
      noise.scale_ = s / cost.value();
      double r = std::exp(-1.0 / static_cast<double>(noise.scale_));
      noise.normalizer_ = (1 - r) / (1 + r);
    }
  } else {
    // s^2 / sigma^2 = 2 rho.
    noise.zero_ = cost.is_infinite() ||
                  2 * cost.value() >= ZeroNoiseSignalToNoise();
    if (!noise.zero_) {
      noise.sigma2_ = s * s / (2 * cost.value());
      double sigma = std::sqrt(static_cast<double>(noise.sigma2_));
      double total = 0;
      if (sigma < 4) {
        int64_t radius = static_cast<int64_t>(12 * sigma) + 1;
        for (int64_t k = -radius; k <= radius; ++k) {
          total += std::exp(-static_cast<double>(k) * k /
                            (2 * static_cast<double>(noise.sigma2_)));
        }
      } else {
        // Poisson summation: the sum is sqrt(2 pi) sigma times
        // (1 + 2 sum_j exp(-2 pi^2 sigma^2 j^2)), and the correction is
        // below 1e-130 once sigma >= 4.
        total = std::sqrt(2 * std::numbers::pi) * sigma;
      }
      noise.normalizer_ = 1 / total;
    }
  }
  return noise;
}

BigInt IntegerNoise::Sample(RngStream& rng) const {
  if (zero_) return 0;
  if (spec_.kind() == NoiseSpec::Kind::kGeometric) {
    return SampleDiscreteLaplace(scale_, rng);
  }
  return SampleDiscreteGaussian(sigma2_, rng);
}

double IntegerNoise::Pmf(int64_t k) const {
  if (zero_) return k == 0 ? 1 : 0;
  double x = static_cast<double>(k);
  if (spec_.kind() == NoiseSpec::Kind::kGeometric) {
    return normalizer_ *
           std::exp(-std::abs(x) / static_cast<double>(scale_));
  }
  return normalizer_ * std::exp(-x * x / (2 * static_cast<double>(sigma2_)));
}

absl::StatusOr<IntegerNoise> MakeGeometric(ExtRational epsilon_unit,
                                           const BigInt& sensitivity) {
  absl::StatusOr<NoiseSpec> spec = NoiseSpec::Geometric(std::move(epsilon_unit));
  if (!spec.ok()) return spec.status();
  return IntegerNoise::Create(*spec, sensitivity);
}

absl::StatusOr<IntegerNoise> MakeDiscreteGaussian(const Rational& sigma,
                                                  const BigInt& sensitivity) {
  if (sigma <= 0) {
    return absl::InvalidArgumentError(
        "NonPositiveSigma: sigma must be positive");
  }
  Rational s(sensitivity);
  absl::StatusOr<NoiseSpec> spec =
      NoiseSpec::DiscreteGaussian(ExtRational(s * s / (2 * sigma * sigma)));
  if (!spec.ok()) return spec.status();
  return IntegerNoise::Create(*spec, sensitivity);
}

}  // namespace dpkit
