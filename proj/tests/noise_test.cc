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
#include <map>

#include "dpkit/divergence.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpkit {
namespace {

using ::testing::HasSubstr;

constexpr int kSamples = 200000;

// Histogram of `draw` over [lo, hi]; values outside land in no bin.
template <typename Draw>
std::vector<int64_t> Histogram(int64_t lo, int64_t hi, int n, Draw draw) {
  std::vector<int64_t> counts(hi - lo + 1, 0);
  for (int i = 0; i < n; ++i) {
    BigInt z = draw();
    if (z >= lo && z <= hi) ++counts[static_cast<int64_t>(z) - lo];
  }
  return counts;
}

std::vector<double> PmfOn(const IntegerNoise& noise, int64_t lo, int64_t hi,
                          int64_t shift = 0) {
  std::vector<double> out;
  for (int64_t k = lo; k <= hi; ++k) out.push_back(noise.Pmf(k - shift));
  return out;
}

// Zeroes entries too small for a double ratio and renormalizes both sides.
void Trim(std::vector<double>& p, std::vector<double>& q) {
  double sp = 0, sq = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1e-300 || q[i] < 1e-300) p[i] = q[i] = 0;
    sp += p[i];
    sq += q[i];
  }
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] /= sp;
    q[i] /= sq;
  }
}

TEST(BernoulliTest, Frequencies) {
  RngStream rng(11);
  int hits = 0;
  for (int i = 0; i < kSamples; ++i) hits += SampleBernoulli(Rational(1, 3), rng);
  double sd = std::sqrt(kSamples * (1.0 / 3) * (2.0 / 3));
  EXPECT_NEAR(hits, kSamples / 3.0, 5 * sd);

  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(SampleBernoulli(Rational(0), rng));
    EXPECT_TRUE(SampleBernoulli(Rational(1), rng));
    EXPECT_TRUE(SampleBernoulliExp(Rational(0), rng));
  }
}

TEST(BernoulliTest, ExpFrequencies) {
  RngStream rng(12);
  for (Rational gamma : {Rational(1, 2), Rational(3), Rational(7, 3)}) {
    double p = std::exp(-static_cast<double>(gamma));
    int hits = 0;
    for (int i = 0; i < kSamples; ++i) hits += SampleBernoulliExp(gamma, rng);
    EXPECT_NEAR(hits, kSamples * p, 5 * std::sqrt(kSamples * p * (1 - p)))
        << gamma;
  }
}

TEST(DiscreteLaplaceTest, MatchesOraclePmf) {
  for (Rational scale : {Rational(1, 2), Rational(2), Rational(17, 3)}) {
    RngStream rng(13);
    long double s = static_cast<long double>(static_cast<double>(scale));
    int64_t width = static_cast<int64_t>(40 * s) + 5;
    std::vector<int64_t> counts = Histogram(
        -width, width, kSamples,
        [&] { return SampleDiscreteLaplace(scale, rng); });
    EXPECT_LT(testing::TotalVariation(counts,
                                      testing::GeometricPmf(s, -width, width)),
              0.01)
        << scale;
  }
}

// Sums consecutive runs of `width` entries so wide distributions are compared
// on buckets that each hold a meaningful share of the samples.
template <typename T>
std::vector<T> Bucket(const std::vector<T>& v, size_t width) {
  std::vector<T> out((v.size() + width - 1) / width, T{0});
  for (size_t i = 0; i < v.size(); ++i) out[i / width] += v[i];
  return out;
}

TEST(DiscreteGaussianTest, MatchesOraclePmf) {
  for (Rational sigma2 : {Rational(1, 3), Rational(1), Rational(4),
                          Rational(1000)}) {
    RngStream rng(14);
    long double v = static_cast<long double>(static_cast<double>(sigma2));
    int64_t width = static_cast<int64_t>(12 * std::sqrt(v)) + 3;
    size_t bucket = std::max<size_t>(1, std::sqrt(v) / 2);
    std::vector<int64_t> counts = Histogram(
        -width, width, kSamples / 2,
        [&] { return SampleDiscreteGaussian(sigma2, rng); });
    EXPECT_LT(testing::TotalVariation(
                  Bucket(counts, bucket),
                  Bucket(testing::DiscreteGaussianPmf(v, -width, width),
                         bucket)),
              0.01)
        << sigma2;
  }
}

TEST(SamplerTest, DeterministicPerStream) {
  RngStream a(99), b(99), c(100);
  std::vector<BigInt> xa, xb, xc;
  for (int i = 0; i < 50; ++i) {
    xa.push_back(SampleDiscreteGaussian(Rational(9), a));
    xb.push_back(SampleDiscreteGaussian(Rational(9), b));
    xc.push_back(SampleDiscreteGaussian(Rational(9), c));
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
}

TEST(NoiseSpecTest, Validation) {
  EXPECT_THAT(NoiseSpec::Geometric(ExtRational(0)).status().message(),
              HasSubstr("NonPositiveEpsilon"));
  EXPECT_THAT(NoiseSpec::Geometric(ExtRational(-1)).status().message(),
              HasSubstr("NonPositiveEpsilon"));
  EXPECT_THAT(NoiseSpec::DiscreteGaussian(ExtRational(0)).status().message(),
              HasSubstr("NonPositiveRho"));
  EXPECT_THAT(
      NoiseSpec::DiscreteGaussianWithSigma(Rational(0)).status().message(),
      HasSubstr("NonPositiveSigma"));
}

TEST(NoiseSpecTest, PrivacyMaps) {
  NoiseSpec geo = *NoiseSpec::Geometric(ExtRational(Rational(1, 2)));
  EXPECT_EQ(geo.measure(), Measure::kPureDp);
  EXPECT_EQ(geo.privacy_map()(ExtRational(2)), ExtRational(1));
  EXPECT_EQ(geo.Scaled(Rational(3)).unit_cost(), ExtRational(Rational(3, 2)));

  NoiseSpec gauss = *NoiseSpec::DiscreteGaussianWithSigma(Rational(2));
  EXPECT_EQ(gauss.measure(), Measure::kZcdp);
  EXPECT_EQ(gauss.unit_cost(), ExtRational(Rational(1, 8)));
  EXPECT_EQ(gauss.privacy_map()(ExtRational(2)), ExtRational(Rational(1, 2)));
  EXPECT_EQ(gauss.privacy_map().shape(), DistanceMap::Shape::kQuadratic);
}

TEST(IntegerNoiseTest, Parameters) {
  IntegerNoise geo = *MakeGeometric(ExtRational(Rational(1, 2)), BigInt(3));
  EXPECT_EQ(geo.scale(), Rational(6));
  IntegerNoise gauss = *MakeDiscreteGaussian(Rational(2), BigInt(3));
  EXPECT_EQ(gauss.sigma2(), Rational(4));
  IntegerNoise via_rho = *IntegerNoise::Create(
      *NoiseSpec::DiscreteGaussian(ExtRational(Rational(1, 8))), BigInt(3));
  EXPECT_EQ(via_rho.sigma2(), Rational(36));
  EXPECT_THAT(MakeGeometric(ExtRational(1), BigInt(0)).status().message(),
              HasSubstr("NonPositiveSensitivity"));
}

TEST(IntegerNoiseTest, PmfSymmetricNormalizedAndExact) {
  IntegerNoise geo = *MakeGeometric(ExtRational(Rational(1, 2)), BigInt(1));
  IntegerNoise gauss = *MakeDiscreteGaussian(Rational(3), BigInt(1));
  std::vector<long double> geo_oracle = testing::GeometricPmf(2, -200, 200);
  std::vector<long double> gauss_oracle =
      testing::DiscreteGaussianPmf(9, -200, 200);
  double geo_sum = 0, gauss_sum = 0;
  for (int64_t k = -200; k <= 200; ++k) {
    EXPECT_DOUBLE_EQ(geo.Pmf(k), geo.Pmf(-k));
    EXPECT_DOUBLE_EQ(gauss.Pmf(k), gauss.Pmf(-k));
    EXPECT_NEAR(geo.Pmf(k), static_cast<double>(geo_oracle[k + 200]), 1e-15);
    EXPECT_NEAR(gauss.Pmf(k), static_cast<double>(gauss_oracle[k + 200]),
                1e-15);
    geo_sum += geo.Pmf(k);
    gauss_sum += gauss.Pmf(k);
  }
  EXPECT_NEAR(geo_sum, 1, 1e-12);
  EXPECT_NEAR(gauss_sum, 1, 1e-12);
}

TEST(IntegerNoiseTest, ShortCircuit) {
  RngStream rng(15);
  IntegerNoise inf = *MakeGeometric(ExtRational::Infinity(), BigInt(5));
  EXPECT_TRUE(inf.is_zero());
  EXPECT_EQ(inf.Pmf(0), 1.0);
  EXPECT_EQ(inf.Pmf(1), 0.0);
  IntegerNoise at = *MakeGeometric(ExtRational(BigInt(1000000000)), BigInt(1));
  EXPECT_TRUE(at.is_zero());
  IntegerNoise below =
      *MakeGeometric(ExtRational(BigInt(999999999)), BigInt(1));
  EXPECT_FALSE(below.is_zero());
  IntegerNoise gauss = *IntegerNoise::Create(
      *NoiseSpec::DiscreteGaussian(ExtRational::Infinity()), BigInt(1));
  EXPECT_TRUE(gauss.is_zero());
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(inf.Sample(rng), 0);
    EXPECT_EQ(at.Sample(rng), 0);
    EXPECT_EQ(gauss.Sample(rng), 0);
  }
}

TEST(IntegerNoiseTest, GeometricIsTightAtLnTwo) {
  ExtRational eps = *ExtRational::FromDouble(std::log(2.0));
  IntegerNoise geo = *MakeGeometric(eps, BigInt(1));
  for (int64_t shift : {1, 2}) {
    // Both pmfs are over [-hi, hi + shift] so each is nearly normalized.
    std::vector<double> p = PmfOn(geo, -100, 100 + shift);
    std::vector<double> q = PmfOn(geo, -100, 100 + shift, shift);
    Trim(p, q);
    double d = *PureDpDivergence(p, q);
    EXPECT_LE(d, shift * eps.ToDouble() + 1e-9);
    EXPECT_NEAR(d, shift * std::log(2.0), 1e-9);
  }
}

TEST(IntegerNoiseTest, DiscreteGaussianShiftCost) {
  for (int64_t sigma : {1, 2, 4}) {
    IntegerNoise noise = *MakeDiscreteGaussian(Rational(sigma), BigInt(1));
    int64_t w = 40 * sigma;
    std::vector<double> p = PmfOn(noise, -w, w + 1);
    std::vector<double> q = PmfOn(noise, -w, w + 1, 1);
    Trim(p, q);
    double rho = *ZcdpDivergence(p, q, DefaultAlphaGrid());
    double bound = 1.0 / (2.0 * sigma * sigma);
    EXPECT_LE(rho, bound + 1e-6) << sigma;
    EXPECT_GE(rho, 0.9 * bound) << sigma;
  }
}

}  // namespace
}  // namespace dpkit
