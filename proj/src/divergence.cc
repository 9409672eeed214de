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

#include "dpkit/divergence.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPmfTolerance = 1e-12;

absl::Status CheckPmf(std::span<const double> p, absl::string_view name) {
  double total = 0;
  for (double v : p) {
    if (!(v >= 0) || std::isinf(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("NotAPmf: ", name, " has a negative or invalid entry"));
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("NotAPmf: ", name, " sums to ", total));
  }
  return absl::OkStatus();
}

absl::Status CheckPair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(
        "NotAPmf: distributions have different supports");
  }
  absl::Status status = CheckPmf(p, "p");
  if (!status.ok()) return status;
  return CheckPmf(q, "q");
}

}  // namespace

absl::StatusOr<double> PureDpDivergence(std::span<const double> p,
                                        std::span<const double> q) {
  absl::Status status = CheckPair(p, q);
  if (!status.ok()) return status;
  double worst = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0 && q[i] == 0) continue;
    if (p[i] == 0 || q[i] == 0) return kInf;
    worst = std::max(worst, std::abs(std::log(p[i]) - std::log(q[i])));
  }
  return worst;
}

absl::StatusOr<double> ZcdpDivergence(std::span<const double> p,
                                      std::span<const double> q,
                                      std::span<const double> alphas) {
  absl::Status status = CheckPair(p, q);
  if (!status.ok()) return status;
  for (double alpha : alphas) {
    if (!std::isfinite(alpha) || !(alpha > 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("BadAlpha: ", alpha, " is not a finite order > 1"));
    }
  }
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0 && q[i] == 0) return kInf;
  }
  double worst = 0;
  for (double alpha : alphas) {
    // log sum_o p^alpha q^(1 - alpha), accumulated stably.
    std::vector<double> terms;
    terms.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      terms.push_back(alpha * std::log(p[i]) + (1 - alpha) * std::log(q[i]));
    }
    double peak = *std::max_element(terms.begin(), terms.end());
    double acc = 0;
    for (double t : terms) acc += std::exp(t - peak);
    double log_sum = peak + std::log(acc);
    double renyi = std::max(0.0, log_sum / (alpha - 1));
    worst = std::max(worst, renyi / alpha);
  }
  return worst;
}

std::vector<double> DefaultAlphaGrid() {
  return {1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32};
}

}  // namespace dpkit
