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

// Brute-force divergences between finite probability mass functions. These
// check privacy functions against the actual output distributions of
// mechanisms on small inputs.

#ifndef DPKIT_DIVERGENCE_H_
#define DPKIT_DIVERGENCE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace dpkit {

// Two pmfs over the same finite support, aligned by index. Each must be
// nonnegative and sum to 1 within 1e-12, or the call fails with "NotAPmf".

// max_o |ln(p(o) / q(o))|, where 0/0 contributes 0 and x/0 for x > 0 is inf.
absl::StatusOr<double> PureDpDivergence(std::span<const double> p,
                                        std::span<const double> q);

// max over `alphas` of D_alpha(p || q) / alpha, with D_alpha the Renyi
// divergence of order alpha. A lower estimate of the smallest rho such that
// (p, q) satisfies rho-zCDP in that direction. Every alpha must be finite and
// > 1 ("BadAlpha").
absl::StatusOr<double> ZcdpDivergence(std::span<const double> p,
                                      std::span<const double> q,
                                      std::span<const double> alphas);

// {1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32}.
std::vector<double> DefaultAlphaGrid();

}  // namespace dpkit

#endif  // DPKIT_DIVERGENCE_H_
