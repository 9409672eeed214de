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

// A dataset behind a privacy budget, answering adaptively chosen
// measurements.

#ifndef DPKIT_QUERYABLE_H_
#define DPKIT_QUERYABLE_H_

#include <cstdint>
#include <mutex>

#include "absl/status/statusor.h"
#include "dpkit/dataset.h"
#include "dpkit/measurement.h"
#include "dpkit/metric.h"
#include "dpkit/rational.h"
#include "dpkit/rng.h"

namespace dpkit {

// Invariant: 0 <= spent() <= total(), and spent() only grows.
//
// Asks are serialized by an internal mutex, so concurrent misuse cannot
// corrupt the ledger; the object is still meant for one owner.
class Queryable {
 public:
  // "DomainMismatch" if `data` is not in `domain`.
  static absl::StatusOr<Queryable> Create(Dataset data, DatasetDomain domain,
                                          Metric input_metric, Measure measure,
                                          ExtRational total, RngStream rng);

  Queryable(Queryable&& other) noexcept;
  Queryable& operator=(Queryable&&) = delete;

  // Answers `m` at a cost of exactly `spend`, provided m guarantees at most
  // `spend` at input distance `distance`. Ask number i (counting successful
  // deductions from 0) draws from stream rng.Derive("ask").Derive(i).
  //
  // Errors, all leaving the ledger and the ask counter unchanged:
  //   "DomainMismatch", "MetricMismatch", "MeasureMismatch" (InvalidArgument)
  //   "GuaranteeTooWeak" (InvalidArgument): privacy_map(distance) > spend
  //   "InsufficientBudget" (ResourceExhausted): spent + spend > total
  // If evaluation itself fails after the deduction, the deduction stands.
  absl::StatusOr<Release> Ask(const Measurement& m, const ExtRational& spend,
                              const ExtRational& distance);

  ExtRational total() const;
  ExtRational spent() const;
  // total - spent; infinite when total is.
  ExtRational remaining() const;
  uint64_t asks() const;

 private:
  Queryable(Dataset data, DatasetDomain domain, Metric input_metric,
            Measure measure, ExtRational total, RngStream rng);

  const Dataset data_;
  const DatasetDomain domain_;
  const Metric input_metric_;
  const Measure measure_;
  const ExtRational total_;
  const RngStream rng_;
  mutable std::mutex mu_;
  ExtRational spent_;
  uint64_t asks_ = 0;
};

}  // namespace dpkit

#endif  // DPKIT_QUERYABLE_H_
