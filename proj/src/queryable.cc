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

#include "dpkit/queryable.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {

absl::StatusOr<Queryable> Queryable::Create(Dataset data, DatasetDomain domain,
                                            Metric input_metric,
                                            Measure measure, ExtRational total,
                                            RngStream rng) {
  absl::Status status = domain.Validate(data);
  if (!status.ok()) return status;
  return Queryable(std::move(data), std::move(domain), std::move(input_metric),
                   measure, std::move(total), std::move(rng));
}

Queryable::Queryable(Dataset data, DatasetDomain domain, Metric input_metric,
                     Measure measure, ExtRational total, RngStream rng)
    : data_(std::move(data)),
      domain_(std::move(domain)),
      input_metric_(std::move(input_metric)),
      measure_(measure),
      total_(std::move(total)),
      rng_(std::move(rng)) {}

Queryable::Queryable(Queryable&& other) noexcept
    : data_(other.data_),
      domain_(other.domain_),
      input_metric_(other.input_metric_),
      measure_(other.measure_),
      total_(other.total_),
      rng_(other.rng_) {
  std::lock_guard<std::mutex> lock(other.mu_);
  spent_ = other.spent_;
  asks_ = other.asks_;
}

absl::StatusOr<Release> Queryable::Ask(const Measurement& m,
                                       const ExtRational& spend,
                                       const ExtRational& distance) {
  if (!(m.input_domain() == domain_)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DomainMismatch: measurement expects ", m.input_domain().ToString(),
        ", queryable holds ", domain_.ToString()));
  }
  if (!(m.input_metric() == input_metric_)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MetricMismatch: measurement expects ", m.input_metric().ToString(),
        ", queryable uses ", input_metric_.ToString()));
  }
  if (m.output_measure() != measure_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MeasureMismatch: measurement is ", MeasureName(m.output_measure()),
        ", queryable is ", MeasureName(measure_)));
  }
  ExtRational guarantee = m.privacy_map()(distance);
  if (guarantee > spend) {
    return absl::InvalidArgumentError(absl::StrCat(
        "GuaranteeTooWeak: privacy loss ", guarantee.ToString(),
        " at distance ", distance.ToString(), " exceeds spend ",
        spend.ToString()));
  }
  uint64_t ordinal;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ExtRational after = spent_ + spend;
    if (after > total_) {
      std::optional<ExtRational> left = CheckedSubtract(total_, spent_);
      return absl::ResourceExhaustedError(absl::StrCat(
          "InsufficientBudget: requested ", spend.ToString(), ", remaining ",
          left ? left->ToString() : "0"));
    }
    spent_ = after;
    ordinal = asks_++;
  }
  RngStream rng = rng_.Derive("ask").Derive(ordinal);
  return m.Invoke(data_, rng);
}

ExtRational Queryable::total() const { return total_; }

ExtRational Queryable::spent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return spent_;
}

ExtRational Queryable::remaining() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (total_.is_infinite()) return ExtRational::Infinity();
  return *CheckedSubtract(total_, spent_);
}

uint64_t Queryable::asks() const {
  std::lock_guard<std::mutex> lock(mu_);
  return asks_;
}

}  // namespace dpkit
