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

// Randomized components with privacy functions.
//
// A Measurement M with privacy map f guarantees that for all inputs x, y at
// input-metric distance <= d, the output distributions of M(x) and M(y) are
// within f(d) in the output measure (max-divergence for pure DP, the
// normalized Renyi bound for zCDP).

#ifndef DPKIT_MEASUREMENT_H_
#define DPKIT_MEASUREMENT_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpkit/dataset.h"
#include "dpkit/distance_map.h"
#include "dpkit/metric.h"
#include "dpkit/noise.h"
#include "dpkit/rational.h"
#include "dpkit/rng.h"
#include "dpkit/table.h"
#include "dpkit/transformation.h"
#include "dpkit/value.h"

namespace dpkit {

// The output of a measurement: one value, a tuple of outputs, or a table.
class Release {
 public:
  enum class Kind { kScalar, kTuple, kTable };

  static Release Scalar(Value value);
  static Release Tuple(std::vector<Release> parts);
  static Release OfTable(Table table);

  Kind kind() const { return kind_; }
  // Requires kind() == kScalar.
  const Value& scalar() const { return scalar_; }
  const std::vector<Release>& parts() const { return parts_; }
  // Requires kind() == kTable.
  const Table& table() const { return *table_; }

  std::string ToString() const;

 private:
  explicit Release(Kind kind) : kind_(kind) {}
  Kind kind_;
  Value scalar_;
  std::vector<Release> parts_;
  std::optional<Table> table_;
};

class Measurement {
 public:
  using EvalFn =
      std::function<absl::StatusOr<Release>(const Dataset&, RngStream&)>;

  // `scalar_type` is the type of a scalar release, if the measurement
  // always releases a scalar.
  Measurement(std::string name, DatasetDomain input_domain, Metric input_metric,
              Measure output_measure, DistanceMap privacy_map, EvalFn eval,
              std::optional<ColumnType> scalar_type = std::nullopt);

  const std::string& name() const { return name_; }
  const DatasetDomain& input_domain() const { return input_domain_; }
  const Metric& input_metric() const { return input_metric_; }
  Measure output_measure() const { return output_measure_; }
  const DistanceMap& privacy_map() const { return privacy_map_; }
  const std::optional<ColumnType>& scalar_type() const { return scalar_type_; }

  // Checks domain membership, then evaluates. Pure given (input, rng state).
  absl::StatusOr<Release> Invoke(const Dataset& input, RngStream& rng) const;

 private:
  std::string name_;
  DatasetDomain input_domain_;
  Metric input_metric_;
  Measure output_measure_;
  DistanceMap privacy_map_;
  EvalFn eval_;
  std::optional<ColumnType> scalar_type_;
};

// measurement o transformation, with privacy map f o s.
// "DomainMismatch" / "MetricMismatch" when they do not line up.
absl::StatusOr<Measurement> ChainTM(const Transformation& transformation,
                                    const Measurement& measurement);

// Aggregations over a single table under SymmetricDifference. Each is a
// noisy integer statistic; `noise` states the cost per unit of distance.

// |rows| + Z, as int64 (saturating). Sensitivity 1.
absl::StatusOr<Measurement> MakeCount(const TableDomain& domain,
                                      const NoiseSpec& noise);

// The fixed-point grid used by sums and averages.
Rational DefaultGranularity();  // 1/100

// Sum of clamp(v, low, high) rounded to the nearest multiple of
// `granularity` (ties away from zero), plus noise on that integer grid.
// Released as a float64 equal to granularity * (units + Z). Sensitivity
// s = ceil(max(|low|, |high|) / granularity) grid units per row.
// Errors: "BadBounds" (low > high), "NonPositiveGranularity", "TypeError"
// for a non-numeric column, "UnknownColumn".
absl::StatusOr<Measurement> MakeSum(const TableDomain& domain,
                                    const std::string& column,
                                    const Rational& low, const Rational& high,
                                    const Rational& granularity,
                                    const NoiseSpec& noise);

// Noisy sum / max(1, noisy count), each of the two measured with half of
// `noise`'s unit cost. Privacy map: the sum of the two halves, which equals
// noise.privacy_map(). Errors as MakeSum.
absl::StatusOr<Measurement> MakeAverage(const TableDomain& domain,
                                        const std::string& column,
                                        const Rational& low,
                                        const Rational& high,
                                        const Rational& granularity,
                                        const NoiseSpec& noise);

// Splits [low, high] into `bins` equal bins with midpoints m_i and scores
// bin i by -|#{v < m_i} - q n|, a score that moves by at most 1 per added or
// removed row. Samples i with probability proportional to
// exp(epsilon_unit * score_i / 2) by exact rejection, and releases m_i as a
// float64. Privacy map linear(epsilon_unit) under pure DP.
// Errors: "BadBounds" (low >= high), "BadQuantile" (q outside [0, 1]),
// "BadBins" (bins < 1), "NonPositiveEpsilon", "TypeError", "UnknownColumn".
absl::StatusOr<Measurement> MakeQuantile(const TableDomain& domain,
                                         const std::string& column,
                                         const Rational& q, const Rational& low,
                                         const Rational& high, int64_t bins,
                                         const ExtRational& epsilon_unit);

// Midpoint of bin i as used by MakeQuantile.
Rational QuantileBinMidpoint(const Rational& low, const Rational& high,
                             int64_t bins, int64_t i);

// Runs every measurement on the same input, with stream i derived from
// index i, and releases the tuple of outputs. Privacy map: the sum.
// Errors: "EmptyList", "DomainMismatch", "MetricMismatch",
// "MeasureMismatch".
absl::StatusOr<Measurement> ComposeSequential(
    const std::vector<Measurement>& parts);

// Parallel composition over explicit keys. The input metric is
// GroupedBy(key_columns, SymmetricDifference). For each distinct key tuple,
// in the given order and only for those tuples, `per_group` runs on the rows
// carrying that key (an empty table if there are none), with a stream
// derived from the key. Releases a table with the key columns followed by
// `value_column`.
//
// One unit of grouped distance is spread over groups as d_1 + ... + d_g <= d,
// and a linear or quadratic map f satisfies f(d_1) + ... + f(d_g) <= f(d),
// so the privacy map is per_group's own map. Other shapes fail with
// "NonLinearPrivacyFunction".
// Errors also: "MissingKeyColumn", "TypeMismatch" (a key tuple does not fit
// the key column types), "MetricMismatch", "NonScalarRelease".
absl::StatusOr<Measurement> ComposePerGroup(
    const std::vector<std::string>& key_columns,
    const std::vector<Row>& key_tuples, const Measurement& per_group,
    const std::string& value_column);

// Runs parts[i] on list element i under BoundedLists(SymmetricDifference).
// The list distance already sums per-element distances, so the privacy map
// is the largest per-part coefficient, with the parts' common shape
// (linear or quadratic). Chained after MakeOverlappingSubsets with
// contribution bound c this costs c times that coefficient per unit.
// A list of the wrong length is rejected with "LengthMismatch".
// Errors: "EmptyList",
// "NonLinearPrivacyFunction", "DomainMismatch", "MetricMismatch",
// "MeasureMismatch".
absl::StatusOr<Measurement> ComposeOverSubsets(
    const std::vector<Measurement>& parts);

}  // namespace dpkit

#endif  // DPKIT_MEASUREMENT_H_
