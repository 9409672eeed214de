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

// Input metrics (distances between datasets) and output measures (distances
// between output distributions).

#ifndef DPKIT_METRIC_H_
#define DPKIT_METRIC_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"
#include "dpkit/dataset.h"
#include "dpkit/rational.h"

namespace dpkit {

class Metric {
 public:
  enum class Kind {
    // |x Δ y| on row multisets of a single table.
    kSymmetricDifference,
    // Privacy-ID distance on a table, or on a tuple of tables that share the
    // ID column. The rows of each ID form one group (across all tuple
    // components); the distance is the symmetric difference of the two sets
    // of (ID, group) pairs: an ID present on one side only counts 1, an ID
    // present on both sides with different rows counts 2 (remove, then add).
    kAddRemoveIds,
    // Single table viewed as a partition by key columns; the L1 sum over key
    // values of the inner distance between the per-key sub-multisets.
    kGroupedBy,
    // Fixed-length tuple of tables; L1 sum of component distances.
    kTableTuple,
    // Lists of tables; sum over positions of inner distances, the shorter
    // list padded with empty tables.
    kBoundedLists,
  };

  static Metric SymmetricDifference();
  static Metric AddRemoveIds(std::string id_column);
  static Metric GroupedBy(std::vector<std::string> key_columns, Metric inner);
  static Metric TableTuple(std::vector<Metric> components);
  static Metric BoundedLists(Metric inner);

  Kind kind() const { return kind_; }
  // kAddRemoveIds only.
  const std::string& id_column() const { return id_column_; }
  // kGroupedBy only.
  const std::vector<std::string>& key_columns() const { return key_columns_; }
  // kGroupedBy and kBoundedLists.
  const Metric& inner() const { return children_.front(); }
  // kTableTuple components.
  const std::vector<Metric>& components() const { return children_; }

  std::string ToString() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  explicit Metric(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::string id_column_;
  std::vector<std::string> key_columns_;
  std::vector<Metric> children_;
};

// Distance between two datasets under `metric`. Distances are nonnegative
// integers here, returned as ExtRational so that they feed distance maps
// directly. Errors: "DomainMismatch: ..." (InvalidArgument) when the datasets
// do not have the shape or columns the metric needs.
absl::StatusOr<ExtRational> DatasetDistance(const Metric& metric,
                                            const Dataset& x,
                                            const Dataset& y);

enum class Measure { kPureDp, kZcdp };

absl::string_view MeasureName(Measure measure);
absl::StatusOr<Measure> ParseMeasure(absl::string_view name);

}  // namespace dpkit

#endif  // DPKIT_METRIC_H_
