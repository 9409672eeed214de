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

// Stability-annotated dataset transformations.
//
// Every Transformation T carries a stability map s such that for all x, y in
// its input domain
//
//   distance_out(T(x), T(y)) <= s(distance_in(x, y)).
//
// Constructors below state their stability; tests check each one by
// enumerating neighboring inputs.

#ifndef DPKIT_TRANSFORMATION_H_
#define DPKIT_TRANSFORMATION_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpkit/dataset.h"
#include "dpkit/distance_map.h"
#include "dpkit/expression.h"
#include "dpkit/metric.h"
#include "dpkit/table.h"

namespace dpkit {

class Transformation {
 public:
  // Deterministic. May assume its argument is in the input domain.
  using ApplyFn = std::function<absl::StatusOr<Dataset>(const Dataset&)>;

  Transformation(std::string name, DatasetDomain input_domain,
                 DatasetDomain output_domain, Metric input_metric,
                 Metric output_metric, DistanceMap stability, ApplyFn apply);

  const std::string& name() const { return name_; }
  const DatasetDomain& input_domain() const { return input_domain_; }
  const DatasetDomain& output_domain() const { return output_domain_; }
  const Metric& input_metric() const { return input_metric_; }
  const Metric& output_metric() const { return output_metric_; }
  const DistanceMap& stability() const { return stability_; }

  // Checks domain membership, then applies.
  absl::StatusOr<Dataset> Apply(const Dataset& input) const;

 private:
  std::string name_;
  DatasetDomain input_domain_;
  DatasetDomain output_domain_;
  Metric input_metric_;
  Metric output_metric_;
  DistanceMap stability_;
  ApplyFn apply_;
};

// Row-level transformations accept either SymmetricDifference or
// AddRemoveIds(id) on a table domain whose id_column is `id`, and preserve
// the metric.

// Keeps rows where `predicate` holds. Stability linear(1).
absl::StatusOr<Transformation> MakeFilter(const TableDomain& domain,
                                          const Metric& metric,
                                          const Expr& predicate);

struct NamedExpr {
  std::string name;
  Expr expr;
};

// One output row per input row, with columns computed by `outputs`.
// Stability linear(1). Under AddRemoveIds the ID column must be passed
// through unchanged (an output with the same name whose expression is that
// column), otherwise "IdColumnDropped".
absl::StatusOr<Transformation> MakeMap(const TableDomain& domain,
                                       const Metric& metric,
                                       const std::vector<NamedExpr>& outputs);

// Produces the values of one new column for an input row. Values whose type
// differs from the declared column type are skipped.
using RowExpansion = std::function<std::vector<Value>(const Row&)>;

// Each input row r yields rows r + (v) for the first `max_rows` values v of
// expansion(r). Stability linear(max_rows) under SymmetricDifference and
// linear(1) under AddRemoveIds (all copies keep the row's ID).
absl::StatusOr<Transformation> MakeFlatMap(const TableDomain& domain,
                                           const Metric& metric,
                                           Column new_column,
                                           RowExpansion expansion,
                                           int64_t max_rows);

// Inner join with a public (not privacy protected) table on `keys`. The
// output has the private columns followed by the public non-key columns.
// Stability linear(mu), mu the largest multiplicity of any key in `public`.
// Only SymmetricDifference is accepted: under AddRemoveIds the rows must be
// truncated first.
absl::StatusOr<Transformation> MakePublicJoin(const TableDomain& domain,
                                              const Metric& metric,
                                              const Table& public_table,
                                              const std::vector<std::string>& keys);

// Inner join of two private tables given as a 2-tuple under
// TableTuple(SymmetricDifference, SymmetricDifference). Each side is first
// truncated to its first `left_bound` (resp. `right_bound`) rows per join key
// in canonical order.
//
// Adding or removing one row can both drop a kept row and admit the next one
// of the same key, so one changed left row moves at most 2 * right_bound
// joined rows. The exact bound is PrivateJoinBound; the stability map is
// linear(2 * max(left_bound, right_bound)) in the L1 tuple distance.
absl::StatusOr<Transformation> MakePrivateJoin(const TableDomain& left,
                                               const TableDomain& right,
                                               const std::vector<std::string>& keys,
                                               int64_t left_bound,
                                               int64_t right_bound);

// 2 * (right_bound * left_distance + left_bound * right_distance).
ExtRational PrivateJoinBound(int64_t left_bound, int64_t right_bound,
                             const ExtRational& left_distance,
                             const ExtRational& right_distance);

// AddRemoveIds(id_column) -> SymmetricDifference. Keeps, for each ID, the
// first `bound` rows of that ID's rows in canonical order. Stability
// linear(bound). Idempotent.
absl::StatusOr<Transformation> MakeTruncateById(const TableDomain& domain,
                                                const std::string& id_column,
                                                int64_t bound);

// Returns the subset indices for a row.
using SubsetAssignment = std::function<std::vector<int64_t>(const Row&)>;

// SymmetricDifference -> BoundedLists(SymmetricDifference) over
// `num_subsets` tables. Each row is copied into the distinct indices
// returned by `assign`, truncated to the `contribution_bound` smallest.
// Stability linear(contribution_bound). An index outside [0, num_subsets)
// fails the application with "BadIndex".
absl::StatusOr<Transformation> MakeOverlappingSubsets(
    const TableDomain& domain, SubsetAssignment assign, int64_t num_subsets,
    int64_t contribution_bound);

// Identity on a table, re-reading SymmetricDifference as
// GroupedBy(keys, SymmetricDifference). Both metrics agree on every pair of
// tables, so the stability is linear(1).
absl::StatusOr<Transformation> MakePartitionByKeys(
    const TableDomain& domain, const std::vector<std::string>& keys);

// Projects component `index` out of a tuple. Under TableTuple the component
// metric is returned; under AddRemoveIds over the tuple the component keeps
// AddRemoveIds. Stability linear(1).
absl::StatusOr<Transformation> MakeSelectTable(const DatasetDomain& domain,
                                               const Metric& metric,
                                               size_t index);

// Runs several transformations with the same input and collects their
// single-table outputs into a tuple under TableTuple of their output
// metrics. Stability is the sum of the parts.
absl::StatusOr<Transformation> MakeTupleOf(
    const std::vector<Transformation>& parts);

// second o first. "DomainMismatch" or "MetricMismatch" when first's output
// does not line up with second's input.
absl::StatusOr<Transformation> Chain(const Transformation& first,
                                     const Transformation& second);

}  // namespace dpkit

#endif  // DPKIT_TRANSFORMATION_H_
