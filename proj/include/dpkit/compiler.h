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

// Turns a Query into a single Measurement over the session's tuple of
// private tables, with noise parameters solved so that the privacy map at the
// unit's distance equals the requested spend exactly.
//
// Compilation reads schemas and public tables only.

#ifndef DPKIT_COMPILER_H_
#define DPKIT_COMPILER_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpkit/dataset.h"
#include "dpkit/measurement.h"
#include "dpkit/metric.h"
#include "dpkit/query.h"
#include "dpkit/rational.h"
#include "dpkit/table.h"

namespace dpkit {

// What the compiler may know about a session.
struct Catalog {
  // Private table domains. Iteration order (by name) is the tuple order.
  std::map<std::string, TableDomain> private_tables;
  std::map<std::string, Table> public_tables;
  PrivacyUnit unit = PrivacyUnit::AddMaxRows(1);
  Measure measure = Measure::kPureDp;

  // Tuple of the private table domains.
  DatasetDomain InputDomain() const;
  // TableTuple of SymmetricDifference for AddMaxRows, AddRemoveIds(id) for
  // AddRemoveId.
  Metric InputMetric() const;
};

struct CompiledQuery {
  Measurement measurement;
  // Human-readable steps in data order, ending with the measurement.
  std::vector<std::string> stages;
  // Name of the released value column.
  std::string value_column;
  // Linear stability slope of the relational part.
  ExtRational stability;
  // Cost per unit of aggregation distance handed to the mechanism
  // (epsilon for pure DP, rho for zCDP).
  ExtRational unit_cost;
};

// Errors:
//   InvalidArgument "TypeCheckError: ...": malformed tree, unknown table or
//     column, ill-typed expression, key set not matching the key columns.
//   FailedPrecondition "UnboundedSensitivity: ...": a row-protected path
//     reaches an aggregation or join without TruncateById.
//   FailedPrecondition "NonLinearPath": the relational part has no linear
//     stability bound.
//   FailedPrecondition "UnsupportedMeasure": quantiles under zCDP.
//   InvalidArgument "NonPositiveSpend": a zero spend for a query that
//     costs something.
absl::StatusOr<CompiledQuery> Compile(const Query& query,
                                      const Catalog& catalog,
                                      const ExtRational& spend);

}  // namespace dpkit

#endif  // DPKIT_COMPILER_H_
