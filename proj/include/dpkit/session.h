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

// A fixed privacy guarantee over a set of private tables.
//
//   absl::StatusOr<Session> session =
//       Session::Builder()
//           .WithPrivacyBudget({Measure::kPureDp, ExtRational(1)})
//           .WithPrivacyUnit(PrivacyUnit::AddMaxRows(1))
//           .WithSeed(7)
//           .WithPrivateTable("people", people)
//           .Build();
//   absl::StatusOr<Table> answer = session->Evaluate(query, ExtRational(1, 2));
//
// After Build, private rows are reachable only through Evaluate's noisy
// answers.

#ifndef DPKIT_SESSION_H_
#define DPKIT_SESSION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "dpkit/compiler.h"
#include "dpkit/query.h"
#include "dpkit/queryable.h"
#include "dpkit/rational.h"
#include "dpkit/table.h"

namespace dpkit {

class Session {
 public:
  class Builder {
   public:
    Builder& WithPrivacyBudget(PrivacyBudget budget);
    Builder& WithPrivacyUnit(PrivacyUnit unit);
    Builder& WithSeed(uint64_t seed);
    Builder& WithPrivateTable(std::string name, Table table);
    Builder& WithPublicTable(std::string name, Table table);

    // Errors: "EmptyTables" (no private table), "MissingIdColumn" (a private
    // table lacks the unit's ID column, or it is not int64/text),
    // "DuplicateTable", "MissingSeed", "MissingBudget".
    absl::StatusOr<Session> Build();

   private:
    std::optional<PrivacyBudget> budget_;
    PrivacyUnit unit_ = PrivacyUnit::AddMaxRows(1);
    std::optional<uint64_t> seed_;
    std::map<std::string, Table> private_;
    std::map<std::string, Table> public_;
    std::string duplicate_;
  };

  Session(Session&&) = default;

  PrivacyBudget TotalBudget() const;
  PrivacyBudget RemainingBudget() const;
  // Successful evaluations so far.
  uint64_t query_counter() const;
  const Catalog& catalog() const { return catalog_; }

  // The pipeline `query` would run for `spend`. Reads no private data.
  absl::StatusOr<CompiledQuery> Compile(const Query& query,
                                        const ExtRational& spend) const;

  // Spends exactly `spend` and returns the noisy answer. Scalar answers are
  // a one-row table with a column named after the aggregation; grouped
  // answers have the key columns followed by that column, one row per key.
  //
  // Errors leave the session unchanged: compile errors (see Compile in
  // compiler.h), "MeasureMismatch", "GuaranteeTooWeak", and
  // "InsufficientBudget" (ResourceExhausted).
  absl::StatusOr<Table> Evaluate(const Query& query, const ExtRational& spend);
  absl::StatusOr<Table> Evaluate(const Query& query,
                                 const PrivacyBudget& spend);

 private:
  Session(Catalog catalog, std::unique_ptr<Queryable> queryable)
      : catalog_(std::move(catalog)), queryable_(std::move(queryable)) {}

  Catalog catalog_;
  std::unique_ptr<Queryable> queryable_;
};

// Converts a scalar or table release into the answer table described at
// Session::Evaluate.
absl::StatusOr<Table> ReleaseToTable(const Release& release,
                                     const std::string& value_column);

}  // namespace dpkit

#endif  // DPKIT_SESSION_H_
