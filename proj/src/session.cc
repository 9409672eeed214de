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

#include "dpkit/session.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {

Session::Builder& Session::Builder::WithPrivacyBudget(PrivacyBudget budget) {
  budget_ = std::move(budget);
  return *this;
}

Session::Builder& Session::Builder::WithPrivacyUnit(PrivacyUnit unit) {
  unit_ = std::move(unit);
  return *this;
}

Session::Builder& Session::Builder::WithSeed(uint64_t seed) {
  seed_ = seed;
  return *this;
}

Session::Builder& Session::Builder::WithPrivateTable(std::string name,
                                                     Table table) {
  if (private_.count(name) || public_.count(name)) duplicate_ = name;
  private_.insert_or_assign(std::move(name), std::move(table));
  return *this;
}

Session::Builder& Session::Builder::WithPublicTable(std::string name,
                                                    Table table) {
  if (private_.count(name) || public_.count(name)) duplicate_ = name;
  public_.insert_or_assign(std::move(name), std::move(table));
  return *this;
}

absl::StatusOr<Session> Session::Builder::Build() {
  if (!duplicate_.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("DuplicateTable: '", duplicate_, "' was added twice"));
  }
  if (!budget_) {
    return absl::InvalidArgumentError("MissingBudget: no privacy budget set");
  }
  if (!seed_) {
    return absl::InvalidArgumentError("MissingSeed: no seed set");
  }
  if (private_.empty()) {
    return absl::InvalidArgumentError(
        "EmptyTables: a session needs at least one private table");
  }
  Catalog catalog;
  catalog.unit = unit_;
  catalog.measure = budget_->measure;
  catalog.public_tables = public_;
  std::vector<Table> tables;
  for (const auto& [name, table] : private_) {
    std::optional<std::string> id;
    if (unit_.is_id()) {
      if (!table.schema().IndexOf(unit_.id_column())) {
        return absl::InvalidArgumentError(
            absl::StrCat("MissingIdColumn: table '", name, "' has no column '",
                         unit_.id_column(), "'"));
      }
      id = unit_.id_column();
    }
    absl::StatusOr<TableDomain> domain = TableDomain::Create(table.schema(), id);
    if (!domain.ok()) return domain.status();
    catalog.private_tables.emplace(name, *std::move(domain));
    tables.push_back(table);
  }
  absl::StatusOr<Queryable> queryable = Queryable::Create(
      Dataset::Tuple(std::move(tables)), catalog.InputDomain(),
      catalog.InputMetric(), budget_->measure, budget_->amount,
      RngStream(*seed_));
  if (!queryable.ok()) return queryable.status();
  return Session(std::move(catalog),
                 std::make_unique<Queryable>(*std::move(queryable)));
}

PrivacyBudget Session::TotalBudget() const {
  return {catalog_.measure, queryable_->total()};
}

PrivacyBudget Session::RemainingBudget() const {
  return {catalog_.measure, queryable_->remaining()};
}

uint64_t Session::query_counter() const { return queryable_->asks(); }

absl::StatusOr<CompiledQuery> Session::Compile(const Query& query,
                                               const ExtRational& spend) const {
  return dpkit::Compile(query, catalog_, spend);
}

absl::StatusOr<Table> Session::Evaluate(const Query& query,
                                        const ExtRational& spend) {
  absl::StatusOr<CompiledQuery> compiled = Compile(query, spend);
  if (!compiled.ok()) return compiled.status();
  absl::StatusOr<Release> release = queryable_->Ask(
      compiled->measurement, spend, catalog_.unit.distance());
  if (!release.ok()) return release.status();
  return ReleaseToTable(*release, compiled->value_column);
}

absl::StatusOr<Table> Session::Evaluate(const Query& query,
                                        const PrivacyBudget& spend) {
  if (spend.measure != catalog_.measure) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MeasureMismatch: spend is ", MeasureName(spend.measure),
        " but the session uses ", MeasureName(catalog_.measure)));
  }
  return Evaluate(query, spend.amount);
}

absl::StatusOr<Table> ReleaseToTable(const Release& release,
                                     const std::string& value_column) {
  switch (release.kind()) {
    case Release::Kind::kTable:
      return release.table();
    case Release::Kind::kScalar: {
      absl::StatusOr<Schema> schema =
          Schema::Create({{value_column, TypeOf(release.scalar())}});
      if (!schema.ok()) return schema.status();
      return Table::Create(*schema, {{release.scalar()}});
    }
    case Release::Kind::kTuple:
      break;
  }
  return absl::InvalidArgumentError(
      "NonScalarRelease: tuple releases have no table form");
}

}  // namespace dpkit
