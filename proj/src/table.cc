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

#include "dpkit/table.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {

absl::StatusOr<Schema> Schema::Create(std::vector<Column> columns) {
  if (columns.empty()) {
    return absl::InvalidArgumentError("a schema needs at least one column");
  }
  std::set<std::string> seen;
  for (const Column& c : columns) {
    if (c.name.empty()) {
      return absl::InvalidArgumentError("column names must be nonempty");
    }
    if (!seen.insert(c.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate column name '", c.name, "'"));
    }
  }
  return Schema(std::move(columns));
}

std::optional<size_t> Schema::IndexOf(absl::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

absl::StatusOr<size_t> Schema::Require(absl::string_view name) const {
  std::optional<size_t> index = IndexOf(name);
  if (!index) {
    return absl::InvalidArgumentError(absl::StrCat(
        "UnknownColumn: '", name, "' is not in schema ", ToString()));
  }
  return *index;
}

std::string Schema::ToString() const {
  return absl::StrCat(
      "(",
      absl::StrJoin(columns_, ", ",
                    [](std::string* out, const Column& c) {
                      absl::StrAppend(out, c.name, ":",
                                      ColumnTypeName(c.type));
                    }),
      ")");
}

int CompareRows(const Row& a, const Row& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = CompareValues(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool RowLess(const Row& a, const Row& b) { return CompareRows(a, b) < 0; }

absl::Status ValidateRow(const Schema& schema, const Row& row) {
  if (row.size() != schema.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "row has ", row.size(), " values, schema has ", schema.size()));
  }
  for (size_t i = 0; i < row.size(); ++i) {
    if (TypeOf(row[i]) != schema.column(i).type) {
      return absl::InvalidArgumentError(
          absl::StrCat("value for column '", schema.column(i).name,
                       "' is not of type ", ColumnTypeName(schema.column(i).type)));
    }
    if (const double* d = std::get_if<double>(&row[i]);
        d != nullptr && std::isnan(*d)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "NaN in column '", schema.column(i).name, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Table> Table::Create(Schema schema, std::vector<Row> rows) {
  for (const Row& row : rows) {
    absl::Status status = ValidateRow(schema, row);
    if (!status.ok()) return status;
  }
  return UncheckedTable(std::move(schema), std::move(rows));
}

Table Table::Empty(Schema schema) { return UncheckedTable(std::move(schema), {}); }

Table UncheckedTable(Schema schema, std::vector<Row> rows) {
  return Table(std::move(schema),
               std::make_shared<const std::vector<Row>>(std::move(rows)));
}

Table Canonicalize(const Table& table) {
  std::vector<Row> rows(table.rows().begin(), table.rows().end());
  std::stable_sort(rows.begin(), rows.end(), RowLess);
  return UncheckedTable(table.schema(), std::move(rows));
}

absl::StatusOr<bool> TableEqual(const Table& a, const Table& b) {
  if (!(a.schema() == b.schema())) {
    return absl::InvalidArgumentError(
        absl::StrCat("SchemaMismatch: ", a.schema().ToString(), " vs ",
                     b.schema().ToString()));
  }
  if (a.size() != b.size()) return false;
  Table ca = Canonicalize(a);
  Table cb = Canonicalize(b);
  for (size_t i = 0; i < ca.size(); ++i) {
    if (CompareRows(ca.rows()[i], cb.rows()[i]) != 0) return false;
  }
  return true;
}

absl::StatusOr<TableDomain> TableDomain::Create(
    Schema schema, std::optional<std::string> id_column) {
  if (id_column) {
    absl::StatusOr<size_t> index = schema.Require(*id_column);
    if (!index.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MissingIdColumn: id column '", *id_column, "' is not in schema ",
          schema.ToString()));
    }
    if (schema.column(*index).type == ColumnType::kFloat64) {
      return absl::InvalidArgumentError(absl::StrCat(
          "id column '", *id_column, "' must be int64 or text"));
    }
  }
  return TableDomain(std::move(schema), std::move(id_column));
}

absl::Status TableDomain::Validate(const Table& table) const {
  if (!(table.schema() == schema_)) {
    return absl::InvalidArgumentError(
        absl::StrCat("DomainMismatch: table schema ", table.schema().ToString(),
                     " does not match domain schema ", schema_.ToString()));
  }
  return absl::OkStatus();
}

}  // namespace dpkit
