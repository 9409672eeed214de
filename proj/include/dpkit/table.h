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

#ifndef DPKIT_TABLE_H_
#define DPKIT_TABLE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpkit/value.h"

namespace dpkit {

struct Column {
  std::string name;
  ColumnType type;

  friend bool operator==(const Column&, const Column&) = default;
};

// Ordered, non-empty list of uniquely named columns.
class Schema {
 public:
  static absl::StatusOr<Schema> Create(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  size_t size() const { return columns_.size(); }
  const Column& column(size_t i) const { return columns_[i]; }
  std::optional<size_t> IndexOf(absl::string_view name) const;

  // Returns the index of `name`, or InvalidArgument "UnknownColumn: ...".
  absl::StatusOr<size_t> Require(absl::string_view name) const;

  std::string ToString() const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  explicit Schema(std::vector<Column> columns) : columns_(std::move(columns)) {}
  std::vector<Column> columns_;
};

using Row = std::vector<Value>;

// Lexicographic comparison by column position using CompareValues.
int CompareRows(const Row& a, const Row& b);
bool RowLess(const Row& a, const Row& b);

// An immutable multiset of rows conforming to a schema. Copies share the row
// storage. Row order carries no meaning; use Canonicalize for a fixed order.
class Table {
 public:
  static absl::StatusOr<Table> Create(Schema schema, std::vector<Row> rows);
  static Table Empty(Schema schema);

  const Schema& schema() const { return schema_; }
  std::span<const Row> rows() const { return *rows_; }
  size_t size() const { return rows_->size(); }
  bool empty() const { return rows_->empty(); }

 private:
  Table(Schema schema, std::shared_ptr<const std::vector<Row>> rows)
      : schema_(std::move(schema)), rows_(std::move(rows)) {}

  friend Table Canonicalize(const Table& table);
  friend Table UncheckedTable(Schema schema, std::vector<Row> rows);

  Schema schema_;
  std::shared_ptr<const std::vector<Row>> rows_;
};

// Builds a table from rows already known to satisfy `schema`. Used by
// transformations whose output conforms by construction.
Table UncheckedTable(Schema schema, std::vector<Row> rows);

absl::Status ValidateRow(const Schema& schema, const Row& row);

// Returns a table with rows sorted by CompareRows. Idempotent.
Table Canonicalize(const Table& table);

// Multiset equality. SchemaMismatch (InvalidArgument) if schemas differ.
absl::StatusOr<bool> TableEqual(const Table& a, const Table& b);

// The domain of a single table: its schema, plus optionally the column that
// carries privacy identifiers.
class TableDomain {
 public:
  static absl::StatusOr<TableDomain> Create(
      Schema schema, std::optional<std::string> id_column = std::nullopt);

  const Schema& schema() const { return schema_; }
  const std::optional<std::string>& id_column() const { return id_column_; }

  absl::Status Validate(const Table& table) const;

  friend bool operator==(const TableDomain&, const TableDomain&) = default;

 private:
  TableDomain(Schema schema, std::optional<std::string> id_column)
      : schema_(std::move(schema)), id_column_(std::move(id_column)) {}

  Schema schema_;
  std::optional<std::string> id_column_;
};

}  // namespace dpkit

#endif  // DPKIT_TABLE_H_
