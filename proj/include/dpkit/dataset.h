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

#ifndef DPKIT_DATASET_H_
#define DPKIT_DATASET_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "dpkit/table.h"

namespace dpkit {

// What transformations and measurements consume: a single table, a
// fixed-length tuple of tables (joins, multi-table sessions), or a list of
// tables (overlapping subsets).
class Dataset {
 public:
  enum class Kind { kTable, kTuple, kList };

  Dataset(Table table);  // NOLINT
  static Dataset Tuple(std::vector<Table> tables);
  static Dataset List(std::vector<Table> tables);

  Kind kind() const { return kind_; }
  // Requires kind() == kTable.
  const Table& table() const { return tables_.front(); }
  // Components of a tuple or list (the single table for kTable).
  const std::vector<Table>& tables() const { return tables_; }

 private:
  Dataset(Kind kind, std::vector<Table> tables)
      : kind_(kind), tables_(std::move(tables)) {}
  Kind kind_;
  std::vector<Table> tables_;
};

class DatasetDomain {
 public:
  DatasetDomain(TableDomain table);  // NOLINT
  static DatasetDomain Tuple(std::vector<TableDomain> components);
  // A list of exactly `length` tables, each in `element`.
  static DatasetDomain List(TableDomain element, size_t length);

  Dataset::Kind kind() const { return kind_; }
  const TableDomain& table() const { return components_.front(); }
  const std::vector<TableDomain>& components() const { return components_; }

  // "DomainMismatch: ..." (InvalidArgument) if `data` is not a member.
  absl::Status Validate(const Dataset& data) const;
  std::string ToString() const;

  friend bool operator==(const DatasetDomain&, const DatasetDomain&) = default;

 private:
  DatasetDomain(Dataset::Kind kind, std::vector<TableDomain> components)
      : kind_(kind), components_(std::move(components)) {}
  Dataset::Kind kind_;
  std::vector<TableDomain> components_;
};

}  // namespace dpkit

#endif  // DPKIT_DATASET_H_
