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

#include "dpkit/dataset.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {

Dataset::Dataset(Table table) : kind_(Kind::kTable), tables_{std::move(table)} {}

Dataset Dataset::Tuple(std::vector<Table> tables) {
  return Dataset(Kind::kTuple, std::move(tables));
}

Dataset Dataset::List(std::vector<Table> tables) {
  return Dataset(Kind::kList, std::move(tables));
}

DatasetDomain::DatasetDomain(TableDomain table)
    : kind_(Dataset::Kind::kTable), components_{std::move(table)} {}

DatasetDomain DatasetDomain::Tuple(std::vector<TableDomain> components) {
  return DatasetDomain(Dataset::Kind::kTuple, std::move(components));
}

DatasetDomain DatasetDomain::List(TableDomain element, size_t length) {
  return DatasetDomain(Dataset::Kind::kList,
                       std::vector<TableDomain>(length, element));
}

absl::Status DatasetDomain::Validate(const Dataset& data) const {
  if (data.kind() != kind_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DomainMismatch: dataset does not match domain ", ToString()));
  }
  if (data.tables().size() != components_.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        kind_ == Dataset::Kind::kList ? "LengthMismatch" : "DomainMismatch",
        ": dataset has ", data.tables().size(), " tables for domain ",
        ToString()));
  }
  for (size_t i = 0; i < components_.size(); ++i) {
    absl::Status status = components_[i].Validate(data.tables()[i]);
    if (!status.ok()) return status;
  }
  return absl::OkStatus();
}

std::string DatasetDomain::ToString() const {
  auto fmt = [](std::string* out, const TableDomain& d) {
    absl::StrAppend(out, d.schema().ToString());
    if (d.id_column()) absl::StrAppend(out, "[id=", *d.id_column(), "]");
  };
  switch (kind_) {
    case Dataset::Kind::kTable: {
      std::string out;
      fmt(&out, components_.front());
      return out;
    }
    case Dataset::Kind::kTuple:
      return absl::StrCat("Tuple<", absl::StrJoin(components_, ", ", fmt), ">");
    case Dataset::Kind::kList: {
      std::string element;
      if (!components_.empty()) fmt(&element, components_.front());
      return absl::StrCat("List<", element, " x ", components_.size(), ">");
    }
  }
  return "";
}

}  // namespace dpkit
