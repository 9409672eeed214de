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

#include "dpkit/metric.h"

#include <algorithm>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {
namespace {

struct RowCompare {
  bool operator()(const Row& a, const Row& b) const { return RowLess(a, b); }
};

absl::Status Mismatch(absl::string_view why) {
  return absl::InvalidArgumentError(absl::StrCat("DomainMismatch: ", why));
}

// Multiset symmetric difference of two row ranges.
int64_t RowSymmetricDifference(std::span<const Row> a, std::span<const Row> b) {
  std::vector<Row> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end(), RowLess);
  std::sort(sb.begin(), sb.end(), RowLess);
  int64_t diff = 0;
  size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    int c = CompareRows(sa[i], sb[j]);
    if (c == 0) {
      ++i;
      ++j;
    } else if (c < 0) {
      ++diff;
      ++i;
    } else {
      ++diff;
      ++j;
    }
  }
  return diff + static_cast<int64_t>((sa.size() - i) + (sb.size() - j));
}

// ID value -> per-component canonical row lists.
using IdGroups = std::map<Value, std::vector<std::vector<Row>>,
                          decltype([](const Value& a, const Value& b) {
                            return CompareValues(a, b) < 0;
                          })>;

absl::StatusOr<IdGroups> GroupById(const Dataset& data,
                                   const std::string& id_column) {
  IdGroups groups;
  const size_t n = data.tables().size();
  for (size_t t = 0; t < n; ++t) {
    const Table& table = data.tables()[t];
    std::optional<size_t> index = table.schema().IndexOf(id_column);
    if (!index) {
      return Mismatch(absl::StrCat("table lacks id column '", id_column, "'"));
    }
    for (const Row& row : table.rows()) {
      auto [it, inserted] = groups.try_emplace(row[*index]);
      if (inserted) it->second.resize(n);
      it->second[t].push_back(row);
    }
  }
  for (auto& [id, components] : groups) {
    for (auto& rows : components) std::sort(rows.begin(), rows.end(), RowLess);
  }
  return groups;
}

bool SameGroup(const std::vector<std::vector<Row>>& a,
               const std::vector<std::vector<Row>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t t = 0; t < a.size(); ++t) {
    if (a[t].size() != b[t].size()) return false;
    for (size_t i = 0; i < a[t].size(); ++i) {
      if (CompareRows(a[t][i], b[t][i]) != 0) return false;
    }
  }
  return true;
}

absl::StatusOr<int64_t> AddRemoveIdsDistance(const std::string& id_column,
                                             const Dataset& x,
                                             const Dataset& y) {
  if (x.kind() == Dataset::Kind::kList || x.kind() != y.kind() ||
      x.tables().size() != y.tables().size()) {
    return Mismatch("AddRemoveIds needs two tables or two equal-arity tuples");
  }
  absl::StatusOr<IdGroups> gx = GroupById(x, id_column);
  if (!gx.ok()) return gx.status();
  absl::StatusOr<IdGroups> gy = GroupById(y, id_column);
  if (!gy.ok()) return gy.status();
  int64_t distance = 0;
  for (const auto& [id, group] : *gx) {
    auto it = gy->find(id);
    if (it == gy->end()) {
      distance += 1;
    } else if (!SameGroup(group, it->second)) {
      distance += 2;
    }
  }
  for (const auto& [id, group] : *gy) {
    if (!gx->contains(id)) distance += 1;
  }
  return distance;
}

absl::StatusOr<ExtRational> SingleTableDistance(const Metric& metric,
                                                const Table& x,
                                                const Table& y);

absl::StatusOr<ExtRational> GroupedDistance(const Metric& metric,
                                            const Table& x, const Table& y) {
  std::vector<size_t> kx, ky;
  for (const std::string& key : metric.key_columns()) {
    std::optional<size_t> ix = x.schema().IndexOf(key);
    std::optional<size_t> iy = y.schema().IndexOf(key);
    if (!ix || !iy) {
      return Mismatch(absl::StrCat("table lacks key column '", key, "'"));
    }
    kx.push_back(*ix);
    ky.push_back(*iy);
  }
  std::map<Row, std::pair<std::vector<Row>, std::vector<Row>>, RowCompare>
      partitions;
  auto key_of = [](const Row& row, const std::vector<size_t>& idx) {
    Row key;
    for (size_t i : idx) key.push_back(row[i]);
    return key;
  };
  for (const Row& row : x.rows()) partitions[key_of(row, kx)].first.push_back(row);
  for (const Row& row : y.rows()) partitions[key_of(row, ky)].second.push_back(row);
  ExtRational total;
  for (auto& [key, parts] : partitions) {
    absl::StatusOr<ExtRational> d = SingleTableDistance(
        metric.inner(), UncheckedTable(x.schema(), std::move(parts.first)),
        UncheckedTable(y.schema(), std::move(parts.second)));
    if (!d.ok()) return d;
    total += *d;
  }
  return total;
}

absl::StatusOr<ExtRational> SingleTableDistance(const Metric& metric,
                                                const Table& x,
                                                const Table& y) {
  switch (metric.kind()) {
    case Metric::Kind::kSymmetricDifference:
      return ExtRational(RowSymmetricDifference(x.rows(), y.rows()));
    case Metric::Kind::kAddRemoveIds: {
      absl::StatusOr<int64_t> d =
          AddRemoveIdsDistance(metric.id_column(), Dataset(x), Dataset(y));
      if (!d.ok()) return d.status();
      return ExtRational(*d);
    }
    case Metric::Kind::kGroupedBy:
      return GroupedDistance(metric, x, y);
    default:
      return Mismatch(
          absl::StrCat(metric.ToString(), " is not a single-table metric"));
  }
}

}  // namespace

Metric Metric::SymmetricDifference() {
  return Metric(Kind::kSymmetricDifference);
}

Metric Metric::AddRemoveIds(std::string id_column) {
  Metric m(Kind::kAddRemoveIds);
  m.id_column_ = std::move(id_column);
  return m;
}

Metric Metric::GroupedBy(std::vector<std::string> key_columns, Metric inner) {
  Metric m(Kind::kGroupedBy);
  m.key_columns_ = std::move(key_columns);
  m.children_.push_back(std::move(inner));
  return m;
}

Metric Metric::TableTuple(std::vector<Metric> components) {
  Metric m(Kind::kTableTuple);
  m.children_ = std::move(components);
  return m;
}

Metric Metric::BoundedLists(Metric inner) {
  Metric m(Kind::kBoundedLists);
  m.children_.push_back(std::move(inner));
  return m;
}

std::string Metric::ToString() const {
  switch (kind_) {
    case Kind::kSymmetricDifference:
      return "SymmetricDifference";
    case Kind::kAddRemoveIds:
      return absl::StrCat("AddRemoveIds(", id_column_, ")");
    case Kind::kGroupedBy:
      return absl::StrCat("GroupedBy([", absl::StrJoin(key_columns_, ","),
                          "], ", inner().ToString(), ", L1)");
    case Kind::kTableTuple:
      return absl::StrCat(
          "TableTuple(",
          absl::StrJoin(children_, ", ",
                        [](std::string* out, const Metric& m) {
                          absl::StrAppend(out, m.ToString());
                        }),
          ")");
    case Kind::kBoundedLists:
      return absl::StrCat("BoundedLists(", inner().ToString(), ")");
  }
  return "";
}

absl::StatusOr<ExtRational> DatasetDistance(const Metric& metric,
                                            const Dataset& x,
                                            const Dataset& y) {
  switch (metric.kind()) {
    case Metric::Kind::kSymmetricDifference:
    case Metric::Kind::kGroupedBy:
      if (x.kind() != Dataset::Kind::kTable ||
          y.kind() != Dataset::Kind::kTable) {
        return Mismatch(absl::StrCat(metric.ToString(), " needs two tables"));
      }
      return SingleTableDistance(metric, x.table(), y.table());
    case Metric::Kind::kAddRemoveIds: {
      absl::StatusOr<int64_t> d =
          AddRemoveIdsDistance(metric.id_column(), x, y);
      if (!d.ok()) return d.status();
      return ExtRational(*d);
    }
    case Metric::Kind::kTableTuple: {
      if (x.kind() != Dataset::Kind::kTuple ||
          y.kind() != Dataset::Kind::kTuple ||
          x.tables().size() != metric.components().size() ||
          y.tables().size() != metric.components().size()) {
        return Mismatch(absl::StrCat(metric.ToString(), " needs two tuples of ",
                                     metric.components().size(), " tables"));
      }
      ExtRational total;
      for (size_t i = 0; i < metric.components().size(); ++i) {
        absl::StatusOr<ExtRational> d = SingleTableDistance(
            metric.components()[i], x.tables()[i], y.tables()[i]);
        if (!d.ok()) return d;
        total += *d;
      }
      return total;
    }
    case Metric::Kind::kBoundedLists: {
      if (x.kind() != Dataset::Kind::kList || y.kind() != Dataset::Kind::kList) {
        return Mismatch("BoundedLists needs two lists");
      }
      const std::vector<Table>& a = x.tables();
      const std::vector<Table>& b = y.tables();
      ExtRational total;
      for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const Table& ta = i < a.size() ? a[i] : Table::Empty(b[i].schema());
        const Table& tb = i < b.size() ? b[i] : Table::Empty(a[i].schema());
        absl::StatusOr<ExtRational> d =
            SingleTableDistance(metric.inner(), ta, tb);
        if (!d.ok()) return d;
        total += *d;
      }
      return total;
    }
  }
  return absl::InternalError("unreachable metric kind");
}

absl::string_view MeasureName(Measure measure) {
  return measure == Measure::kPureDp ? "pure" : "zcdp";
}

absl::StatusOr<Measure> ParseMeasure(absl::string_view name) {
  if (name == "pure" || name == "puredp") return Measure::kPureDp;
  if (name == "zcdp" || name == "rho") return Measure::kZcdp;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown measure '", name, "' (expected pure or zcdp)"));
}

}  // namespace dpkit
