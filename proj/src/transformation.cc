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

#include "dpkit/transformation.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {
namespace {

struct RowCompare {
  bool operator()(const Row& a, const Row& b) const { return RowLess(a, b); }
};

absl::Status CheckRowMetric(const TableDomain& domain, const Metric& metric) {
  if (metric.kind() == Metric::Kind::kSymmetricDifference) {
    return absl::OkStatus();
  }
  if (metric.kind() == Metric::Kind::kAddRemoveIds) {
    if (domain.id_column() != metric.id_column()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MetricMismatch: ", metric.ToString(),
          " needs a domain whose id column is '", metric.id_column(), "'"));
    }
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "MetricMismatch: row transformations need SymmetricDifference or "
      "AddRemoveIds, got ",
      metric.ToString()));
}

absl::StatusOr<std::vector<size_t>> KeyIndices(
    const Schema& schema, const std::vector<std::string>& keys) {
  std::vector<size_t> indices;
  for (const std::string& key : keys) {
    absl::StatusOr<size_t> index = schema.Require(key);
    if (!index.ok()) return index.status();
    indices.push_back(*index);
  }
  return indices;
}

Row Project(const Row& row, const std::vector<size_t>& indices) {
  Row out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(row[i]);
  return out;
}

// Key columns must exist on both sides with equal types. Returns the schema
// left ++ (right minus keys) and the right-hand indices to append.
absl::StatusOr<std::pair<Schema, std::vector<size_t>>> JoinSchema(
    const Schema& left, const Schema& right,
    const std::vector<std::string>& keys) {
  if (keys.empty()) {
    return absl::InvalidArgumentError("a join needs at least one key column");
  }
  for (const std::string& key : keys) {
    std::optional<size_t> l = left.IndexOf(key), r = right.IndexOf(key);
    if (!l || !r) {
      return absl::InvalidArgumentError(absl::StrCat(
          "KeyTypeMismatch: join key '", key, "' missing on one side"));
    }
    if (left.column(*l).type != right.column(*r).type) {
      return absl::InvalidArgumentError(absl::StrCat(
          "KeyTypeMismatch: join key '", key, "' is ",
          ColumnTypeName(left.column(*l).type), " on the left and ",
          ColumnTypeName(right.column(*r).type), " on the right"));
    }
  }
  std::vector<Column> columns = left.columns();
  std::vector<size_t> appended;
  for (size_t i = 0; i < right.size(); ++i) {
    const Column& c = right.column(i);
    if (std::find(keys.begin(), keys.end(), c.name) != keys.end()) continue;
    if (left.IndexOf(c.name)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "join output would contain column '", c.name,
          "' twice; rename it with a map first"));
    }
    columns.push_back(c);
    appended.push_back(i);
  }
  absl::StatusOr<Schema> schema = Schema::Create(std::move(columns));
  if (!schema.ok()) return schema.status();
  return std::make_pair(*std::move(schema), std::move(appended));
}

using KeyedRows = std::map<Row, std::vector<Row>, RowCompare>;

KeyedRows GroupRows(std::span<const Row> rows, const std::vector<size_t>& key) {
  KeyedRows groups;
  for (const Row& row : rows) groups[Project(row, key)].push_back(row);
  return groups;
}

// Canonical order within each group, then the first `bound` rows.
void TruncateGroups(KeyedRows& groups, int64_t bound) {
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(), RowLess);
    if (static_cast<int64_t>(rows.size()) > bound) rows.resize(bound);
  }
}

absl::Status CheckPositive(int64_t value, absl::string_view what) {
  if (value <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("NonPositiveBound: ", what, " must be positive, got ", value));
  }
  return absl::OkStatus();
}

}  // namespace

Transformation::Transformation(std::string name, DatasetDomain input_domain,
                               DatasetDomain output_domain, Metric input_metric,
                               Metric output_metric, DistanceMap stability,
                               ApplyFn apply)
    : name_(std::move(name)),
      input_domain_(std::move(input_domain)),
      output_domain_(std::move(output_domain)),
      input_metric_(std::move(input_metric)),
      output_metric_(std::move(output_metric)),
      stability_(std::move(stability)),
      apply_(std::move(apply)) {}

absl::StatusOr<Dataset> Transformation::Apply(const Dataset& input) const {
  absl::Status status = input_domain_.Validate(input);
  if (!status.ok()) return status;
  return apply_(input);
}

absl::StatusOr<Transformation> MakeFilter(const TableDomain& domain,
                                          const Metric& metric,
                                          const Expr& predicate) {
  absl::Status status = CheckRowMetric(domain, metric);
  if (!status.ok()) return status;
  absl::StatusOr<BoundExpr> bound = BoundExpr::Bind(predicate, domain.schema());
  if (!bound.ok()) return bound.status();
  if (bound->type() != ExprType::kBool) {
    return absl::InvalidArgumentError(
        absl::StrCat("TypeError: filter predicate ", predicate.ToString(),
                     " is ", ExprTypeName(bound->type()), ", not bool"));
  }
  BoundExpr pred = *std::move(bound);
  return Transformation(
      absl::StrCat("filter ", predicate.ToString()), domain, domain, metric,
      metric, DistanceMap::Identity(),
      [pred](const Dataset& in) -> absl::StatusOr<Dataset> {
        const Table& table = in.table();
        std::vector<Row> kept;
        for (const Row& row : table.rows()) {
          if (pred.EvaluatePredicate(row)) kept.push_back(row);
        }
        return Dataset(UncheckedTable(table.schema(), std::move(kept)));
      });
}

absl::StatusOr<Transformation> MakeMap(const TableDomain& domain,
                                       const Metric& metric,
                                       const std::vector<NamedExpr>& outputs) {
  absl::Status status = CheckRowMetric(domain, metric);
  if (!status.ok()) return status;
  std::vector<BoundExpr> exprs;
  std::vector<Column> columns;
  bool id_passed_through = false;
  for (const NamedExpr& out : outputs) {
    absl::StatusOr<BoundExpr> bound = BoundExpr::Bind(out.expr, domain.schema());
    if (!bound.ok()) return bound.status();
    absl::StatusOr<ColumnType> type = ColumnTypeFor(bound->type());
    if (!type.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          type.status().message(), " (map output '", out.name, "')"));
    }
    if (domain.id_column() && out.name == *domain.id_column() &&
        out.expr.kind() == Expr::Kind::kColumn &&
        out.expr.column_name() == *domain.id_column()) {
      id_passed_through = true;
    }
    columns.push_back({out.name, *type});
    exprs.push_back(*std::move(bound));
  }
  if (metric.kind() == Metric::Kind::kAddRemoveIds && !id_passed_through) {
    return absl::InvalidArgumentError(absl::StrCat(
        "IdColumnDropped: a map under ", metric.ToString(), " must output '",
        metric.id_column(), "' unchanged"));
  }
  absl::StatusOr<Schema> schema = Schema::Create(std::move(columns));
  if (!schema.ok()) return schema.status();
  std::optional<std::string> id;
  if (id_passed_through) id = domain.id_column();
  absl::StatusOr<TableDomain> out_domain = TableDomain::Create(*schema, id);
  if (!out_domain.ok()) return out_domain.status();
  std::vector<std::string> names;
  for (const NamedExpr& out : outputs) names.push_back(out.name);
  Schema out_schema = *schema;
  return Transformation(
      absl::StrCat("map [", absl::StrJoin(names, ","), "]"), domain,
      *out_domain, metric, metric, DistanceMap::Identity(),
      [exprs, out_schema](const Dataset& in) -> absl::StatusOr<Dataset> {
        std::vector<Row> rows;
        rows.reserve(in.table().size());
        for (const Row& row : in.table().rows()) {
          Row out;
          out.reserve(exprs.size());
          for (const BoundExpr& e : exprs) out.push_back(e.EvaluateValue(row));
          rows.push_back(std::move(out));
        }
        return Dataset(UncheckedTable(out_schema, std::move(rows)));
      });
}

absl::StatusOr<Transformation> MakeFlatMap(const TableDomain& domain,
                                           const Metric& metric,
                                           Column new_column,
                                           RowExpansion expansion,
                                           int64_t max_rows) {
  absl::Status status = CheckRowMetric(domain, metric);
  if (!status.ok()) return status;
  status = CheckPositive(max_rows, "max_rows");
  if (!status.ok()) return status;
  std::vector<Column> columns = domain.schema().columns();
  columns.push_back(new_column);
  absl::StatusOr<Schema> schema = Schema::Create(std::move(columns));
  if (!schema.ok()) return schema.status();
  absl::StatusOr<TableDomain> out_domain =
      TableDomain::Create(*schema, domain.id_column());
  if (!out_domain.ok()) return out_domain.status();
  DistanceMap stability = metric.kind() == Metric::Kind::kAddRemoveIds
                              ? DistanceMap::Identity()
                              : DistanceMap::Linear(ExtRational(max_rows));
  Schema out_schema = *schema;
  ColumnType type = new_column.type;
  return Transformation(
      absl::StrCat("flat_map ", new_column.name, " (max ", max_rows, ")"),
      domain, *out_domain, metric, metric, stability,
      [expansion, max_rows, out_schema, type](
          const Dataset& in) -> absl::StatusOr<Dataset> {
        std::vector<Row> rows;
        for (const Row& row : in.table().rows()) {
          int64_t emitted = 0;
          for (Value& v : expansion(row)) {
            if (emitted >= max_rows) break;
            if (TypeOf(v) != type) continue;
            Row out = row;
            out.push_back(std::move(v));
            rows.push_back(std::move(out));
            ++emitted;
          }
        }
        return Dataset(UncheckedTable(out_schema, std::move(rows)));
      });
}

absl::StatusOr<Transformation> MakePublicJoin(
    const TableDomain& domain, const Metric& metric, const Table& public_table,
    const std::vector<std::string>& keys) {
  if (metric.kind() != Metric::Kind::kSymmetricDifference) {
    return absl::FailedPreconditionError(absl::StrCat(
        "UnboundedSensitivity: a public join needs SymmetricDifference, got ",
        metric.ToString(), "; add TruncateById before joining"));
  }
  absl::StatusOr<std::pair<Schema, std::vector<size_t>>> joined =
      JoinSchema(domain.schema(), public_table.schema(), keys);
  if (!joined.ok()) return joined.status();
  absl::StatusOr<std::vector<size_t>> left_key =
      KeyIndices(domain.schema(), keys);
  absl::StatusOr<std::vector<size_t>> right_key =
      KeyIndices(public_table.schema(), keys);
  if (!left_key.ok()) return left_key.status();
  if (!right_key.ok()) return right_key.status();
  KeyedRows public_rows = GroupRows(public_table.rows(), *right_key);
  int64_t multiplicity = 0;
  for (const auto& [key, rows] : public_rows) {
    multiplicity = std::max<int64_t>(multiplicity, rows.size());
  }
  absl::StatusOr<TableDomain> out_domain = TableDomain::Create(joined->first);
  if (!out_domain.ok()) return out_domain.status();
  Schema out_schema = joined->first;
  std::vector<size_t> appended = joined->second;
  std::vector<size_t> lk = *left_key;
  return Transformation(
      absl::StrCat("public_join on [", absl::StrJoin(keys, ","), "]"), domain,
      *out_domain, metric, metric,
      DistanceMap::Linear(ExtRational(multiplicity)),
      [public_rows, lk, appended, out_schema](
          const Dataset& in) -> absl::StatusOr<Dataset> {
        std::vector<Row> rows;
        for (const Row& row : in.table().rows()) {
          auto it = public_rows.find(Project(row, lk));
          if (it == public_rows.end()) continue;
          for (const Row& match : it->second) {
            Row out = row;
            for (size_t i : appended) out.push_back(match[i]);
            rows.push_back(std::move(out));
          }
        }
        return Dataset(UncheckedTable(out_schema, std::move(rows)));
      });
}

ExtRational PrivateJoinBound(int64_t left_bound, int64_t right_bound,
                             const ExtRational& left_distance,
                             const ExtRational& right_distance) {
  return ExtRational(2) * (ExtRational(right_bound) * left_distance +
                           ExtRational(left_bound) * right_distance);
}

absl::StatusOr<Transformation> MakePrivateJoin(
    const TableDomain& left, const TableDomain& right,
    const std::vector<std::string>& keys, int64_t left_bound,
    int64_t right_bound) {
  absl::Status status = CheckPositive(left_bound, "left bound");
  if (!status.ok()) return status;
  status = CheckPositive(right_bound, "right bound");
  if (!status.ok()) return status;
  absl::StatusOr<std::pair<Schema, std::vector<size_t>>> joined =
      JoinSchema(left.schema(), right.schema(), keys);
  if (!joined.ok()) return joined.status();
  absl::StatusOr<std::vector<size_t>> left_key = KeyIndices(left.schema(), keys);
  absl::StatusOr<std::vector<size_t>> right_key =
      KeyIndices(right.schema(), keys);
  if (!left_key.ok()) return left_key.status();
  if (!right_key.ok()) return right_key.status();
  absl::StatusOr<TableDomain> out_domain = TableDomain::Create(joined->first);
  if (!out_domain.ok()) return out_domain.status();
  Metric sd = Metric::SymmetricDifference();
  Schema out_schema = joined->first;
  std::vector<size_t> appended = joined->second;
  std::vector<size_t> lk = *left_key, rk = *right_key;
  return Transformation(
      absl::StrCat("private_join on [", absl::StrJoin(keys, ","), "] bounds (",
                   left_bound, ",", right_bound, ")"),
      DatasetDomain::Tuple({left, right}), *out_domain,
      Metric::TableTuple({sd, sd}), sd,
      DistanceMap::Linear(
          ExtRational(2 * std::max(left_bound, right_bound))),
      [lk, rk, appended, out_schema, left_bound, right_bound](
          const Dataset& in) -> absl::StatusOr<Dataset> {
        KeyedRows l = GroupRows(in.tables()[0].rows(), lk);
        KeyedRows r = GroupRows(in.tables()[1].rows(), rk);
        TruncateGroups(l, left_bound);
        TruncateGroups(r, right_bound);
        std::vector<Row> rows;
        for (const auto& [key, left_rows] : l) {
          auto it = r.find(key);
          if (it == r.end()) continue;
          for (const Row& a : left_rows) {
            for (const Row& b : it->second) {
              Row out = a;
              for (size_t i : appended) out.push_back(b[i]);
              rows.push_back(std::move(out));
            }
          }
        }
        return Dataset(UncheckedTable(out_schema, std::move(rows)));
      });
}

absl::StatusOr<Transformation> MakeTruncateById(const TableDomain& domain,
                                                const std::string& id_column,
                                                int64_t bound) {
  if (domain.id_column() != id_column) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MissingIdColumn: truncation by '", id_column,
        "' needs a domain whose id column is '", id_column, "'"));
  }
  absl::Status status = CheckPositive(bound, "truncation bound");
  if (!status.ok()) return status;
  size_t id_index = *domain.schema().IndexOf(id_column);
  return Transformation(
      absl::StrCat("truncate ", bound, " rows per ", id_column), domain, domain,
      Metric::AddRemoveIds(id_column), Metric::SymmetricDifference(),
      DistanceMap::Linear(ExtRational(bound)),
      [id_index, bound](const Dataset& in) -> absl::StatusOr<Dataset> {
        KeyedRows groups = GroupRows(in.table().rows(), {id_index});
        TruncateGroups(groups, bound);
        std::vector<Row> rows;
        for (auto& [id, group] : groups) {
          for (Row& row : group) rows.push_back(std::move(row));
        }
        return Dataset(UncheckedTable(in.table().schema(), std::move(rows)));
      });
}

absl::StatusOr<Transformation> MakeOverlappingSubsets(
    const TableDomain& domain, SubsetAssignment assign, int64_t num_subsets,
    int64_t contribution_bound) {
  absl::Status status = CheckPositive(num_subsets, "number of subsets");
  if (!status.ok()) return status;
  status = CheckPositive(contribution_bound, "contribution bound");
  if (!status.ok()) return status;
  Metric sd = Metric::SymmetricDifference();
  return Transformation(
      absl::StrCat("overlapping_subsets k=", num_subsets, " c=",
                   contribution_bound),
      domain, DatasetDomain::List(domain, num_subsets), sd,
      Metric::BoundedLists(sd),
      DistanceMap::Linear(ExtRational(contribution_bound)),
      [assign, num_subsets, contribution_bound](
          const Dataset& in) -> absl::StatusOr<Dataset> {
        std::vector<std::vector<Row>> subsets(num_subsets);
        for (const Row& row : in.table().rows()) {
          std::vector<int64_t> indices = assign(row);
          std::sort(indices.begin(), indices.end());
          indices.erase(std::unique(indices.begin(), indices.end()),
                        indices.end());
          if (static_cast<int64_t>(indices.size()) > contribution_bound) {
            indices.resize(contribution_bound);
          }
          for (int64_t i : indices) {
            if (i < 0 || i >= num_subsets) {
              return absl::InvalidArgumentError(absl::StrCat(
                  "BadIndex: subset index ", i, " outside [0, ", num_subsets,
                  ")"));
            }
            subsets[i].push_back(row);
          }
        }
        std::vector<Table> tables;
        for (std::vector<Row>& rows : subsets) {
          tables.push_back(UncheckedTable(in.table().schema(), std::move(rows)));
        }
        return Dataset::List(std::move(tables));
      });
}

absl::StatusOr<Transformation> MakePartitionByKeys(
    const TableDomain& domain, const std::vector<std::string>& keys) {
  absl::StatusOr<std::vector<size_t>> indices = KeyIndices(domain.schema(), keys);
  if (!indices.ok()) return indices.status();
  Metric sd = Metric::SymmetricDifference();
  return Transformation(
      absl::StrCat("partition by [", absl::StrJoin(keys, ","), "]"), domain,
      domain, sd, Metric::GroupedBy(keys, sd), DistanceMap::Identity(),
      [](const Dataset& in) -> absl::StatusOr<Dataset> { return in; });
}

absl::StatusOr<Transformation> MakeSelectTable(const DatasetDomain& domain,
                                               const Metric& metric,
                                               size_t index) {
  if (domain.kind() != Dataset::Kind::kTuple ||
      index >= domain.components().size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DomainMismatch: cannot select component ", index, " of ",
        domain.ToString()));
  }
  const TableDomain& component = domain.components()[index];
  Metric out_metric = metric;
  if (metric.kind() == Metric::Kind::kTableTuple &&
      metric.components().size() == domain.components().size()) {
    out_metric = metric.components()[index];
  } else if (metric.kind() == Metric::Kind::kAddRemoveIds) {
    if (component.id_column() != metric.id_column()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MissingIdColumn: component ", index, " lacks id column '",
          metric.id_column(), "'"));
    }
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "MetricMismatch: cannot select a component under ", metric.ToString()));
  }
  return Transformation(
      absl::StrCat("select table ", index), domain, component, metric,
      out_metric, DistanceMap::Identity(),
      [index](const Dataset& in) -> absl::StatusOr<Dataset> {
        return Dataset(in.tables()[index]);
      });
}

absl::StatusOr<Transformation> MakeTupleOf(
    const std::vector<Transformation>& parts) {
  if (parts.empty()) {
    return absl::InvalidArgumentError("EmptyList: a tuple needs components");
  }
  std::vector<TableDomain> domains;
  std::vector<Metric> metrics;
  std::vector<DistanceMap> stabilities;
  std::vector<std::string> names;
  for (const Transformation& t : parts) {
    if (!(t.input_domain() == parts.front().input_domain())) {
      return absl::InvalidArgumentError(
          "DomainMismatch: tuple components must share an input domain");
    }
    if (!(t.input_metric() == parts.front().input_metric())) {
      return absl::InvalidArgumentError(
          "MetricMismatch: tuple components must share an input metric");
    }
    if (t.output_domain().kind() != Dataset::Kind::kTable) {
      return absl::InvalidArgumentError(
          "DomainMismatch: tuple components must output single tables");
    }
    domains.push_back(t.output_domain().table());
    metrics.push_back(t.output_metric());
    stabilities.push_back(t.stability());
    names.push_back(t.name());
  }
  absl::StatusOr<DistanceMap> stability = SumMaps(stabilities);
  if (!stability.ok()) return stability.status();
  std::vector<Transformation> copy = parts;
  return Transformation(
      absl::StrCat("tuple(", absl::StrJoin(names, "; "), ")"),
      parts.front().input_domain(), DatasetDomain::Tuple(domains),
      parts.front().input_metric(), Metric::TableTuple(metrics), *stability,
      [copy](const Dataset& in) -> absl::StatusOr<Dataset> {
        std::vector<Table> tables;
        for (const Transformation& t : copy) {
          absl::StatusOr<Dataset> out = t.Apply(in);
          if (!out.ok()) return out.status();
          tables.push_back(out->table());
        }
        return Dataset::Tuple(std::move(tables));
      });
}

absl::StatusOr<Transformation> Chain(const Transformation& first,
                                     const Transformation& second) {
  if (!(first.output_domain() == second.input_domain())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DomainMismatch: cannot chain '", first.name(), "' producing ",
        first.output_domain().ToString(), " into '", second.name(),
        "' expecting ", second.input_domain().ToString()));
  }
  if (!(first.output_metric() == second.input_metric())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MetricMismatch: cannot chain '", first.name(), "' under ",
        first.output_metric().ToString(), " into '", second.name(),
        "' under ", second.input_metric().ToString()));
  }
  Transformation a = first, b = second;
  return Transformation(
      absl::StrCat(first.name(), " | ", second.name()), first.input_domain(),
      second.output_domain(), first.input_metric(), second.output_metric(),
      ComposeMaps(second.stability(), first.stability()),
      [a, b](const Dataset& in) -> absl::StatusOr<Dataset> {
        absl::StatusOr<Dataset> mid = a.Apply(in);
        if (!mid.ok()) return mid;
        return b.Apply(*mid);
      });
}

}  // namespace dpkit
