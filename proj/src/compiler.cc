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

#include "dpkit/compiler.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace dpkit {
namespace {

// Parameter and typing problems become TypeCheckError; everything else
// (sensitivity, shape) passes through unchanged.
absl::Status Annotate(const absl::Status& status, const std::string& where) {
  if (status.code() != absl::StatusCode::kInvalidArgument) return status;
  return absl::InvalidArgumentError(
      absl::StrCat("TypeCheckError: ", where, ": ", status.message()));
}

absl::Status TypeCheckError(const std::string& message) {
  return absl::InvalidArgumentError(absl::StrCat("TypeCheckError: ", message));
}

struct Pipeline {
  Transformation transformation;
  std::vector<std::string> stages;
};

class Compiler {
 public:
  explicit Compiler(const Catalog& catalog) : catalog_(catalog) {}

  absl::StatusOr<Pipeline> Relational(const Query& q) {
    if (q.kind() == Query::Kind::kSource) return Source(q);
    if (q.kind() == Query::Kind::kAgg || q.kind() == Query::Kind::kGroupBy) {
      return TypeCheckError(absl::StrCat(
          "only the root may aggregate, and GroupBy must sit directly under "
          "it; found ",
          q.ToString()));
    }
    if (q.kind() == Query::Kind::kJoinPrivate) return PrivateJoin(q);
    absl::StatusOr<Pipeline> in = Relational(q.input());
    if (!in.ok()) return in.status();
    const Transformation& t = in->transformation;
    const TableDomain domain = t.output_domain().table();
    const Metric& metric = t.output_metric();
    absl::StatusOr<Transformation> step = Step(q, domain, metric);
    if (!step.ok()) return Annotate(step.status(), StepName(q));
    return Append(*std::move(in), *step);
  }

 private:
  static std::string StepName(const Query& q) {
    switch (q.kind()) {
      case Query::Kind::kFilter:
        return "Filter";
      case Query::Kind::kMap:
        return "Map";
      case Query::Kind::kFlatMap:
        return "FlatMap";
      case Query::Kind::kJoinPublic:
        return "JoinPublic";
      case Query::Kind::kJoinPrivate:
        return "JoinPrivate";
      case Query::Kind::kTruncateById:
        return "TruncateById";
      default:
        return "Query";
    }
  }

  static absl::StatusOr<Pipeline> Append(Pipeline in,
                                         const Transformation& step) {
    absl::StatusOr<Transformation> chained = Chain(in.transformation, step);
    if (!chained.ok()) return chained.status();
    in.stages.push_back(step.name());
    return Pipeline{*std::move(chained), std::move(in.stages)};
  }

  absl::StatusOr<Pipeline> Source(const Query& q) {
    auto it = catalog_.private_tables.find(q.table());
    if (it == catalog_.private_tables.end()) {
      if (catalog_.public_tables.count(q.table())) {
        return TypeCheckError(absl::StrCat(
            "table '", q.table(), "' is public; use JoinPublic to read it"));
      }
      return TypeCheckError(absl::StrCat("unknown table '", q.table(), "'"));
    }
    size_t index = std::distance(catalog_.private_tables.begin(), it);
    absl::StatusOr<Transformation> select = MakeSelectTable(
        catalog_.InputDomain(), catalog_.InputMetric(), index);
    if (!select.ok()) return Annotate(select.status(), "Source");
    return Pipeline{*select, {absl::StrCat("source ", q.table())}};
  }

  absl::StatusOr<Transformation> Step(const Query& q, const TableDomain& domain,
                                      const Metric& metric) {
    switch (q.kind()) {
      case Query::Kind::kFilter:
        return MakeFilter(domain, metric, q.predicate());
      case Query::Kind::kMap:
        return MakeMap(domain, metric, MapOutputs(q, domain.schema()));
      case Query::Kind::kFlatMap:
        return FlatMap(q.flat_map(), domain, metric);
      case Query::Kind::kJoinPublic: {
        auto it = catalog_.public_tables.find(q.table());
        if (it == catalog_.public_tables.end()) {
          return absl::InvalidArgumentError(
              absl::StrCat("unknown public table '", q.table(), "'"));
        }
        return MakePublicJoin(domain, metric, it->second, q.keys());
      }
      case Query::Kind::kTruncateById:
        if (metric.kind() != Metric::Kind::kAddRemoveIds) {
          return absl::FailedPreconditionError(
              "UnitMismatch: TruncateById applies only to rows protected by "
              "an add-remove-id unit");
        }
        return MakeTruncateById(domain, metric.id_column(), q.bound());
      default:
        return absl::InternalError("unexpected query node");
    }
  }

  static std::vector<NamedExpr> MapOutputs(const Query& q,
                                           const Schema& schema) {
    std::vector<NamedExpr> outputs;
    std::vector<NamedExpr> extra = q.columns();
    if (q.keep_existing()) {
      for (const Column& c : schema.columns()) {
        auto it = std::find_if(extra.begin(), extra.end(),
                               [&](const NamedExpr& e) { return e.name == c.name; });
        if (it == extra.end()) {
          outputs.push_back({c.name, Expr::Column(c.name)});
        } else {
          outputs.push_back(*it);
          extra.erase(it);
        }
      }
    }
    for (NamedExpr& e : extra) outputs.push_back(std::move(e));
    return outputs;
  }

  static absl::StatusOr<Transformation> FlatMap(const FlatMapSpec& spec,
                                                const TableDomain& domain,
                                                const Metric& metric) {
    if (spec.is_split()) {
      absl::StatusOr<size_t> index = domain.schema().Require(spec.split_column);
      if (!index.ok()) return index.status();
      if (domain.schema().column(*index).type != ColumnType::kText) {
        return absl::InvalidArgumentError(absl::StrCat(
            "TypeError: split column '", spec.split_column, "' is not text"));
      }
      if (spec.delimiter.empty()) {
        return absl::InvalidArgumentError("TypeError: empty split delimiter");
      }
      size_t col = *index;
      std::string delimiter = spec.delimiter;
      return MakeFlatMap(
          domain, metric, Column{spec.new_column, ColumnType::kText},
          [col, delimiter](const Row& row) {
            std::vector<Value> out;
            for (absl::string_view piece : absl::StrSplit(
                     std::get<std::string>(row[col]), delimiter)) {
              if (!piece.empty()) out.emplace_back(std::string(piece));
            }
            return out;
          },
          spec.max_rows);
    }
    if (spec.values.empty()) {
      return absl::InvalidArgumentError(
          "TypeError: FlatMap needs a split column or value expressions");
    }
    std::vector<BoundExpr> exprs;
    for (const Expr& e : spec.values) {
      absl::StatusOr<BoundExpr> bound = BoundExpr::Bind(e, domain.schema());
      if (!bound.ok()) return bound.status();
      if (!exprs.empty() && bound->type() != exprs[0].type()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "TypeError: FlatMap values mix ", ExprTypeName(exprs[0].type()),
            " and ", ExprTypeName(bound->type())));
      }
      exprs.push_back(*std::move(bound));
    }
    absl::StatusOr<ColumnType> type = ColumnTypeFor(exprs[0].type());
    if (!type.ok()) return type.status();
    return MakeFlatMap(
        domain, metric, Column{spec.new_column, *type},
        [exprs](const Row& row) {
          std::vector<Value> out;
          out.reserve(exprs.size());
          for (const BoundExpr& e : exprs) out.push_back(e.EvaluateValue(row));
          return out;
        },
        spec.max_rows);
  }

  // Both sides start from the session input; their outputs are paired into
  // a tuple and joined.
  absl::StatusOr<Pipeline> PrivateJoin(const Query& q) {
    absl::StatusOr<Pipeline> left = Relational(q.input());
    if (!left.ok()) return left.status();
    absl::StatusOr<Pipeline> right = Relational(q.other());
    if (!right.ok()) return right.status();
    for (const Pipeline* side : {&*left, &*right}) {
      if (side->transformation.output_metric().kind() !=
          Metric::Kind::kSymmetricDifference) {
        return absl::FailedPreconditionError(
            "UnboundedSensitivity: both inputs of JoinPrivate must be "
            "row-bounded; add TruncateById to each side under an "
            "add-remove-id unit");
      }
    }
    absl::StatusOr<Transformation> both =
        MakeTupleOf({left->transformation, right->transformation});
    if (!both.ok()) return Annotate(both.status(), "JoinPrivate");
    absl::StatusOr<Transformation> join = MakePrivateJoin(
        left->transformation.output_domain().table(),
        right->transformation.output_domain().table(), q.keys(),
        q.left_bound(), q.right_bound());
    if (!join.ok()) return Annotate(join.status(), "JoinPrivate");
    Pipeline paired{*both, left->stages};
    for (const std::string& stage : right->stages) {
      paired.stages.push_back(absl::StrCat("(right) ", stage));
    }
    return Append(std::move(paired), *join);
  }

 private:
  const Catalog& catalog_;
};

// Coerces integer keys for float64 key columns; anything else is left for
// ComposePerGroup to reject.
std::vector<Row> CoerceKeys(const KeySet& keys, const Schema& schema) {
  std::vector<Row> out = keys.tuples();
  for (size_t j = 0; j < keys.columns().size(); ++j) {
    std::optional<size_t> index = schema.IndexOf(keys.columns()[j]);
    if (!index || schema.column(*index).type != ColumnType::kFloat64) continue;
    for (Row& row : out) {
      if (const auto* i = std::get_if<int64_t>(&row[j])) {
        row[j] = static_cast<double>(*i);
      }
    }
  }
  return out;
}

absl::StatusOr<Measurement> MakeAggregate(const AggSpec& agg,
                                          const TableDomain& domain,
                                          Measure measure,
                                          const ExtRational& unit_cost) {
  if (agg.kind == AggSpec::Kind::kQuantile) {
    if (measure != Measure::kPureDp) {
      return absl::FailedPreconditionError(
          "UnsupportedMeasure: quantiles are only available under pure DP");
    }
    return MakeQuantile(domain, agg.column, agg.q, agg.low, agg.high, agg.bins,
                        unit_cost);
  }
  absl::StatusOr<NoiseSpec> noise = measure == Measure::kPureDp
                                        ? NoiseSpec::Geometric(unit_cost)
                                        : NoiseSpec::DiscreteGaussian(unit_cost);
  if (!noise.ok()) return noise.status();
  switch (agg.kind) {
    case AggSpec::Kind::kCount:
      return MakeCount(domain, *noise);
    case AggSpec::Kind::kSum:
      return MakeSum(domain, agg.column, agg.low, agg.high, agg.granularity,
                     *noise);
    case AggSpec::Kind::kAverage:
      return MakeAverage(domain, agg.column, agg.low, agg.high,
                         agg.granularity, *noise);
    case AggSpec::Kind::kQuantile:
      break;
  }
  return absl::InternalError("unexpected aggregation");
}

}  // namespace

absl::StatusOr<CompiledQuery> Compile(const Query& query,
                                      const Catalog& catalog,
                                      const ExtRational& spend) {
  if (query.kind() != Query::Kind::kAgg) {
    return TypeCheckError(
        absl::StrCat("a query must end in an aggregation: ", query.ToString()));
  }
  const AggSpec& agg = query.agg();
  const Query* relational = &query.input();
  const KeySet* keys = nullptr;
  if (relational->kind() == Query::Kind::kGroupBy) {
    keys = &relational->keyset();
    relational = &relational->input();
  }
  Compiler compiler(catalog);
  absl::StatusOr<Pipeline> pipeline = compiler.Relational(*relational);
  if (!pipeline.ok()) return pipeline.status();
  Transformation t = pipeline->transformation;
  if (t.output_metric().kind() != Metric::Kind::kSymmetricDifference) {
    return absl::FailedPreconditionError(absl::StrCat(
        "UnboundedSensitivity: rows protected by ", t.output_metric().ToString(),
        " reach the ", agg.Name(),
        " without a row bound; add TruncateById before aggregating"));
  }
  if (!t.stability().is_linear()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "NonLinearPath: stability ", t.stability().ToString(),
        " is not linear"));
  }

  // Privacy at the unit distance d is f(c d), with f linear(cost) or
  // quadratic(cost); solve f(c d) = spend.
  ExtRational slope = t.stability().coefficient();
  ExtRational reach = slope * catalog.unit.distance();
  ExtRational cost;
  if (reach.is_zero()) {
    cost = ExtRational::Infinity();
  } else if (catalog.measure == Measure::kPureDp) {
    cost = spend / reach;
  } else {
    cost = spend / (reach * reach);
  }
  if (cost.is_zero()) {
    return absl::InvalidArgumentError(
        "NonPositiveSpend: this query needs a positive spend");
  }

  const TableDomain domain = t.output_domain().table();
  absl::StatusOr<Measurement> measurement =
      MakeAggregate(agg, domain, catalog.measure, cost);
  if (!measurement.ok()) return Annotate(measurement.status(), agg.Name());
  std::vector<std::string> stages = pipeline->stages;
  if (keys != nullptr) {
    absl::StatusOr<Transformation> partition =
        MakePartitionByKeys(domain, keys->columns());
    if (!partition.ok()) return Annotate(partition.status(), "GroupBy");
    absl::StatusOr<Transformation> chained = Chain(t, *partition);
    if (!chained.ok()) return chained.status();
    t = *std::move(chained);
    stages.push_back(partition->name());
    measurement = ComposePerGroup(keys->columns(),
                                  CoerceKeys(*keys, domain.schema()),
                                  *measurement, agg.Name());
    if (!measurement.ok()) return Annotate(measurement.status(), "GroupBy");
  }
  stages.push_back(measurement->name());
  absl::StatusOr<Measurement> whole = ChainTM(t, *measurement);
  if (!whole.ok()) return whole.status();
  return CompiledQuery{*std::move(whole), std::move(stages), agg.Name(), slope,
                       cost};
}

DatasetDomain Catalog::InputDomain() const {
  std::vector<TableDomain> domains;
  for (const auto& [name, domain] : private_tables) domains.push_back(domain);
  return DatasetDomain::Tuple(std::move(domains));
}

Metric Catalog::InputMetric() const {
  if (unit.is_id()) return Metric::AddRemoveIds(unit.id_column());
  return Metric::TableTuple(std::vector<Metric>(
      private_tables.size(), Metric::SymmetricDifference()));
}

}  // namespace dpkit
