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

#include "dpkit/query.h"

#include <algorithm>
#include <charconv>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpkit {

struct Query::Node {
  Kind kind = Kind::kSource;
  std::optional<Query> input;
  std::string table;
  Expr predicate = Expr(true);
  std::vector<NamedExpr> columns;
  bool keep_existing = true;
  FlatMapSpec flat_map;
  std::vector<std::string> keys;
  std::optional<Query> other;
  int64_t left_bound = 0;
  int64_t right_bound = 0;
  int64_t bound = 0;
  std::optional<KeySet> keyset;
  AggSpec agg;
};

std::string PrivacyBudget::ToString() const {
  return absl::StrCat(MeasureName(measure), ":", amount.ToString());
}

PrivacyUnit PrivacyUnit::AddMaxRows(int64_t k) { return PrivacyUnit(k, ""); }

PrivacyUnit PrivacyUnit::AddRemoveId(std::string id_column) {
  return PrivacyUnit(1, std::move(id_column));
}

absl::StatusOr<PrivacyUnit> PrivacyUnit::Parse(absl::string_view text) {
  constexpr absl::string_view kRows = "add-max-rows:";
  constexpr absl::string_view kId = "add-remove-id:";
  if (absl::StartsWith(text, kRows)) {
    absl::string_view digits = text.substr(kRows.size());
    int64_t k = 0;
    auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || end != digits.data() + digits.size() || k < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "BadUnit: '", text, "' needs a positive integer row count"));
    }
    return AddMaxRows(k);
  }
  if (absl::StartsWith(text, kId) && text.size() > kId.size()) {
    return AddRemoveId(std::string(text.substr(kId.size())));
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "BadUnit: '", text,
      "' is not add-max-rows:<k> or add-remove-id:<column>"));
}

ExtRational PrivacyUnit::distance() const {
  return is_id() ? ExtRational(1) : ExtRational(max_rows_);
}

std::string PrivacyUnit::ToString() const {
  return is_id() ? absl::StrCat("add-remove-id:", id_column_)
                 : absl::StrCat("add-max-rows:", max_rows_);
}

absl::StatusOr<KeySet> KeySet::FromTuples(std::vector<std::string> columns,
                                          std::vector<Row> tuples) {
  if (columns.empty()) {
    return absl::InvalidArgumentError("TypeMismatch: a key set needs columns");
  }
  for (const Row& t : tuples) {
    if (t.size() != columns.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "TypeMismatch: key tuple of ", t.size(), " values for ",
          columns.size(), " columns"));
    }
    for (size_t j = 0; j < t.size(); ++j) {
      if (TypeOf(t[j]) != TypeOf(tuples.front()[j])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "TypeMismatch: key column '", columns[j], "' mixes ",
            ColumnTypeName(TypeOf(tuples.front()[j])), " and ",
            ColumnTypeName(TypeOf(t[j]))));
      }
    }
  }
  std::sort(tuples.begin(), tuples.end(), RowLess);
  tuples.erase(std::unique(tuples.begin(), tuples.end(),
                           [](const Row& a, const Row& b) {
                             return CompareRows(a, b) == 0;
                           }),
               tuples.end());
  return KeySet(std::move(columns), std::move(tuples));
}

absl::StatusOr<KeySet> KeysetFromTuples(std::vector<std::string> columns,
                                        std::vector<Row> tuples) {
  return KeySet::FromTuples(std::move(columns), std::move(tuples));
}

std::string AggSpec::Name() const {
  switch (kind) {
    case Kind::kCount:
      return "count";
    case Kind::kSum:
      return "sum";
    case Kind::kAverage:
      return "average";
    case Kind::kQuantile:
      return "quantile";
  }
  return "";
}

Query Query::Source(std::string table) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSource;
  node->table = std::move(table);
  return Query(std::move(node));
}

Query Query::With(Kind kind) const {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->input = *this;
  return Query(std::move(node));
}

namespace {

Expr ParseOrInvalid(absl::string_view text) {
  absl::StatusOr<Expr> e = ParseExpr(text);
  if (!e.ok()) return Expr::Invalid(std::string(e.status().message()));
  return *std::move(e);
}

}  // namespace

Query Query::Filter(const Expr& predicate) const {
  auto node = std::make_shared<Node>(*With(Kind::kFilter).node_);
  node->predicate = predicate;
  return Query(std::move(node));
}

Query Query::Filter(absl::string_view predicate) const {
  return Filter(ParseOrInvalid(predicate));
}

Query Query::Filter(const char* predicate) const {
  return Filter(absl::string_view(predicate));
}

Query Query::Map(std::vector<NamedExpr> columns, bool keep_existing) const {
  auto node = std::make_shared<Node>(*With(Kind::kMap).node_);
  node->columns = std::move(columns);
  node->keep_existing = keep_existing;
  return Query(std::move(node));
}

Query Query::Map(
    const std::vector<std::pair<std::string, std::string>>& columns,
    bool keep_existing) const {
  std::vector<NamedExpr> parsed;
  for (const auto& [name, text] : columns) {
    parsed.push_back({name, ParseOrInvalid(text)});
  }
  return Map(std::move(parsed), keep_existing);
}

Query Query::FlatMap(FlatMapSpec spec) const {
  auto node = std::make_shared<Node>(*With(Kind::kFlatMap).node_);
  node->flat_map = std::move(spec);
  return Query(std::move(node));
}

Query Query::JoinPublic(std::string table,
                        std::vector<std::string> keys) const {
  auto node = std::make_shared<Node>(*With(Kind::kJoinPublic).node_);
  node->table = std::move(table);
  node->keys = std::move(keys);
  return Query(std::move(node));
}

Query Query::JoinPrivate(const Query& other, std::vector<std::string> keys,
                         int64_t left_bound, int64_t right_bound) const {
  auto node = std::make_shared<Node>(*With(Kind::kJoinPrivate).node_);
  node->other = other;
  node->keys = std::move(keys);
  node->left_bound = left_bound;
  node->right_bound = right_bound;
  return Query(std::move(node));
}

Query Query::TruncateById(int64_t bound) const {
  auto node = std::make_shared<Node>(*With(Kind::kTruncateById).node_);
  node->bound = bound;
  return Query(std::move(node));
}

Query Query::GroupBy(KeySet keys) const {
  auto node = std::make_shared<Node>(*With(Kind::kGroupBy).node_);
  node->keyset = std::move(keys);
  return Query(std::move(node));
}

Query Query::Agg(AggSpec spec) const {
  auto node = std::make_shared<Node>(*With(Kind::kAgg).node_);
  node->agg = std::move(spec);
  return Query(std::move(node));
}

Query Query::Count() const { return Agg(AggSpec{}); }

Query Query::Sum(std::string column, Rational low, Rational high) const {
  AggSpec spec;
  spec.kind = AggSpec::Kind::kSum;
  spec.column = std::move(column);
  spec.low = std::move(low);
  spec.high = std::move(high);
  return Agg(std::move(spec));
}

Query Query::Average(std::string column, Rational low, Rational high) const {
  AggSpec spec;
  spec.kind = AggSpec::Kind::kAverage;
  spec.column = std::move(column);
  spec.low = std::move(low);
  spec.high = std::move(high);
  return Agg(std::move(spec));
}

Query Query::Quantile(std::string column, Rational q, Rational low,
                      Rational high, int64_t bins) const {
  AggSpec spec;
  spec.kind = AggSpec::Kind::kQuantile;
  spec.column = std::move(column);
  spec.q = std::move(q);
  spec.low = std::move(low);
  spec.high = std::move(high);
  spec.bins = bins;
  return Agg(std::move(spec));
}

Query::Kind Query::kind() const { return node_->kind; }
const Query& Query::input() const { return *node_->input; }
const std::string& Query::table() const { return node_->table; }
const Expr& Query::predicate() const { return node_->predicate; }
const std::vector<NamedExpr>& Query::columns() const { return node_->columns; }
bool Query::keep_existing() const { return node_->keep_existing; }
const FlatMapSpec& Query::flat_map() const { return node_->flat_map; }
const std::vector<std::string>& Query::keys() const { return node_->keys; }
const Query& Query::other() const { return *node_->other; }
int64_t Query::left_bound() const { return node_->left_bound; }
int64_t Query::right_bound() const { return node_->right_bound; }
int64_t Query::bound() const { return node_->bound; }
const KeySet& Query::keyset() const { return *node_->keyset; }
const AggSpec& Query::agg() const { return node_->agg; }

std::string Query::ToString() const {
  const Node& n = *node_;
  std::string head;
  switch (n.kind) {
    case Kind::kSource:
      return absl::StrCat("Source(", n.table, ")");
    case Kind::kFilter:
      head = absl::StrCat("Filter(", n.predicate.ToString(), ")");
      break;
    case Kind::kMap: {
      std::vector<std::string> parts;
      for (const NamedExpr& c : n.columns) {
        parts.push_back(absl::StrCat(c.name, "=", c.expr.ToString()));
      }
      head = absl::StrCat("Map(", absl::StrJoin(parts, ", "),
                          n.keep_existing ? "; keep" : "", ")");
      break;
    }
    case Kind::kFlatMap:
      head = absl::StrCat("FlatMap(", n.flat_map.new_column, ", k=",
                          n.flat_map.max_rows, ")");
      break;
    case Kind::kJoinPublic:
      head = absl::StrCat("JoinPublic(", n.table, " on ",
                          absl::StrJoin(n.keys, ","), ")");
      break;
    case Kind::kJoinPrivate:
      head = absl::StrCat("JoinPrivate(", n.other->ToString(), " on ",
                          absl::StrJoin(n.keys, ","), ", ", n.left_bound, ", ",
                          n.right_bound, ")");
      break;
    case Kind::kTruncateById:
      head = absl::StrCat("TruncateById(", n.bound, ")");
      break;
    case Kind::kGroupBy:
      head = absl::StrCat("GroupBy(", absl::StrJoin(n.keyset->columns(), ","),
                          " x", n.keyset->size(), ")");
      break;
    case Kind::kAgg:
      head = absl::StrCat("Agg(", n.agg.Name(),
                          n.agg.column.empty() ? "" : " ", n.agg.column, ")");
      break;
  }
  return absl::StrCat(n.input->ToString(), " . ", head);
}

}  // namespace dpkit
