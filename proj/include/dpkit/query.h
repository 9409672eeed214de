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

// Analyst-facing query trees and the privacy parameters that go with them.
//
//   Query q = Query::Source("people")
//                 .Filter("age > 40")
//                 .GroupBy(zips)
//                 .Average("income", 0, 200000);
//
// Builders never fail: a malformed expression is kept as an invalid node and
// reported when the query is compiled.

#ifndef DPKIT_QUERY_H_
#define DPKIT_QUERY_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpkit/expression.h"
#include "dpkit/metric.h"
#include "dpkit/rational.h"
#include "dpkit/table.h"
#include "dpkit/transformation.h"
#include "dpkit/value.h"

namespace dpkit {

struct PrivacyBudget {
  Measure measure = Measure::kPureDp;
  ExtRational amount;

  std::string ToString() const;
  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;
};

// Who is protected. AddMaxRows(k): any k rows may be added or removed, and
// guarantees are quoted at SymmetricDifference distance k. AddRemoveId(c):
// all rows sharing a value of column c, across every private table, may be
// added, removed or changed, and guarantees are quoted at AddRemoveIds
// distance 1.
class PrivacyUnit {
 public:
  // Requires k >= 1.
  static PrivacyUnit AddMaxRows(int64_t k);
  static PrivacyUnit AddRemoveId(std::string id_column);
  // "add-max-rows:<k>" or "add-remove-id:<column>".
  static absl::StatusOr<PrivacyUnit> Parse(absl::string_view text);

  bool is_id() const { return !id_column_.empty(); }
  int64_t max_rows() const { return max_rows_; }
  const std::string& id_column() const { return id_column_; }
  // k for AddMaxRows(k), 1 for AddRemoveId.
  ExtRational distance() const;
  std::string ToString() const;

 private:
  PrivacyUnit(int64_t max_rows, std::string id_column)
      : max_rows_(max_rows), id_column_(std::move(id_column)) {}
  int64_t max_rows_;
  std::string id_column_;
};

// Explicit group-by keys: column names plus the distinct key tuples, kept
// sorted.
class KeySet {
 public:
  // "TypeMismatch" if a tuple's arity differs from columns.size() or two
  // tuples disagree on a column's type. Duplicates are stored once.
  static absl::StatusOr<KeySet> FromTuples(std::vector<std::string> columns,
                                           std::vector<Row> tuples);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<Row>& tuples() const { return tuples_; }
  size_t size() const { return tuples_.size(); }

 private:
  KeySet(std::vector<std::string> columns, std::vector<Row> tuples)
      : columns_(std::move(columns)), tuples_(std::move(tuples)) {}
  std::vector<std::string> columns_;
  std::vector<Row> tuples_;
};

absl::StatusOr<KeySet> KeysetFromTuples(std::vector<std::string> columns,
                                        std::vector<Row> tuples);

struct AggSpec {
  enum class Kind { kCount, kSum, kAverage, kQuantile };
  Kind kind = Kind::kCount;
  std::string column;
  Rational low, high;
  Rational granularity = Rational(1, 100);
  Rational q;
  int64_t bins = 0;

  // "count", "sum", "average" or "quantile"; also the result column name.
  std::string Name() const;
};

// Produces the new column of a FlatMap: either the pieces of a text column
// split on a delimiter, or the values of a list of expressions.
struct FlatMapSpec {
  std::string new_column;
  std::string split_column;
  std::string delimiter;
  std::vector<Expr> values;
  int64_t max_rows = 1;

  bool is_split() const { return !split_column.empty(); }
};

class Query {
 public:
  enum class Kind {
    kSource,
    kFilter,
    kMap,
    kFlatMap,
    kJoinPublic,
    kJoinPrivate,
    kTruncateById,
    kGroupBy,
    kAgg,
  };

  static Query Source(std::string table);

  Query Filter(const Expr& predicate) const;
  Query Filter(absl::string_view predicate) const;
  Query Filter(const char* predicate) const;
  // New columns computed per row. With keep_existing, the input columns are
  // kept and a new column with an existing name replaces it in place.
  Query Map(std::vector<NamedExpr> columns, bool keep_existing = true) const;
  Query Map(const std::vector<std::pair<std::string, std::string>>& columns,
            bool keep_existing = true) const;
  Query FlatMap(FlatMapSpec spec) const;
  Query JoinPublic(std::string table, std::vector<std::string> keys) const;
  Query JoinPrivate(const Query& other, std::vector<std::string> keys,
                    int64_t left_bound, int64_t right_bound) const;
  Query TruncateById(int64_t bound) const;
  Query GroupBy(KeySet keys) const;

  Query Agg(AggSpec spec) const;
  Query Count() const;
  Query Sum(std::string column, Rational low, Rational high) const;
  Query Average(std::string column, Rational low, Rational high) const;
  Query Quantile(std::string column, Rational q, Rational low, Rational high,
                 int64_t bins) const;

  Kind kind() const;
  // Requires kind() != kSource.
  const Query& input() const;
  // kSource and kJoinPublic: the table name.
  const std::string& table() const;
  const Expr& predicate() const;
  const std::vector<NamedExpr>& columns() const;
  bool keep_existing() const;
  const FlatMapSpec& flat_map() const;
  const std::vector<std::string>& keys() const;
  // kJoinPrivate: the right-hand query.
  const Query& other() const;
  int64_t left_bound() const;
  int64_t right_bound() const;
  // kTruncateById.
  int64_t bound() const;
  const KeySet& keyset() const;
  const AggSpec& agg() const;

  std::string ToString() const;

  struct Node;

 private:
  explicit Query(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  Query With(Kind kind) const;

  std::shared_ptr<const Node> node_;
};

}  // namespace dpkit

#endif  // DPKIT_QUERY_H_
