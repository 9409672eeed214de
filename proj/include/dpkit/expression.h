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

// Row expressions used by filters and maps.
//
// The language is deliberately small so that every expression is total and
// deterministic: column references, literals, arithmetic (+ - * /) on
// numbers, comparisons, and boolean and/or/not. There are no user-defined
// functions.
//
// Evaluation rules:
//   - int64 (+, -, *) int64 is int64 with two's-complement wraparound.
//   - Any arithmetic involving a float64, and every division, is float64.
//   - Division by zero yields 0.0.
//   - Non-finite float results are saturated: NaN becomes 0.0 and +/-inf
//     become the largest finite magnitude.
//   - Comparisons mix int64 and float64 freely; text compares with text by
//     byte order; bool supports only = and !=.
//
// Text syntax (ParseExpr):
//   age > 40 and zip = '10001'
//   (income - 1000) / 12 >= 2.5e3
//   not (`first name` = "Ann")
// Identifiers may be quoted with backticks. String literals use single or
// double quotes; a doubled quote inside escapes it.

#ifndef DPKIT_EXPRESSION_H_
#define DPKIT_EXPRESSION_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"
#include "dpkit/table.h"

namespace dpkit {

enum class ExprType { kInt64, kFloat64, kText, kBool };

using ExprValue = std::variant<int64_t, double, std::string, bool>;

absl::string_view ExprTypeName(ExprType type);

class Expr {
 public:
  enum class Kind { kColumn, kLiteral, kUnary, kBinary, kInvalid };
  enum class Op {
    kAdd, kSub, kMul, kDiv,
    kLt, kLe, kEq, kNe, kGe, kGt,
    kAnd, kOr, kNot, kNeg,
  };

  // Literal conversions so that Col("age") > 40 reads naturally.
  Expr(int64_t value);       // NOLINT
  Expr(int value);           // NOLINT
  Expr(double value);        // NOLINT
  Expr(bool value);          // NOLINT
  Expr(const char* value);   // NOLINT
  Expr(std::string value);   // NOLINT

  static Expr Column(std::string name);
  static Expr Literal(ExprValue value);
  static Expr Unary(Op op, Expr operand);
  static Expr Binary(Op op, Expr lhs, Expr rhs);
  // Placeholder for an expression that failed to parse; binding it reports
  // `message`.
  static Expr Invalid(std::string message);

  Kind kind() const;
  Op op() const;
  const std::string& column_name() const;
  const ExprValue& literal() const;
  const std::string& error() const;
  const std::vector<Expr>& operands() const;

  std::string ToString() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr Col(std::string name);

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator<(Expr a, Expr b);
Expr operator<=(Expr a, Expr b);
Expr operator==(Expr a, Expr b);
Expr operator!=(Expr a, Expr b);
Expr operator>=(Expr a, Expr b);
Expr operator>(Expr a, Expr b);
Expr operator&&(Expr a, Expr b);
Expr operator||(Expr a, Expr b);
Expr operator!(Expr a);

absl::StatusOr<Expr> ParseExpr(absl::string_view text);

// An expression resolved against a schema: column references are bound to
// positions and every node is type-checked.
class BoundExpr {
 public:
  // Errors: "UnknownColumn: ..." or "TypeError: ..." (InvalidArgument).
  static absl::StatusOr<BoundExpr> Bind(const Expr& expr, const Schema& schema);

  ExprType type() const;
  ExprValue Evaluate(const Row& row) const;
  // Requires type() == kBool.
  bool EvaluatePredicate(const Row& row) const;
  // Requires type() != kBool. Converts the result into a cell value.
  Value EvaluateValue(const Row& row) const;

 // Opaque evaluation tree.
  struct Node;

 private:
  explicit BoundExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Column type produced by an expression of type `type`, or TypeError for
// bool (there is no boolean column type).
absl::StatusOr<ColumnType> ColumnTypeFor(ExprType type);

}  // namespace dpkit

#endif  // DPKIT_EXPRESSION_H_
