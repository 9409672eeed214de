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


#include "dpkit/expression.h"

#include <limits>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpkit {
namespace {

using ::testing::HasSubstr;

Schema People() {
  return *Schema::Create({{"age", ColumnType::kInt64},
                          {"zip", ColumnType::kText},
                          {"income", ColumnType::kFloat64}});
}

Row Person(int64_t age, std::string zip, double income) {
  return {age, std::move(zip), income};
}

ExprValue Eval(absl::string_view text, const Row& row) {
  absl::StatusOr<Expr> e = ParseExpr(text);
  EXPECT_TRUE(e.ok()) << e.status();
  absl::StatusOr<BoundExpr> b = BoundExpr::Bind(*e, People());
  EXPECT_TRUE(b.ok()) << b.status();
  return b->Evaluate(row);
}

TEST(ExpressionTest, ParsesAndEvaluatesPredicates) {
  Row r = Person(41, "10001", 50000.0);
  EXPECT_EQ(Eval("age > 40", r), ExprValue(true));
  EXPECT_EQ(Eval("age > 40 and zip = '10002'", r), ExprValue(false));
  EXPECT_EQ(Eval("age > 40 or zip = '10002'", r), ExprValue(true));
  EXPECT_EQ(Eval("not (age <= 40)", r), ExprValue(true));
  EXPECT_EQ(Eval("zip != \"10001\"", r), ExprValue(false));
  EXPECT_EQ(Eval("age >= 41 && age < 42", r), ExprValue(true));
  EXPECT_EQ(Eval("income / 2 >= 2.5e4", r), ExprValue(true));
}

TEST(ExpressionTest, ArithmeticTypes) {
  Row r = Person(41, "10001", 50000.0);
  EXPECT_EQ(Eval("age + 1", r), ExprValue(int64_t{42}));
  EXPECT_EQ(Eval("age * 2 - 2", r), ExprValue(int64_t{80}));
  EXPECT_EQ(Eval("age / 2", r), ExprValue(20.5));
  EXPECT_EQ(Eval("age + 0.5", r), ExprValue(41.5));
  EXPECT_EQ(Eval("-age", r), ExprValue(int64_t{-41}));
  EXPECT_EQ(Eval("(income - 1000) / 7", r), ExprValue(7000.0));
}

TEST(ExpressionTest, TotalArithmetic) {
  Row r = Person(0, "x", 0.0);
  EXPECT_EQ(Eval("age / 0", r), ExprValue(0.0));
  EXPECT_EQ(Eval("income / age", r), ExprValue(0.0));
  Row big = Person(1, "x", 1e308);
  EXPECT_EQ(Eval("income * 10", big),
            ExprValue(std::numeric_limits<double>::max()));
  EXPECT_EQ(Eval("-income * 10", big),
            ExprValue(-std::numeric_limits<double>::max()));
}

TEST(ExpressionTest, BuilderMatchesParser) {
  Expr built = Col("age") > 40 && Col("zip") == "10001";
  absl::StatusOr<BoundExpr> b = BoundExpr::Bind(built, People());
  ASSERT_TRUE(b.ok());
  EXPECT_TRUE(b->EvaluatePredicate(Person(41, "10001", 0)));
  EXPECT_FALSE(b->EvaluatePredicate(Person(41, "10002", 0)));
  EXPECT_FALSE(b->EvaluatePredicate(Person(40, "10001", 0)));
}

TEST(ExpressionTest, QuotedIdentifiers) {
  Schema s = *Schema::Create({{"first name", ColumnType::kText}});
  absl::StatusOr<Expr> e = ParseExpr("`first name` = 'Ann''s'");
  ASSERT_TRUE(e.ok()) << e.status();
  absl::StatusOr<BoundExpr> b = BoundExpr::Bind(*e, s);
  ASSERT_TRUE(b.ok());
  EXPECT_TRUE(b->EvaluatePredicate({std::string("Ann's")}));
}

TEST(ExpressionTest, TypeErrors) {
  auto bind_error = [](absl::string_view text) {
    absl::StatusOr<Expr> e = ParseExpr(text);
    EXPECT_TRUE(e.ok()) << text;
    return std::string(BoundExpr::Bind(*e, People()).status().message());
  };
  EXPECT_THAT(bind_error("zip + 1"), HasSubstr("TypeError"));
  EXPECT_THAT(bind_error("zip > 3"), HasSubstr("TypeError"));
  EXPECT_THAT(bind_error("age and true"), HasSubstr("TypeError"));
  EXPECT_THAT(bind_error("not age"), HasSubstr("TypeError"));
  EXPECT_THAT(bind_error("height > 3"), HasSubstr("UnknownColumn"));
}

TEST(ExpressionTest, ParseErrors) {
  EXPECT_FALSE(ParseExpr("age >").ok());
  EXPECT_FALSE(ParseExpr("(age > 1").ok());
  EXPECT_FALSE(ParseExpr("'unterminated").ok());
  EXPECT_FALSE(ParseExpr("age > 1 extra").ok());
  EXPECT_FALSE(ParseExpr("").ok());
}

TEST(ExpressionTest, InvalidExprReportsAtBind) {
  absl::StatusOr<BoundExpr> b =
      BoundExpr::Bind(Expr::Invalid("bad text"), People());
  EXPECT_EQ(b.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(b.status().message(), HasSubstr("bad text"));
}

TEST(ExpressionTest, ColumnTypes) {
  EXPECT_EQ(*ColumnTypeFor(ExprType::kInt64), ColumnType::kInt64);
  EXPECT_EQ(*ColumnTypeFor(ExprType::kText), ColumnType::kText);
  EXPECT_FALSE(ColumnTypeFor(ExprType::kBool).ok());
}

TEST(ExpressionTest, ToStringReparsesToSameMeaning) {
  std::mt19937_64 rng(21);
  const char* texts[] = {"age > 40 and zip = '10001'", "-(age - 3) * 2",
                         "not (income / 4 < age or zip <> 'a')"};
  for (const char* text : texts) {
    Expr e = *ParseExpr(text);
    absl::StatusOr<Expr> again = ParseExpr(e.ToString());
    ASSERT_TRUE(again.ok()) << e.ToString();
    BoundExpr a = *BoundExpr::Bind(e, People());
    BoundExpr b = *BoundExpr::Bind(*again, People());
    for (int i = 0; i < 100; ++i) {
      Row r = Person(static_cast<int64_t>(rng() % 100) - 20,
                     rng() % 2 ? "10001" : "a",
                     static_cast<double>(rng() % 1000));
      EXPECT_EQ(a.Evaluate(r), b.Evaluate(r)) << text;
    }
  }
}

}  // namespace
}  // namespace dpkit
