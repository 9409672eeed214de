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

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpkit {
namespace {

using ::testing::HasSubstr;

constexpr int64_t kPairs = 3000;

Schema People() {
  return *Schema::Create({{"user", ColumnType::kText},
                          {"age", ColumnType::kInt64},
                          {"zip", ColumnType::kText}});
}

const testing::ValuePools& PeoplePools() {
  static const testing::ValuePools* pools = new testing::ValuePools{
      {std::string("u1"), std::string("u2"), std::string("u3")},
      {int64_t{39}, int64_t{41}, int64_t{60}},
      {std::string("10001"), std::string("10002")}};
  return *pools;
}

TableDomain PeopleDomain(std::optional<std::string> id = std::nullopt) {
  return *TableDomain::Create(People(), std::move(id));
}

Row P(const char* user, int64_t age, const char* zip) {
  return {std::string(user), age, std::string(zip)};
}

Table PeopleTable(std::vector<Row> rows) {
  return *Table::Create(People(), std::move(rows));
}

Table Out(const Transformation& t, const Dataset& in) {
  absl::StatusOr<Dataset> out = t.Apply(in);
  EXPECT_TRUE(out.ok()) << out.status();
  return out.ok() ? out->table() : Table::Empty(People());
}

std::function<std::pair<Dataset, Dataset>()> PeoplePairs(
    std::mt19937_64& rng) {
  return [&rng] {
    auto [x, y] = testing::RandomPair(People(), PeoplePools(), 6, rng);
    return std::pair<Dataset, Dataset>(x, y);
  };
}

void ExpectStable(const absl::StatusOr<Transformation>& t,
                  const std::function<std::pair<Dataset, Dataset>()>& draw) {
  ASSERT_TRUE(t.ok()) << t.status();
  testing::StabilityReport r = testing::CheckStability(*t, kPairs, draw);
  EXPECT_EQ(r.violations, 0) << r.first;
}

// Text values of `column` split on ';'.
RowExpansion SplitTags(size_t column) {
  return [column](const Row& row) {
    std::vector<Value> out;
    std::string text = std::get<std::string>(row[column]);
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find(';', start);
      if (end == std::string::npos) end = text.size();
      out.push_back(text.substr(start, end - start));
      start = end + 1;
    }
    return out;
  };
}

TEST(FilterTest, TruePredicateIsIdentity) {
  Transformation f = *MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                                 Expr(true));
  Table t = PeopleTable({P("u1", 39, "10001"), P("u2", 41, "10002")});
  EXPECT_TRUE(*TableEqual(Out(f, t), t));
  EXPECT_EQ(f.stability().coefficient(), ExtRational(1));
}

TEST(FilterTest, KeepsOlderThanForty) {
  Transformation f = *MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                                 Col("age") > 40);
  Table out = Out(f, PeopleTable({P("u1", 41, "10001"), P("u2", 39, "10001")}));
  EXPECT_TRUE(*TableEqual(out, PeopleTable({P("u1", 41, "10001")})));
}

TEST(FilterTest, Errors) {
  EXPECT_THAT(MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                         Col("height") > 1)
                  .status()
                  .message(),
              HasSubstr("UnknownColumn"));
  EXPECT_THAT(MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                         Col("age") + 1)
                  .status()
                  .message(),
              HasSubstr("TypeError"));
  // The domain does not mark `user` as the ID column.
  EXPECT_THAT(MakeFilter(PeopleDomain(), Metric::AddRemoveIds("user"),
                         Expr(true))
                  .status()
                  .message(),
              HasSubstr("MetricMismatch"));
}

TEST(FilterTest, Stable) {
  std::mt19937_64 rng(1);
  ExpectStable(MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                          Col("age") > 40),
               PeoplePairs(rng));
  ExpectStable(MakeFilter(PeopleDomain("user"), Metric::AddRemoveIds("user"),
                          Col("zip") == "10001"),
               PeoplePairs(rng));
}

TEST(MapTest, IdentityProjection) {
  Transformation m = *MakeMap(
      PeopleDomain(), Metric::SymmetricDifference(),
      {{"user", Col("user")}, {"age", Col("age")}, {"zip", Col("zip")}});
  Table t = PeopleTable({P("u1", 39, "10001"), P("u1", 39, "10001")});
  EXPECT_TRUE(*TableEqual(Out(m, t), t));
}

TEST(MapTest, DerivedColumn) {
  Schema s = *Schema::Create({{"col1", ColumnType::kInt64}});
  TableDomain d = *TableDomain::Create(s);
  Transformation m =
      *MakeMap(d, Metric::SymmetricDifference(),
               {{"col1", Col("col1")}, {"col2", Col("col1") + 1}});
  absl::StatusOr<Dataset> out =
      m.Apply(*Table::Create(s, {{int64_t{1}}, {int64_t{2}}}));
  ASSERT_TRUE(out.ok());
  Schema expected = *Schema::Create(
      {{"col1", ColumnType::kInt64}, {"col2", ColumnType::kInt64}});
  EXPECT_EQ(out->table().schema(), expected);
  EXPECT_TRUE(*TableEqual(
      out->table(), *Table::Create(expected, {{int64_t{1}, int64_t{2}},
                                              {int64_t{2}, int64_t{3}}})));
}

TEST(MapTest, IdColumnMustSurvive) {
  EXPECT_THAT(MakeMap(PeopleDomain("user"), Metric::AddRemoveIds("user"),
                      {{"age", Col("age")}})
                  .status()
                  .message(),
              HasSubstr("IdColumnDropped"));
  EXPECT_THAT(MakeMap(PeopleDomain("user"), Metric::AddRemoveIds("user"),
                      {{"user", Col("zip")}})
                  .status()
                  .message(),
              HasSubstr("IdColumnDropped"));
  absl::StatusOr<Transformation> ok =
      MakeMap(PeopleDomain("user"), Metric::AddRemoveIds("user"),
              {{"user", Col("user")}, {"decade", Col("age") / 10}});
  ASSERT_TRUE(ok.ok()) << ok.status();
  EXPECT_EQ(ok->output_domain().table().id_column(), "user");
  EXPECT_EQ(ok->output_metric(), Metric::AddRemoveIds("user"));
}

TEST(MapTest, Errors) {
  EXPECT_THAT(MakeMap(PeopleDomain(), Metric::SymmetricDifference(),
                      {{"x", Col("nope")}})
                  .status()
                  .message(),
              HasSubstr("UnknownColumn"));
  // There is no boolean column type.
  EXPECT_FALSE(MakeMap(PeopleDomain(), Metric::SymmetricDifference(),
                       {{"old", Col("age") > 50}})
                   .ok());
}

TEST(MapTest, Stable) {
  std::mt19937_64 rng(2);
  ExpectStable(MakeMap(PeopleDomain(), Metric::SymmetricDifference(),
                       {{"decade", Col("age") / 10}, {"zip", Col("zip")}}),
               PeoplePairs(rng));
  ExpectStable(MakeMap(PeopleDomain("user"), Metric::AddRemoveIds("user"),
                       {{"user", Col("user")}, {"old", Col("age") * 0}}),
               PeoplePairs(rng));
}

TEST(FlatMapTest, SingletonBehavesAsIdentityMap) {
  Transformation f = *MakeFlatMap(
      PeopleDomain(), Metric::SymmetricDifference(),
      {"copy", ColumnType::kInt64},
      [](const Row& r) { return std::vector<Value>{r[1]}; }, 1);
  Table out = Out(f, PeopleTable({P("u1", 39, "10001"), P("u2", 41, "10001")}));
  EXPECT_EQ(out.size(), 2u);
  EXPECT_EQ(f.stability().coefficient(), ExtRational(1));
}

TEST(FlatMapTest, TruncatesToFirstK) {
  Schema s = *Schema::Create({{"tags", ColumnType::kText}});
  TableDomain d = *TableDomain::Create(s);
  Transformation f = *MakeFlatMap(d, Metric::SymmetricDifference(),
                                  {"tag", ColumnType::kText}, SplitTags(0), 3);
  absl::StatusOr<Dataset> out =
      f.Apply(*Table::Create(s, {{std::string("a;b;c;d;e")}}));
  ASSERT_TRUE(out.ok());
  ASSERT_EQ(out->table().size(), 3u);
  std::vector<std::string> tags;
  for (const Row& r : out->table().rows()) {
    tags.push_back(std::get<std::string>(r[1]));
  }
  std::sort(tags.begin(), tags.end());
  EXPECT_EQ(tags, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(f.stability().coefficient(), ExtRational(3));
}

TEST(FlatMapTest, Errors) {
  EXPECT_THAT(MakeFlatMap(PeopleDomain(), Metric::SymmetricDifference(),
                          {"x", ColumnType::kInt64},
                          [](const Row&) { return std::vector<Value>{}; }, 0)
                  .status()
                  .message(),
              HasSubstr("NonPositiveBound"));
  EXPECT_FALSE(MakeFlatMap(PeopleDomain(), Metric::SymmetricDifference(),
                           {"zip", ColumnType::kInt64},
                           [](const Row&) { return std::vector<Value>{}; }, 1)
                   .ok());
}

TEST(FlatMapTest, Stable) {
  std::mt19937_64 rng(3);
  auto expand = [](const Row& r) {
    std::vector<Value> out;
    for (int64_t i = 0; i < std::get<int64_t>(r[1]) % 5; ++i) out.push_back(i);
    return out;
  };
  ExpectStable(MakeFlatMap(PeopleDomain(), Metric::SymmetricDifference(),
                           {"i", ColumnType::kInt64}, expand, 3),
               PeoplePairs(rng));
  ExpectStable(MakeFlatMap(PeopleDomain("user"), Metric::AddRemoveIds("user"),
                           {"i", ColumnType::kInt64}, expand, 3),
               PeoplePairs(rng));
}

Schema Regions() {
  return *Schema::Create(
      {{"zip", ColumnType::kText}, {"region", ColumnType::kInt64}});
}

TEST(PublicJoinTest, StabilityIsLargestKeyMultiplicity) {
  Table unique = *Table::Create(Regions(), {{std::string("10001"), int64_t{1}},
                                            {std::string("10002"), int64_t{2}}});
  Transformation j1 = *MakePublicJoin(
      PeopleDomain(), Metric::SymmetricDifference(), unique, {"zip"});
  EXPECT_EQ(j1.stability().coefficient(), ExtRational(1));

  Table triple = *Table::Create(Regions(), {{std::string("10001"), int64_t{1}},
                                            {std::string("10001"), int64_t{2}},
                                            {std::string("10001"), int64_t{3}},
                                            {std::string("10002"), int64_t{4}}});
  Transformation j3 = *MakePublicJoin(
      PeopleDomain(), Metric::SymmetricDifference(), triple, {"zip"});
  EXPECT_EQ(j3.stability().coefficient(), ExtRational(3));
  Table out = Out(j3, PeopleTable({P("u1", 39, "10001"), P("u2", 41, "99999")}));
  EXPECT_EQ(out.size(), 3u);
  EXPECT_EQ(out.schema().size(), 4u);

  std::mt19937_64 rng(4);
  ExpectStable(j3, PeoplePairs(rng));
}

TEST(PublicJoinTest, Errors) {
  Schema wrong = *Schema::Create({{"zip", ColumnType::kInt64}});
  Table t = *Table::Create(wrong, {});
  EXPECT_THAT(MakePublicJoin(PeopleDomain(), Metric::SymmetricDifference(), t,
                             {"zip"})
                  .status()
                  .message(),
              HasSubstr("KeyTypeMismatch"));
  Table regions = *Table::Create(Regions(), {});
  EXPECT_THAT(MakePublicJoin(PeopleDomain("user"),
                             Metric::AddRemoveIds("user"), regions, {"zip"})
                  .status()
                  .message(),
              HasSubstr("UnboundedSensitivity"));
}

Schema Left() {
  return *Schema::Create({{"k", ColumnType::kText}, {"a", ColumnType::kInt64}});
}
Schema Right() {
  return *Schema::Create({{"k", ColumnType::kText}, {"b", ColumnType::kInt64}});
}

TEST(PrivateJoinTest, UniqueKeysJoinMatchedRows) {
  Transformation j = *MakePrivateJoin(*TableDomain::Create(Left()),
                                      *TableDomain::Create(Right()), {"k"}, 1,
                                      1);
  Table l = *Table::Create(Left(), {{std::string("x"), int64_t{1}},
                                    {std::string("y"), int64_t{2}}});
  Table r = *Table::Create(Right(), {{std::string("x"), int64_t{10}},
                                     {std::string("z"), int64_t{30}}});
  absl::StatusOr<Dataset> out = j.Apply(Dataset::Tuple({l, r}));
  ASSERT_TRUE(out.ok()) << out.status();
  ASSERT_EQ(out->table().size(), 1u);
  EXPECT_EQ(out->table().rows()[0],
            (Row{std::string("x"), int64_t{1}, int64_t{10}}));
  EXPECT_EQ(j.input_metric(),
            Metric::TableTuple({Metric::SymmetricDifference(),
                                Metric::SymmetricDifference()}));
  EXPECT_EQ(j.output_metric(), Metric::SymmetricDifference());
  // One added row can displace one kept row, so bounds of 1 give slope 2.
  EXPECT_EQ(j.stability().coefficient(), ExtRational(2));
}

TEST(PrivateJoinTest, DisplacementNeedsTheFactorTwo) {
  Transformation j = *MakePrivateJoin(*TableDomain::Create(Left()),
                                      *TableDomain::Create(Right()), {"k"}, 1,
                                      1);
  Table r = *Table::Create(Right(), {{std::string("k"), int64_t{0}}});
  Table l1 = *Table::Create(Left(), {{std::string("k"), int64_t{2}}});
  Table l2 = *Table::Create(Left(), {{std::string("k"), int64_t{2}},
                                     {std::string("k"), int64_t{1}}});
  Table o1 = j.Apply(Dataset::Tuple({l1, r}))->table();
  Table o2 = j.Apply(Dataset::Tuple({l2, r}))->table();
  EXPECT_EQ(testing::MultisetDistance(o1, o2), 2);
  EXPECT_EQ(PrivateJoinBound(1, 1, 1, 0), ExtRational(2));
}

TEST(PrivateJoinTest, BoundEvaluation) {
  EXPECT_EQ(PrivateJoinBound(1, 2, 1, 0), ExtRational(4));
  EXPECT_EQ(PrivateJoinBound(3, 2, 1, 1), ExtRational(10));
  EXPECT_EQ(PrivateJoinBound(3, 2, 0, 0), ExtRational(0));
}

TEST(PrivateJoinTest, Errors) {
  Schema bad = *Schema::Create({{"k", ColumnType::kInt64}});
  EXPECT_THAT(MakePrivateJoin(*TableDomain::Create(Left()),
                              *TableDomain::Create(bad), {"k"}, 1, 1)
                  .status()
                  .message(),
              HasSubstr("KeyTypeMismatch"));
  EXPECT_THAT(MakePrivateJoin(*TableDomain::Create(Left()),
                              *TableDomain::Create(Right()), {"k"}, 0, 1)
                  .status()
                  .message(),
              HasSubstr("NonPositiveBound"));
}

TEST(PrivateJoinTest, BilinearBoundHolds) {
  testing::ValuePools left_pools = {{std::string("x"), std::string("y")},
                                    {int64_t{1}, int64_t{2}, int64_t{3}}};
  testing::ValuePools right_pools = {{std::string("x"), std::string("y")},
                                     {int64_t{7}, int64_t{8}}};
  std::mt19937_64 rng(5);
  for (auto [bl, br] : {std::pair<int64_t, int64_t>{1, 1}, {1, 2}, {2, 3}}) {
    Transformation j = *MakePrivateJoin(*TableDomain::Create(Left()),
                                        *TableDomain::Create(Right()), {"k"},
                                        bl, br);
    auto draw = [&] {
      auto [l1, l2] = testing::RandomPair(Left(), left_pools, 4, rng);
      auto [r1, r2] = testing::RandomPair(Right(), right_pools, 4, rng);
      return std::pair<Dataset, Dataset>(Dataset::Tuple({l1, r1}),
                                         Dataset::Tuple({l2, r2}));
    };
    auto bilinear = [&](const Dataset& x, const Dataset& y) {
      int64_t dl = testing::MultisetDistance(x.tables()[0], y.tables()[0]);
      int64_t dr = testing::MultisetDistance(x.tables()[1], y.tables()[1]);
      return 2 * (br * dl + bl * dr);
    };
    testing::StabilityReport exact =
        testing::CheckStability(j, kPairs, draw, bilinear);
    EXPECT_EQ(exact.violations, 0) << exact.first;
    testing::StabilityReport linear = testing::CheckStability(j, kPairs, draw);
    EXPECT_EQ(linear.violations, 0) << linear.first;
  }
}

TEST(TruncateByIdTest, KeepsAtMostBoundPerId) {
  Transformation t = *MakeTruncateById(PeopleDomain("user"), "user", 2);
  Table in = PeopleTable({P("u", 1, "a"), P("u", 2, "a"), P("u", 3, "a"),
                          P("u", 4, "a"), P("u", 5, "a"), P("v", 1, "a")});
  Table out = Out(t, in);
  EXPECT_EQ(out.size(), 3u);
  std::map<std::string, int> per_id;
  for (const Row& r : out.rows()) ++per_id[std::get<std::string>(r[0])];
  EXPECT_LE(per_id["u"], 2);
  EXPECT_EQ(per_id["v"], 1);
  // Canonical order keeps the smallest rows, so the output is a sub-multiset.
  EXPECT_TRUE(*TableEqual(out, PeopleTable({P("u", 1, "a"), P("u", 2, "a"),
                                            P("v", 1, "a")})));
  EXPECT_EQ(t.input_metric(), Metric::AddRemoveIds("user"));
  EXPECT_EQ(t.output_metric(), Metric::SymmetricDifference());
}

TEST(TruncateByIdTest, IdempotentAndStable) {
  std::mt19937_64 rng(6);
  for (int64_t b : {1, 2}) {
    Transformation t = *MakeTruncateById(PeopleDomain("user"), "user", b);
    for (int i = 0; i < 500; ++i) {
      Table x = testing::RandomTable(People(), PeoplePools(), 8, rng);
      Table once = Out(t, x);
      EXPECT_TRUE(*TableEqual(Out(t, once), once));
    }
    ExpectStable(t, PeoplePairs(rng));
  }
}

TEST(TruncateByIdTest, Errors) {
  EXPECT_THAT(MakeTruncateById(PeopleDomain(), "user", 1).status().message(),
              HasSubstr("MissingIdColumn"));
  EXPECT_THAT(
      MakeTruncateById(PeopleDomain("user"), "user", 0).status().message(),
      HasSubstr("NonPositiveBound"));
}

SubsetAssignment ByZip() {
  return [](const Row& r) {
    return std::vector<int64_t>{std::get<std::string>(r[2]) == "10001" ? 0 : 1};
  };
}

TEST(OverlappingSubsetsTest, PartitionDistancesSum) {
  Transformation t = *MakeOverlappingSubsets(PeopleDomain(), ByZip(), 2, 1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto [x, y] = testing::RandomPair(People(), PeoplePools(), 6, rng);
    Dataset ox = *t.Apply(x), oy = *t.Apply(y);
    EXPECT_EQ(testing::OracleDistance(t.output_metric(), ox, oy),
              testing::MultisetDistance(x, y));
  }
}

TEST(OverlappingSubsetsTest, TwoCopies) {
  Transformation t = *MakeOverlappingSubsets(
      PeopleDomain(), [](const Row&) { return std::vector<int64_t>{2, 0}; }, 3,
      2);
  Table one = PeopleTable({P("u1", 39, "10001")});
  Table none = PeopleTable({});
  Dataset a = *t.Apply(one), b = *t.Apply(none);
  ASSERT_EQ(a.tables().size(), 3u);
  EXPECT_EQ(a.tables()[0].size(), 1u);
  EXPECT_EQ(a.tables()[1].size(), 0u);
  EXPECT_EQ(a.tables()[2].size(), 1u);
  EXPECT_EQ(*DatasetDistance(t.output_metric(), a, b), ExtRational(2));
  EXPECT_EQ(t.stability().coefficient(), ExtRational(2));
}

TEST(OverlappingSubsetsTest, TruncatesIndexSetsAndStable) {
  Transformation t = *MakeOverlappingSubsets(
      PeopleDomain(),
      [](const Row& r) {
        int64_t age = std::get<int64_t>(r[1]);
        return std::vector<int64_t>{age % 3, (age + 1) % 3, (age + 2) % 3};
      },
      3, 2);
  Dataset out = *t.Apply(PeopleTable({P("u1", 39, "10001")}));
  int64_t copies = 0;
  for (const Table& s : out.tables()) copies += s.size();
  EXPECT_EQ(copies, 2);
  EXPECT_EQ(out.tables()[2].size(), 0u);
  std::mt19937_64 rng(8);
  ExpectStable(t, PeoplePairs(rng));
}

TEST(OverlappingSubsetsTest, BadIndex) {
  Transformation t = *MakeOverlappingSubsets(
      PeopleDomain(), [](const Row&) { return std::vector<int64_t>{5}; }, 3, 1);
  EXPECT_THAT(t.Apply(PeopleTable({P("u1", 39, "10001")})).status().message(),
              HasSubstr("BadIndex"));
}

TEST(PartitionByKeysTest, IdentityWithGroupedMetric) {
  Transformation t = *MakePartitionByKeys(PeopleDomain(), {"zip"});
  EXPECT_EQ(t.output_metric(),
            Metric::GroupedBy({"zip"}, Metric::SymmetricDifference()));
  std::mt19937_64 rng(9);
  ExpectStable(t, PeoplePairs(rng));
  EXPECT_FALSE(MakePartitionByKeys(PeopleDomain(), {"nope"}).ok());
}

TEST(SelectTableTest, ComponentMetrics) {
  DatasetDomain pair = DatasetDomain::Tuple({PeopleDomain(), PeopleDomain()});
  Metric tuple = Metric::TableTuple(
      {Metric::SymmetricDifference(), Metric::SymmetricDifference()});
  Transformation s = *MakeSelectTable(pair, tuple, 1);
  EXPECT_EQ(s.output_metric(), Metric::SymmetricDifference());
  Table a = PeopleTable({P("u1", 39, "10001")});
  Table b = PeopleTable({});
  EXPECT_EQ(s.Apply(Dataset::Tuple({a, b}))->table().size(), 0u);

  DatasetDomain ids =
      DatasetDomain::Tuple({PeopleDomain("user"), PeopleDomain("user")});
  Transformation si = *MakeSelectTable(ids, Metric::AddRemoveIds("user"), 0);
  EXPECT_EQ(si.output_metric(), Metric::AddRemoveIds("user"));
  EXPECT_FALSE(MakeSelectTable(pair, tuple, 2).ok());

  std::mt19937_64 rng(10);
  auto draw = [&] {
    auto [x1, y1] = testing::RandomPair(People(), PeoplePools(), 4, rng);
    auto [x2, y2] = testing::RandomPair(People(), PeoplePools(), 4, rng);
    return std::pair<Dataset, Dataset>(Dataset::Tuple({x1, x2}),
                                       Dataset::Tuple({y1, y2}));
  };
  ExpectStable(s, draw);
  ExpectStable(si, draw);
}

TEST(TupleOfTest, StabilityIsSum) {
  Transformation f1 = *MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                                  Col("age") > 40);
  Transformation f2 = *MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                                  Col("zip") == "10001");
  Transformation t = *MakeTupleOf({f1, f2});
  EXPECT_EQ(t.stability().coefficient(), ExtRational(2));
  std::mt19937_64 rng(11);
  ExpectStable(t, PeoplePairs(rng));
  Transformation other = *MakeFilter(PeopleDomain("user"),
                                     Metric::AddRemoveIds("user"), Expr(true));
  EXPECT_FALSE(MakeTupleOf({f1, other}).ok());
}

TEST(ChainTest, SlopesMultiply) {
  Transformation filter = *MakeFilter(
      PeopleDomain(), Metric::SymmetricDifference(), Col("age") > 40);
  Transformation identity = *MakeMap(
      PeopleDomain(), Metric::SymmetricDifference(),
      {{"user", Col("user")}, {"age", Col("age")}, {"zip", Col("zip")}});
  EXPECT_EQ(Chain(filter, identity)->stability().coefficient(), ExtRational(1));
  Transformation flat = *MakeFlatMap(
      PeopleDomain(), Metric::SymmetricDifference(), {"i", ColumnType::kInt64},
      [](const Row&) { return std::vector<Value>{int64_t{1}, int64_t{2}}; },
      3);
  Transformation chained = *Chain(filter, flat);
  EXPECT_EQ(chained.stability().coefficient(), ExtRational(3));
  std::mt19937_64 rng(12);
  ExpectStable(chained, PeoplePairs(rng));
}

TEST(ChainTest, Mismatches) {
  Transformation filter = *MakeFilter(
      PeopleDomain(), Metric::SymmetricDifference(), Col("age") > 40);
  Transformation map = *MakeMap(PeopleDomain(), Metric::SymmetricDifference(),
                                {{"age", Col("age")}});
  EXPECT_THAT(Chain(map, filter).status().message(),
              HasSubstr("DomainMismatch"));
  Transformation id_filter = *MakeFilter(
      PeopleDomain("user"), Metric::AddRemoveIds("user"), Expr(true));
  EXPECT_FALSE(Chain(filter, id_filter).ok());
}

TEST(ChainTest, Associative) {
  Transformation a = *MakeFilter(PeopleDomain(), Metric::SymmetricDifference(),
                                 Col("age") > 39);
  Transformation b = *MakeFlatMap(
      PeopleDomain(), Metric::SymmetricDifference(), {"i", ColumnType::kInt64},
      [](const Row& r) {
        return std::vector<Value>{std::get<int64_t>(r[1]), int64_t{0}};
      },
      2);
  Transformation c = *MakeFilter(b.output_domain().table(),
                                 Metric::SymmetricDifference(), Col("i") > 0);
  Transformation left = *Chain(*Chain(a, b), c);
  Transformation right = *Chain(a, *Chain(b, c));
  EXPECT_EQ(left.stability().coefficient(), right.stability().coefficient());
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Table x = testing::RandomTable(People(), PeoplePools(), 6, rng);
    EXPECT_TRUE(*TableEqual(Out(left, x), Out(right, x)));
    EXPECT_TRUE(*TableEqual(Out(left, x), Out(left, x)));
  }
}

}  // namespace
}  // namespace dpkit
