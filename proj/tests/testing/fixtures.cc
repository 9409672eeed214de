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


#include "testing/fixtures.h"

#include <algorithm>
#include <fstream>
#include <random>

#include "absl/strings/str_cat.h"
#include "dpkit/csv.h"

namespace dpkit::testing {

const std::vector<std::string>& IncomeZips() {
  static const std::vector<std::string>* zips = new std::vector<std::string>{
      "10001", "10002", "10003", "10004", "10005"};
  return *zips;
}

Table IncomeTable(int64_t rows, uint64_t seed) {
  // mt19937_64's output sequence is fixed by the standard; the
  // <random> distributions are not, so values are reduced by hand.
  std::mt19937_64 rng(seed);
  auto below = [&rng](uint64_t n) { return static_cast<int64_t>(rng() % n); };
  std::vector<Row> out;
  out.reserve(rows);
  for (int64_t i = 0; i < rows; ++i) {
    int64_t age = 18 + below(73);
    std::string z =
        below(20) == 0 ? "99999" : IncomeZips()[below(IncomeZips().size())];
    int64_t cents = -500000 + below(30500001);
    out.push_back({absl::StrCat("user", i), age, std::move(z),
                   static_cast<double>(cents) / 100});
  }
  Schema schema = *Schema::Create({{"user", ColumnType::kText},
                                   {"age", ColumnType::kInt64},
                                   {"zip", ColumnType::kText},
                                   {"income", ColumnType::kFloat64}});
  return *Table::Create(std::move(schema), std::move(out));
}

KeySet IncomeZipKeys() {
  std::vector<Row> tuples;
  for (const std::string& z : IncomeZips()) tuples.push_back({z});
  return *KeySet::FromTuples({"zip"}, std::move(tuples));
}

std::map<std::string, long double> TrueClampedAverages(const Table& people,
                                                       int64_t min_age,
                                                       double low,
                                                       double high) {
  std::map<std::string, long double> sum;
  std::map<std::string, int64_t> count;
  for (const Row& r : people.rows()) {
    if (std::get<int64_t>(r[1]) <= min_age) continue;
    const std::string& z = std::get<std::string>(r[2]);
    sum[z] += std::clamp(std::get<double>(r[3]), low, high);
    ++count[z];
  }
  std::map<std::string, long double> out;
  for (const auto& [z, s] : sum) out[z] = s / count[z];
  return out;
}

void WriteCsvFile(const Table& table, const std::string& path) {
  std::ofstream(path) << WriteCsv(table);
}

}  // namespace dpkit::testing
