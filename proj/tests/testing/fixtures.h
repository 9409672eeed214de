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


// Synthetic data shared by the session, CLI and acceptance tests.

#ifndef DPKIT_TESTS_TESTING_FIXTURES_H_
#define DPKIT_TESTS_TESTING_FIXTURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpkit/query.h"
#include "dpkit/table.h"

namespace dpkit::testing {

// The ZIP codes used as group-by keys.
const std::vector<std::string>& IncomeZips();

// (user text, age int64, zip text, income float64) with `rows` rows drawn
// from a generator seeded by `seed`. About one row in twenty carries ZIP
// "99999", which is outside IncomeZips(); incomes range over
// [-5000, 300000] so that clamping to [0, 200000] matters.
Table IncomeTable(int64_t rows, uint64_t seed);

KeySet IncomeZipKeys();

// Mean of clamp(income, low, high) per ZIP over rows with age > min_age,
// computed in long double.
std::map<std::string, long double> TrueClampedAverages(const Table& people,
                                                       int64_t min_age,
                                                       double low,
                                                       double high);

// Writes `table` as CSV to `path`.
void WriteCsvFile(const Table& table, const std::string& path);

}  // namespace dpkit::testing

#endif  // DPKIT_TESTS_TESTING_FIXTURES_H_
