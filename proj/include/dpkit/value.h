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

#ifndef DPKIT_VALUE_H_
#define DPKIT_VALUE_H_

#include <cstdint>
#include <string>
#include <variant>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"

namespace dpkit {

enum class ColumnType { kInt64, kFloat64, kText };

// A cell value. The variant index matches the ColumnType enumerator order.
using Value = std::variant<int64_t, double, std::string>;

ColumnType TypeOf(const Value& value);

// "int64", "float64", "text" (the spelling used by schema files).
absl::string_view ColumnTypeName(ColumnType type);
absl::StatusOr<ColumnType> ParseColumnType(absl::string_view name);

// Total order: by type first, then numerically (doubles with -0.0 == 0.0) or
// by byte order for text. Returns <0, 0 or >0.
int CompareValues(const Value& a, const Value& b);

// Text form used by CSV output. Doubles use the shortest representation that
// parses back to the same value.
std::string ValueToString(const Value& value);

// Parses a single field under `type`. Empty input, non-finite floats and
// trailing garbage are rejected.
absl::StatusOr<Value> ParseValue(absl::string_view text, ColumnType type);

}  // namespace dpkit

#endif  // DPKIT_VALUE_H_
