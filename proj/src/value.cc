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

#include "dpkit/value.h"

#include <charconv>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpkit {

ColumnType TypeOf(const Value& value) {
  return static_cast<ColumnType>(value.index());
}

absl::string_view ColumnTypeName(ColumnType type) {
  switch (type) {
    case ColumnType::kInt64:
      return "int64";
    case ColumnType::kFloat64:
      return "float64";
    case ColumnType::kText:
      return "text";
  }
  return "unknown";
}

absl::StatusOr<ColumnType> ParseColumnType(absl::string_view name) {
  if (name == "int64") return ColumnType::kInt64;
  if (name == "float64") return ColumnType::kFloat64;
  if (name == "text") return ColumnType::kText;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown column type '", name,
                   "' (expected int64, float64 or text)"));
}

int CompareValues(const Value& a, const Value& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  switch (TypeOf(a)) {
    case ColumnType::kInt64: {
      int64_t x = std::get<int64_t>(a), y = std::get<int64_t>(b);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ColumnType::kFloat64: {
      double x = std::get<double>(a), y = std::get<double>(b);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ColumnType::kText: {
      int c = std::get<std::string>(a).compare(std::get<std::string>(b));
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
  }
  return 0;
}

std::string ValueToString(const Value& value) {
  switch (TypeOf(value)) {
    case ColumnType::kInt64:
      return std::to_string(std::get<int64_t>(value));
    case ColumnType::kFloat64: {
      char buffer[64];
      auto result =
          std::to_chars(buffer, buffer + sizeof(buffer), std::get<double>(value));
      return std::string(buffer, result.ptr);
    }
    case ColumnType::kText:
      return std::get<std::string>(value);
  }
  return "";
}

absl::StatusOr<Value> ParseValue(absl::string_view text, ColumnType type) {
  if (text.empty()) {
    return absl::InvalidArgumentError("empty value (nulls are not supported)");
  }
  switch (type) {
    case ColumnType::kInt64: {
      int64_t parsed = 0;
      absl::string_view digits = text;
      if (digits.front() == '+') digits.remove_prefix(1);
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), parsed);
      if (ec != std::errc() || ptr != digits.data() + digits.size() ||
          digits.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("'", text, "' is not a valid int64"));
      }
      return Value(parsed);
    }
    case ColumnType::kFloat64: {
      double parsed = 0;
      absl::string_view digits = text;
      if (digits.front() == '+') digits.remove_prefix(1);
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), parsed);
      if (ec != std::errc() || ptr != digits.data() + digits.size() ||
          digits.empty() || !std::isfinite(parsed)) {
        return absl::InvalidArgumentError(
            absl::StrCat("'", text, "' is not a valid finite float64"));
      }
      return Value(parsed);
    }
    case ColumnType::kText:
      return Value(std::string(text));
  }
  return absl::InternalError("unreachable column type");
}

}  // namespace dpkit
