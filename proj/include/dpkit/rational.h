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

#ifndef DPKIT_RATIONAL_H_
#define DPKIT_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "absl/strings/string_view.h"
#include "absl/status/statusor.h"
#include <boost/multiprecision/cpp_int.hpp>

namespace dpkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A nonnegative rational number or +infinity. All privacy accounting
// (distances, stability and privacy functions, budgets) is carried out in
// this type so that ledger arithmetic is exact.
//
// Multiplication follows the measure-theory convention 0 * inf = 0, which
// keeps every distance map d -> c * d well defined at d = 0.
class ExtRational {
 public:
  ExtRational() = default;
  // Requires value >= 0.
  ExtRational(const Rational& value);  // NOLINT
  ExtRational(int64_t value);          // NOLINT
  ExtRational(int64_t numerator, int64_t denominator);

  static ExtRational Infinity();
  static ExtRational Zero() { return ExtRational(); }

  // Parses "3", "0.25", "1e-3", "2/7", "inf" or "infinity". Decimal input is
  // converted exactly (0.1 is 1/10, not the nearest double). Negative values
  // are rejected.
  static absl::StatusOr<ExtRational> Parse(absl::string_view text);

  // Exact conversion of a finite, nonnegative double (every double is a
  // dyadic rational).
  static absl::StatusOr<ExtRational> FromDouble(double value);

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }
  // Only meaningful when finite.
  const Rational& value() const { return value_; }

  double ToDouble() const;
  // "p/q", "p" for integers, "inf".
  std::string ToString() const;

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b);
  // Division by zero yields infinity unless the numerator is zero, in which
  // case it yields zero. inf / inf is treated as inf.
  friend ExtRational operator/(const ExtRational& a, const ExtRational& b);

  ExtRational& operator+=(const ExtRational& other) {
    *this = *this + other;
    return *this;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b);

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

// a - b, or nullopt when the result would be negative or undefined
// (inf - inf).
std::optional<ExtRational> CheckedSubtract(const ExtRational& a,
                                           const ExtRational& b);

ExtRational Max(const ExtRational& a, const ExtRational& b);

std::ostream& operator<<(std::ostream& os, const ExtRational& value);

// Parses a possibly negative finite decimal or fraction into a Rational.
absl::StatusOr<Rational> ParseRational(absl::string_view text);

std::string RationalToString(const Rational& value);

// floor and ceil of a rational.
BigInt Floor(const Rational& value);
BigInt Ceil(const Rational& value);

}  // namespace dpkit

#endif  // DPKIT_RATIONAL_H_
