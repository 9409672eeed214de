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

#include "dpkit/rational.h"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace dpkit {
namespace {

bool AllDigits(absl::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// `digits` must satisfy AllDigits. Leading zeros are dropped first because
// the BigInt string constructor reads them as an octal prefix.
BigInt DecimalDigits(absl::string_view digits) {
  size_t first = digits.find_first_not_of('0');
  if (first == absl::string_view::npos) return 0;
  return BigInt(std::string(digits.substr(first)));
}

BigInt Pow10(int64_t exponent) {
  BigInt result = 1;
  for (int64_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// Parses an unsigned decimal such as "12", "0.25", ".5", "3e-2".
absl::StatusOr<Rational> ParseUnsignedDecimal(absl::string_view text) {
  absl::string_view mantissa = text;
  int64_t exponent = 0;
  size_t e_pos = text.find_first_of("eE");
  if (e_pos != absl::string_view::npos) {
    mantissa = text.substr(0, e_pos);
    absl::string_view exp_text = text.substr(e_pos + 1);
    bool negative = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      negative = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!AllDigits(exp_text) || exp_text.size() > 4) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed exponent in number '", text, "'"));
    }
    exponent = std::stoll(std::string(exp_text));
    if (negative) exponent = -exponent;
  }
  absl::string_view int_part = mantissa;
  absl::string_view frac_part;
  size_t dot = mantissa.find('.');
  if (dot != absl::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) ||
      (!int_part.empty() && !AllDigits(int_part)) ||
      (!frac_part.empty() && !AllDigits(frac_part))) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed number '", text, "'"));
  }
  BigInt digits =
      DecimalDigits(std::string(int_part.empty() ? "0" : int_part) +
                    std::string(frac_part));
  exponent -= static_cast<int64_t>(frac_part.size());
  if (exponent >= 0) return Rational(digits * Pow10(exponent));
  return Rational(digits, Pow10(-exponent));
}

}  // namespace

ExtRational::ExtRational(const Rational& value) : value_(value) {
  if (value_ < 0) value_ = 0;
}

ExtRational::ExtRational(int64_t value) : value_(value < 0 ? 0 : value) {}

ExtRational::ExtRational(int64_t numerator, int64_t denominator)
    : value_(Rational(numerator, denominator)) {
  if (value_ < 0) value_ = 0;
}

ExtRational ExtRational::Infinity() {
  ExtRational r;
  r.infinite_ = true;
  return r;
}

absl::StatusOr<ExtRational> ExtRational::Parse(absl::string_view text) {
  std::string lowered = absl::AsciiStrToLower(absl::StripAsciiWhitespace(text));
  if (lowered == "inf" || lowered == "infinity") return Infinity();
  absl::StatusOr<Rational> value = ParseRational(lowered);
  if (!value.ok()) return value.status();
  if (*value < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected a nonnegative amount, got '", text, "'"));
  }
  return ExtRational(*value);
}

absl::StatusOr<ExtRational> ExtRational::FromDouble(double value) {
  if (std::isnan(value) || value < 0) {
    return absl::InvalidArgumentError("expected a nonnegative number");
  }
  if (std::isinf(value)) return Infinity();
  return ExtRational(Rational(value));
}

double ExtRational::ToDouble() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return value_.convert_to<double>();
}

std::string ExtRational::ToString() const {
  if (infinite_) return "inf";
  return RationalToString(value_);
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return ExtRational::Infinity();
  return ExtRational(a.value_ + b.value_);
}

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
  if (a.is_zero() || b.is_zero()) return ExtRational::Zero();
  if (a.infinite_ || b.infinite_) return ExtRational::Infinity();
  return ExtRational(a.value_ * b.value_);
}

ExtRational operator/(const ExtRational& a, const ExtRational& b) {
  if (a.is_zero()) return ExtRational::Zero();
  if (b.is_zero() || a.infinite_) return ExtRational::Infinity();
  if (b.infinite_) return ExtRational::Zero();
  return ExtRational(a.value_ / b.value_);
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<ExtRational> CheckedSubtract(const ExtRational& a,
                                           const ExtRational& b) {
  if (b.is_infinite()) return std::nullopt;
  if (a.is_infinite()) return a;
  if (b.value() > a.value()) return std::nullopt;
  return ExtRational(a.value() - b.value());
}

ExtRational Max(const ExtRational& a, const ExtRational& b) {
  return a < b ? b : a;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& value) {
  return os << value.ToString();
}

absl::StatusOr<Rational> ParseRational(absl::string_view text) {
  absl::string_view s = absl::StripAsciiWhitespace(text);
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed number '", text, "'"));
  }
  Rational result;
  size_t slash = s.find('/');
  if (slash != absl::string_view::npos) {
    absl::string_view num = s.substr(0, slash);
    absl::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed fraction '", text, "'"));
    }
    BigInt d = DecimalDigits(den);
    if (d == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("zero denominator in '", text, "'"));
    }
    result = Rational(DecimalDigits(num), d);
  } else {
    absl::StatusOr<Rational> parsed = ParseUnsignedDecimal(s);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed number '", text, "'"));
    }
    result = *parsed;
  }
  return negative ? Rational(-result) : result;
}

std::string RationalToString(const Rational& value) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(value);
  if (boost::multiprecision::denominator(value) != 1) {
    os << "/" << boost::multiprecision::denominator(value);
  }
  return os.str();
}

BigInt Floor(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt Ceil(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

}  // namespace dpkit
