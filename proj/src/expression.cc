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

#include <charconv>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace dpkit {

struct Expr::Node {
  Kind kind;
  Op op = Op::kAdd;
  std::string name;  // column name or error message
  ExprValue literal;
  std::vector<Expr> operands;
};

namespace {

absl::string_view OpSymbol(Expr::Op op) {
  switch (op) {
    case Expr::Op::kAdd: return "+";
    case Expr::Op::kSub: return "-";
    case Expr::Op::kMul: return "*";
    case Expr::Op::kDiv: return "/";
    case Expr::Op::kLt: return "<";
    case Expr::Op::kLe: return "<=";
    case Expr::Op::kEq: return "=";
    case Expr::Op::kNe: return "!=";
    case Expr::Op::kGe: return ">=";
    case Expr::Op::kGt: return ">";
    case Expr::Op::kAnd: return "and";
    case Expr::Op::kOr: return "or";
    case Expr::Op::kNot: return "not";
    case Expr::Op::kNeg: return "-";
  }
  return "?";
}

bool IsArithmetic(Expr::Op op) {
  return op == Expr::Op::kAdd || op == Expr::Op::kSub ||
         op == Expr::Op::kMul || op == Expr::Op::kDiv;
}

bool IsComparison(Expr::Op op) {
  return op == Expr::Op::kLt || op == Expr::Op::kLe || op == Expr::Op::kEq ||
         op == Expr::Op::kNe || op == Expr::Op::kGe || op == Expr::Op::kGt;
}

bool IsNumeric(ExprType t) {
  return t == ExprType::kInt64 || t == ExprType::kFloat64;
}

ExprType TypeOfLiteral(const ExprValue& v) {
  return static_cast<ExprType>(v.index());
}

std::string QuoteString(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

bool IsPlainIdentifier(absl::string_view s) {
  if (s.empty()) return false;
  if (!absl::ascii_isalpha(s[0]) && s[0] != '_') return false;
  for (char c : s) {
    if (!absl::ascii_isalnum(c) && c != '_') return false;
  }
  std::string lower = absl::AsciiStrToLower(s);
  return lower != "and" && lower != "or" && lower != "not" &&
         lower != "true" && lower != "false";
}

double Saturate(double x) {
  if (std::isnan(x)) return 0.0;
  if (std::isinf(x)) {
    return x > 0 ? std::numeric_limits<double>::max()
                 : std::numeric_limits<double>::lowest();
  }
  return x;
}

double AsDouble(const ExprValue& v) {
  if (const int64_t* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

int64_t WrapAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t WrapSub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

}  // namespace

Expr::Expr(int64_t value) : Expr(Literal(value)) {}
Expr::Expr(int value) : Expr(Literal(static_cast<int64_t>(value))) {}
Expr::Expr(double value) : Expr(Literal(value)) {}
Expr::Expr(bool value) : Expr(Literal(value)) {}
Expr::Expr(const char* value) : Expr(Literal(std::string(value))) {}
Expr::Expr(std::string value) : Expr(Literal(std::move(value))) {}

Expr Expr::Column(std::string name) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kColumn, Op::kAdd, std::move(name), {}, {}}));
}

Expr Expr::Literal(ExprValue value) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kLiteral, Op::kAdd, "", std::move(value), {}}));
}

Expr Expr::Unary(Op op, Expr operand) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kUnary, op, "", {}, {std::move(operand)}}));
}

Expr Expr::Binary(Op op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kBinary, op, "", {}, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::Invalid(std::string message) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kInvalid, Op::kAdd, std::move(message), {}, {}}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
Expr::Op Expr::op() const { return node_->op; }
const std::string& Expr::column_name() const { return node_->name; }
const ExprValue& Expr::literal() const { return node_->literal; }
const std::string& Expr::error() const { return node_->name; }
const std::vector<Expr>& Expr::operands() const { return node_->operands; }

std::string Expr::ToString() const {
  switch (kind()) {
    case Kind::kColumn:
      if (IsPlainIdentifier(column_name())) return column_name();
      return absl::StrCat("`", column_name(), "`");
    case Kind::kLiteral: {
      const ExprValue& v = literal();
      if (const int64_t* i = std::get_if<int64_t>(&v)) return std::to_string(*i);
      if (const double* d = std::get_if<double>(&v)) {
        std::string s = ValueToString(Value(*d));
        // Keep float literals distinguishable from int literals.
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        return s;
      }
      if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
      return QuoteString(std::get<std::string>(v));
    }
    case Kind::kUnary:
      if (op() == Op::kNot) {
        return absl::StrCat("(not ", operands()[0].ToString(), ")");
      }
      return absl::StrCat("(-", operands()[0].ToString(), ")");
    case Kind::kBinary:
      return absl::StrCat("(", operands()[0].ToString(), " ", OpSymbol(op()),
                          " ", operands()[1].ToString(), ")");
    case Kind::kInvalid:
      return absl::StrCat("<invalid: ", error(), ">");
  }
  return "";
}

Expr Col(std::string name) { return Expr::Column(std::move(name)); }

Expr operator+(Expr a, Expr b) { return Expr::Binary(Expr::Op::kAdd, a, b); }
Expr operator-(Expr a, Expr b) { return Expr::Binary(Expr::Op::kSub, a, b); }
Expr operator*(Expr a, Expr b) { return Expr::Binary(Expr::Op::kMul, a, b); }
Expr operator/(Expr a, Expr b) { return Expr::Binary(Expr::Op::kDiv, a, b); }
Expr operator-(Expr a) { return Expr::Unary(Expr::Op::kNeg, a); }
Expr operator<(Expr a, Expr b) { return Expr::Binary(Expr::Op::kLt, a, b); }
Expr operator<=(Expr a, Expr b) { return Expr::Binary(Expr::Op::kLe, a, b); }
Expr operator==(Expr a, Expr b) { return Expr::Binary(Expr::Op::kEq, a, b); }
Expr operator!=(Expr a, Expr b) { return Expr::Binary(Expr::Op::kNe, a, b); }
Expr operator>=(Expr a, Expr b) { return Expr::Binary(Expr::Op::kGe, a, b); }
Expr operator>(Expr a, Expr b) { return Expr::Binary(Expr::Op::kGt, a, b); }
Expr operator&&(Expr a, Expr b) { return Expr::Binary(Expr::Op::kAnd, a, b); }
Expr operator||(Expr a, Expr b) { return Expr::Binary(Expr::Op::kOr, a, b); }
Expr operator!(Expr a) { return Expr::Unary(Expr::Op::kNot, a); }

absl::string_view ExprTypeName(ExprType type) {
  switch (type) {
    case ExprType::kInt64: return "int64";
    case ExprType::kFloat64: return "float64";
    case ExprType::kText: return "text";
    case ExprType::kBool: return "bool";
  }
  return "unknown";
}

absl::StatusOr<ColumnType> ColumnTypeFor(ExprType type) {
  switch (type) {
    case ExprType::kInt64: return ColumnType::kInt64;
    case ExprType::kFloat64: return ColumnType::kFloat64;
    case ExprType::kText: return ColumnType::kText;
    case ExprType::kBool: break;
  }
  return absl::InvalidArgumentError(
      "TypeError: a boolean expression cannot be stored in a column");
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class TokenKind { kEnd, kIdent, kInt, kFloat, kString, kSymbol };

struct Token {
  TokenKind kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(absl::string_view text) : text_(text) {}

  absl::StatusOr<std::vector<Token>> Tokenize() {
    std::vector<Token> tokens;
    while (true) {
      while (pos_ < text_.size() && absl::ascii_isspace(text_[pos_])) ++pos_;
      if (pos_ >= text_.size()) break;
      size_t start = pos_;
      char c = text_[pos_];
      if (absl::ascii_isalpha(c) || c == '_') {
        while (pos_ < text_.size() &&
               (absl::ascii_isalnum(text_[pos_]) || text_[pos_] == '_')) {
          ++pos_;
        }
        tokens.push_back({TokenKind::kIdent,
                          std::string(text_.substr(start, pos_ - start)), start});
      } else if (c == '`') {
        absl::StatusOr<std::string> name = Quoted('`');
        if (!name.ok()) return name.status();
        // A quoted identifier is marked by a leading backtick in `text`.
        tokens.push_back({TokenKind::kIdent, "`" + *name, start});
      } else if (absl::ascii_isdigit(c) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  absl::ascii_isdigit(text_[pos_ + 1]))) {
        bool is_float = false;
        while (pos_ < text_.size() && absl::ascii_isdigit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
          is_float = true;
          ++pos_;
          while (pos_ < text_.size() && absl::ascii_isdigit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
          is_float = true;
          ++pos_;
          if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            ++pos_;
          }
          size_t digits = pos_;
          while (pos_ < text_.size() && absl::ascii_isdigit(text_[pos_])) ++pos_;
          if (digits == pos_) return Error(start, "malformed exponent");
        }
        tokens.push_back({is_float ? TokenKind::kFloat : TokenKind::kInt,
                          std::string(text_.substr(start, pos_ - start)), start});
      } else if (c == '\'' || c == '"') {
        absl::StatusOr<std::string> s = Quoted(c);
        if (!s.ok()) return s.status();
        tokens.push_back({TokenKind::kString, *s, start});
      } else {
        static constexpr absl::string_view kTwoChar[] = {"<=", ">=", "==", "!=",
                                                        "<>", "&&", "||"};
        absl::string_view rest = text_.substr(pos_);
        bool matched = false;
        for (absl::string_view sym : kTwoChar) {
          if (rest.substr(0, 2) == sym) {
            tokens.push_back({TokenKind::kSymbol, std::string(sym), start});
            pos_ += 2;
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (absl::string_view("+-*/<>=!()").find(c) == absl::string_view::npos) {
            return Error(start, absl::StrCat("unexpected character '",
                                             std::string(1, c), "'"));
          }
          tokens.push_back({TokenKind::kSymbol, std::string(1, c), start});
          ++pos_;
        }
      }
    }
    tokens.push_back({TokenKind::kEnd, "", text_.size()});
    return tokens;
  }

 private:
  absl::StatusOr<std::string> Quoted(char quote) {
    size_t start = pos_;
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == quote) {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == quote) {
          out.push_back(quote);
          pos_ += 2;
          continue;
        }
        ++pos_;
        return out;
      }
      out.push_back(c);
      ++pos_;
    }
    return Error(start, "unterminated quote");
  }

  absl::Status Error(size_t pos, absl::string_view message) const {
    return absl::InvalidArgumentError(absl::StrCat(
        "TypeError: cannot parse expression at offset ", pos, ": ", message));
  }

  absl::string_view text_;
  size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  absl::StatusOr<Expr> ParseAll() {
    absl::StatusOr<Expr> e = ParseOr();
    if (!e.ok()) return e;
    if (Peek().kind != TokenKind::kEnd) {
      return Error(absl::StrCat("unexpected '", Peek().text, "'"));
    }
    return e;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }

  bool AcceptKeyword(absl::string_view word) {
    if (Peek().kind == TokenKind::kIdent &&
        absl::AsciiStrToLower(Peek().text) == word) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool AcceptSymbol(absl::string_view sym) {
    if (Peek().kind == TokenKind::kSymbol && Peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }

  absl::Status Error(absl::string_view message) const {
    return absl::InvalidArgumentError(
        absl::StrCat("TypeError: cannot parse expression at offset ",
                     Peek().pos, ": ", message));
  }

  absl::StatusOr<Expr> ParseOr() {
    absl::StatusOr<Expr> lhs = ParseAnd();
    while (lhs.ok() && (AcceptKeyword("or") || AcceptSymbol("||"))) {
      absl::StatusOr<Expr> rhs = ParseAnd();
      if (!rhs.ok()) return rhs;
      lhs = Expr::Binary(Expr::Op::kOr, *lhs, *rhs);
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseAnd() {
    absl::StatusOr<Expr> lhs = ParseNot();
    while (lhs.ok() && (AcceptKeyword("and") || AcceptSymbol("&&"))) {
      absl::StatusOr<Expr> rhs = ParseNot();
      if (!rhs.ok()) return rhs;
      lhs = Expr::Binary(Expr::Op::kAnd, *lhs, *rhs);
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseNot() {
    if (AcceptKeyword("not") || AcceptSymbol("!")) {
      absl::StatusOr<Expr> operand = ParseNot();
      if (!operand.ok()) return operand;
      return Expr::Unary(Expr::Op::kNot, *operand);
    }
    return ParseComparison();
  }

  absl::StatusOr<Expr> ParseComparison() {
    absl::StatusOr<Expr> lhs = ParseAdditive();
    if (!lhs.ok()) return lhs;
    static const std::pair<absl::string_view, Expr::Op> kOps[] = {
        {"<=", Expr::Op::kLe}, {">=", Expr::Op::kGe}, {"==", Expr::Op::kEq},
        {"!=", Expr::Op::kNe}, {"<>", Expr::Op::kNe}, {"<", Expr::Op::kLt},
        {">", Expr::Op::kGt},  {"=", Expr::Op::kEq}};
    for (const auto& [sym, op] : kOps) {
      if (AcceptSymbol(sym)) {
        absl::StatusOr<Expr> rhs = ParseAdditive();
        if (!rhs.ok()) return rhs;
        return Expr::Binary(op, *lhs, *rhs);
      }
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseAdditive() {
    absl::StatusOr<Expr> lhs = ParseMultiplicative();
    while (lhs.ok()) {
      Expr::Op op;
      if (AcceptSymbol("+")) {
        op = Expr::Op::kAdd;
      } else if (AcceptSymbol("-")) {
        op = Expr::Op::kSub;
      } else {
        break;
      }
      absl::StatusOr<Expr> rhs = ParseMultiplicative();
      if (!rhs.ok()) return rhs;
      lhs = Expr::Binary(op, *lhs, *rhs);
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseMultiplicative() {
    absl::StatusOr<Expr> lhs = ParseUnary();
    while (lhs.ok()) {
      Expr::Op op;
      if (AcceptSymbol("*")) {
        op = Expr::Op::kMul;
      } else if (AcceptSymbol("/")) {
        op = Expr::Op::kDiv;
      } else {
        break;
      }
      absl::StatusOr<Expr> rhs = ParseUnary();
      if (!rhs.ok()) return rhs;
      lhs = Expr::Binary(op, *lhs, *rhs);
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseUnary() {
    if (AcceptSymbol("-")) {
      // Fold negative numeric literals so that -9223372036854775808 parses.
      if (Peek().kind == TokenKind::kInt) {
        std::string digits = "-" + Peek().text;
        ++pos_;
        return IntLiteral(digits);
      }
      absl::StatusOr<Expr> operand = ParseUnary();
      if (!operand.ok()) return operand;
      return Expr::Unary(Expr::Op::kNeg, *operand);
    }
    return ParsePrimary();
  }

  absl::StatusOr<Expr> IntLiteral(const std::string& digits) {
    int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      return Error(absl::StrCat("integer literal ", digits, " out of range"));
    }
    return Expr(value);
  }

  absl::StatusOr<Expr> ParsePrimary() {
    Token token = Peek();
    switch (token.kind) {
      case TokenKind::kInt:
        ++pos_;
        return IntLiteral(token.text);
      case TokenKind::kFloat: {
        ++pos_;
        double value = 0;
        auto [ptr, ec] = std::from_chars(
            token.text.data(), token.text.data() + token.text.size(), value);
        if (ec != std::errc() || !std::isfinite(value)) {
          return Error(absl::StrCat("bad float literal ", token.text));
        }
        return Expr(value);
      }
      case TokenKind::kString:
        ++pos_;
        return Expr(token.text);
      case TokenKind::kIdent: {
        ++pos_;
        if (!token.text.empty() && token.text[0] == '`') {
          return Col(token.text.substr(1));
        }
        std::string lower = absl::AsciiStrToLower(token.text);
        if (lower == "true") return Expr(true);
        if (lower == "false") return Expr(false);
        if (lower == "and" || lower == "or" || lower == "not") {
          return Error(absl::StrCat("unexpected keyword '", token.text, "'"));
        }
        return Col(token.text);
      }
      case TokenKind::kSymbol:
        if (AcceptSymbol("(")) {
          absl::StatusOr<Expr> inner = ParseOr();
          if (!inner.ok()) return inner;
          if (!AcceptSymbol(")")) return Error("expected ')'");
          return inner;
        }
        return Error(absl::StrCat("unexpected '", token.text, "'"));
      case TokenKind::kEnd:
        return Error("unexpected end of expression");
    }
    return Error("unreachable");
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

absl::StatusOr<Expr> ParseExpr(absl::string_view text) {
  absl::StatusOr<std::vector<Token>> tokens = Lexer(text).Tokenize();
  if (!tokens.ok()) return tokens.status();
  return Parser(*std::move(tokens)).ParseAll();
}

// ---------------------------------------------------------------------------
// Binding and evaluation

struct BoundExpr::Node {
  Expr::Kind kind;
  Expr::Op op;
  ExprType type;
  size_t column = 0;
  ExprValue literal;
  std::vector<std::shared_ptr<const Node>> children;
};

absl::StatusOr<BoundExpr> BoundExpr::Bind(const Expr& expr,
                                          const Schema& schema) {
  struct Binder {
    const Schema& schema;
    absl::StatusOr<std::shared_ptr<const Node>> operator()(const Expr& e) const {
      auto type_error = [&e](absl::string_view why) {
        return absl::InvalidArgumentError(
            absl::StrCat("TypeError: ", why, " in ", e.ToString()));
      };
      switch (e.kind()) {
        case Expr::Kind::kInvalid:
          return absl::InvalidArgumentError(e.error());
        case Expr::Kind::kColumn: {
          absl::StatusOr<size_t> index = schema.Require(e.column_name());
          if (!index.ok()) return index.status();
          ExprType type =
              static_cast<ExprType>(static_cast<int>(schema.column(*index).type));
          return std::make_shared<const Node>(
              Node{Expr::Kind::kColumn, Expr::Op::kAdd, type, *index, {}, {}});
        }
        case Expr::Kind::kLiteral:
          return std::make_shared<const Node>(
              Node{Expr::Kind::kLiteral, Expr::Op::kAdd,
                   TypeOfLiteral(e.literal()), 0, e.literal(), {}});
        case Expr::Kind::kUnary: {
          absl::StatusOr<std::shared_ptr<const Node>> operand =
              (*this)(e.operands()[0]);
          if (!operand.ok()) return operand;
          ExprType t = (*operand)->type;
          if (e.op() == Expr::Op::kNot && t != ExprType::kBool) {
            return type_error("'not' needs a bool operand");
          }
          if (e.op() == Expr::Op::kNeg && !IsNumeric(t)) {
            return type_error("unary '-' needs a numeric operand");
          }
          return std::make_shared<const Node>(
              Node{Expr::Kind::kUnary, e.op(), t, 0, {}, {*operand}});
        }
        case Expr::Kind::kBinary: {
          absl::StatusOr<std::shared_ptr<const Node>> lhs =
              (*this)(e.operands()[0]);
          if (!lhs.ok()) return lhs;
          absl::StatusOr<std::shared_ptr<const Node>> rhs =
              (*this)(e.operands()[1]);
          if (!rhs.ok()) return rhs;
          ExprType a = (*lhs)->type, b = (*rhs)->type;
          ExprType result;
          Expr::Op op = e.op();
          if (IsArithmetic(op)) {
            if (!IsNumeric(a) || !IsNumeric(b)) {
              return type_error("arithmetic needs numeric operands");
            }
            result = (op == Expr::Op::kDiv || a == ExprType::kFloat64 ||
                      b == ExprType::kFloat64)
                         ? ExprType::kFloat64
                         : ExprType::kInt64;
          } else if (IsComparison(op)) {
            bool ok = (IsNumeric(a) && IsNumeric(b)) ||
                      (a == ExprType::kText && b == ExprType::kText) ||
                      (a == ExprType::kBool && b == ExprType::kBool &&
                       (op == Expr::Op::kEq || op == Expr::Op::kNe));
            if (!ok) {
              return type_error(absl::StrCat("cannot compare ", ExprTypeName(a),
                                             " with ", ExprTypeName(b)));
            }
            result = ExprType::kBool;
          } else {
            if (a != ExprType::kBool || b != ExprType::kBool) {
              return type_error("'and'/'or' need bool operands");
            }
            result = ExprType::kBool;
          }
          return std::make_shared<const Node>(
              Node{Expr::Kind::kBinary, op, result, 0, {}, {*lhs, *rhs}});
        }
      }
      return absl::InternalError("unreachable expression kind");
    }
  };
  absl::StatusOr<std::shared_ptr<const Node>> root = Binder{schema}(expr);
  if (!root.ok()) return root.status();
  return BoundExpr(*std::move(root));
}

ExprType BoundExpr::type() const { return root_->type; }

namespace {

ExprValue EvaluateNode(const BoundExpr::Node& node, const Row& row);

int CompareExprValues(const ExprValue& a, const ExprValue& b) {
  if (std::holds_alternative<int64_t>(a) && std::holds_alternative<int64_t>(b)) {
    int64_t x = std::get<int64_t>(a), y = std::get<int64_t>(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (std::holds_alternative<std::string>(a)) {
    int c = std::get<std::string>(a).compare(std::get<std::string>(b));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (std::holds_alternative<bool>(a)) {
    return static_cast<int>(std::get<bool>(a)) -
           static_cast<int>(std::get<bool>(b));
  }
  double x = AsDouble(a), y = AsDouble(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

ExprValue EvaluateNode(const BoundExpr::Node& node, const Row& row) {
  switch (node.kind) {
    case Expr::Kind::kColumn: {
      const Value& v = row[node.column];
      switch (v.index()) {
        case 0: return std::get<int64_t>(v);
        case 1: return std::get<double>(v);
        default: return std::get<std::string>(v);
      }
    }
    case Expr::Kind::kLiteral:
      return node.literal;
    case Expr::Kind::kUnary: {
      ExprValue v = EvaluateNode(*node.children[0], row);
      if (node.op == Expr::Op::kNot) return !std::get<bool>(v);
      if (const int64_t* i = std::get_if<int64_t>(&v)) return WrapSub(0, *i);
      return Saturate(-std::get<double>(v));
    }
    case Expr::Kind::kBinary: {
      if (node.op == Expr::Op::kAnd) {
        return std::get<bool>(EvaluateNode(*node.children[0], row)) &&
               std::get<bool>(EvaluateNode(*node.children[1], row));
      }
      if (node.op == Expr::Op::kOr) {
        return std::get<bool>(EvaluateNode(*node.children[0], row)) ||
               std::get<bool>(EvaluateNode(*node.children[1], row));
      }
      ExprValue a = EvaluateNode(*node.children[0], row);
      ExprValue b = EvaluateNode(*node.children[1], row);
      if (IsComparison(node.op)) {
        int c = CompareExprValues(a, b);
        switch (node.op) {
          case Expr::Op::kLt: return c < 0;
          case Expr::Op::kLe: return c <= 0;
          case Expr::Op::kEq: return c == 0;
          case Expr::Op::kNe: return c != 0;
          case Expr::Op::kGe: return c >= 0;
          default: return c > 0;
        }
      }
      if (node.type == ExprType::kInt64) {
        int64_t x = std::get<int64_t>(a), y = std::get<int64_t>(b);
        switch (node.op) {
          case Expr::Op::kAdd: return WrapAdd(x, y);
          case Expr::Op::kSub: return WrapSub(x, y);
          default: return WrapMul(x, y);
        }
      }
      double x = AsDouble(a), y = AsDouble(b);
      switch (node.op) {
        case Expr::Op::kAdd: return Saturate(x + y);
        case Expr::Op::kSub: return Saturate(x - y);
        case Expr::Op::kMul: return Saturate(x * y);
        default: return y == 0.0 ? 0.0 : Saturate(x / y);
      }
    }
    case Expr::Kind::kInvalid:
      break;
  }
  return int64_t{0};
}

}  // namespace

ExprValue BoundExpr::Evaluate(const Row& row) const {
  return EvaluateNode(*root_, row);
}

bool BoundExpr::EvaluatePredicate(const Row& row) const {
  return std::get<bool>(Evaluate(row));
}

Value BoundExpr::EvaluateValue(const Row& row) const {
  ExprValue v = Evaluate(row);
  switch (v.index()) {
    case 0: return std::get<int64_t>(v);
    case 1: return std::get<double>(v);
    case 2: return std::get<std::string>(std::move(v));
    default: return int64_t{std::get<bool>(v) ? 1 : 0};
  }
}

}  // namespace dpkit
