#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "lring/expr.hpp"

namespace lring {

/// Recursive-descent parser for the expression grammar:
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*' factor) | ('/' nat))*
///   factor  := atom ('^' nat)? | '-' factor
///   atom    := nat | ident | op '(' nat ',' expr ')' | '(' expr ')'
///
/// op is lambda, sigma or adams; 'L' and 't' are reserved leaves. Division is
/// only by integer literals. Other identifiers become session-interned free
/// operands unless bound explicitly (e.g. h1_X for a declared curve).
class ExprParser {
 public:
  explicit ExprParser(std::string_view src, std::map<std::string, OperandId> bound = {})
      : src_(src), bound_(std::move(bound)) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        e = e + parse_term();
      } else if (eat('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        e = e * parse_factor();
      } else if (eat('/')) {
        skip_ws();
        if (!std::isdigit(peek())) fail("division is only by rational literals");
        Integer d = parse_nat();
        if (d == 0) fail("division by zero");
        e = e * Expr::constant(Rational(Integer(1), d));
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    Expr a = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      if (!std::isdigit(peek())) fail("exponent must be a nonnegative integer");
      return Expr::pow(a, parse_small_nat());
    }
    return a;
  }

  Expr parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      advance();
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(c)) return Expr::constant(Rational(parse_nat(), Integer(1)));
    if (std::isalpha(c) || c == '_') {
      std::string id = parse_ident();
      if (id == "lambda" || id == "sigma" || id == "adams") {
        RingOpKind kind = id == "lambda"  ? RingOpKind::lambda
                          : id == "sigma" ? RingOpKind::sigma
                                          : RingOpKind::adams;
        skip_ws();
        expect('(');
        skip_ws();
        if (!std::isdigit(peek())) fail("operator degree must be first and an integer");
        int n = parse_small_nat();
        skip_ws();
        expect(',');
        Expr child = parse_expr();
        skip_ws();
        expect(')');
        if (kind == RingOpKind::adams && n == 0) fail("adams degree 0 is undefined");
        return apply_ring_op(kind, n, child);
      }
      if (id == "L") return Expr::leaf(lefschetz_id());
      if (id == "t") return Expr::leaf(t_var_id());
      auto it = bound_.find(id);
      if (it != bound_.end()) return Expr::leaf(it->second);
      return Expr::leaf(OperandTable::instance().intern_free(id));
    }
    if (pos_ >= src_.size()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  Integer parse_nat() {
    std::string digits;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      digits += src_[pos_];
      advance();
    }
    if (digits.empty()) fail("expected an integer");
    return Integer(digits);
  }

  /// Degrees and exponents are structural and must stay small.
  int parse_small_nat() {
    Integer v = parse_nat();
    if (v > 1000000) fail("degree or exponent too large");
    return static_cast<int>(v.get_si());
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool eat(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line_, col_); }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  std::map<std::string, OperandId> bound_;
};

inline Expr parse_expr(std::string_view text, std::map<std::string, OperandId> bound = {}) {
  return ExprParser(text, std::move(bound)).parse();
}

}  // namespace lring
