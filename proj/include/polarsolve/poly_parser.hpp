#ifndef POLARSOLVE_POLY_PARSER_HPP
#define POLARSOLVE_POLY_PARSER_HPP

// Text grammar for polynomials over Q:
//
//   expr    := [+|-] term { (+|-) term }
//   term    := power { '*' power }
//   power   := primary [ '^' digits ]
//   primary := digits [ '/' digits ] | 'X' digits | '(' expr ')'
//
// Whitespace (including newlines) is ignored between tokens.

#include <polarsolve/multipoly.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarsolve {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  MultiPoly expr() {
    MultiPoly acc(nvars_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    MultiPoly t = term();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'X' || c == 'x') {
      std::size_t at = pos_++;
      std::string idx = digits();
      unsigned long j = idx.size() > 6 ? 0 : std::stoul(idx);
      if (j < 1 || j > nvars_) {
        pos_ = at;
        fail("variable X" + idx + " outside X1..X" + std::to_string(nvars_));
      }
      return MultiPoly::variable(nvars_, j - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      if (accept('/')) den = digits();
      Integer d(den, 10);
      if (d == 0) fail("zero denominator");
      return MultiPoly::constant(nvars_, make_rational(Integer(num, 10), d));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial in X1..X{nvars}. Throws ParseError with the position.
inline MultiPoly parse_polynomial(std::string_view text, std::size_t nvars) {
  return detail::PolyParser(text, nvars).parse();
}

}  // namespace polarsolve

#endif  // POLARSOLVE_POLY_PARSER_HPP
