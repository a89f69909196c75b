#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "lcmlab/error.hpp"
#include "lcmlab/polynomial.hpp"

namespace lcmlab {

namespace detail {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := int | 'x' | '(' expr ')'
// The optional leading sign lets canonical output such as "-x^2 + 1" parse.
class PolynomialParser {
 public:
  static constexpr unsigned long kMaxExponent = 4096;

  explicit PolynomialParser(std::string_view text) : text_(text) {}

  IntPolynomial parse() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError("empty polynomial", pos_);
    IntPolynomial result = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return result;
  }

 private:
  IntPolynomial expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = (text_[pos_] == '-');
      ++pos_;
    }
    IntPolynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      IntPolynomial rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  IntPolynomial term() {
    IntPolynomial acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  IntPolynomial factor() {
    IntPolynomial b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("expected exponent", pos_);
      unsigned long e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (e > kMaxExponent) throw SyntaxError("exponent too large", start);
        ++pos_;
      }
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  IntPolynomial base() {
    skip_ws();
    char c = peek();
    if (c == 'x' || c == 'X') {
      ++pos_;
      return IntPolynomial::x();
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      IntPolynomial inner = expr();
      skip_ws();
      if (peek() != ')') throw SyntaxError("unbalanced '(' opened at " + std::to_string(open), pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return IntPolynomial::constant(BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline IntPolynomial parse_polynomial(std::string_view text) {
  return detail::PolynomialParser(text).parse();
}

}  // namespace lcmlab
