// Polynomial expression parser.
//
// Grammar (whitespace insignificant, no implicit multiplication):
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' integer]
//   primary := integer ['/' integer] | variable | '(' expr ')' | '-' factor
//   variable:= x<k> | T<k> | Z<i>_<j> | Y<j>
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "reesdual/poly.hpp"

namespace reesdual {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

template <class K>
class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr<K> ring) : s_(text), ring_(std::move(ring)) {}

  Poly<K> parse() {
    skip();
    if (at_end()) throw ParseError(pos_, "empty expression");
    Poly<K> p = expr();
    skip();
    if (!at_end()) throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return at_end() ? '\0' : s_[pos_];
  }

  Poly<K> expr() {
    Poly<K> acc(ring_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly<K> t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly<K> term() {
    Poly<K> acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  Poly<K> factor() {
    Poly<K> base = primary();
    if (eat('^')) {
      skip();
      std::size_t at = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(at, "exponent must be a non-negative integer literal");
      mpz_class e = integer();
      if (e > 1000) throw ParseError(at, "exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
      skip();
      if (!at_end() && s_[pos_] == '^') throw ParseError(pos_, "chained '^' is ambiguous; use parentheses");
    }
    return base;
  }

  Poly<K> primary() {
    skip();
    if (at_end()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<K> inner = expr();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError(at, "expected denominator after '/'");
        den = integer();
        if (den == 0) throw ParseError(at, "zero denominator");
      }
      try {
        return Poly<K>::constant(ring_, ring_->field.from_ratio(num, den));
      } catch (const std::domain_error& e) {
        throw ParseError(pos_, e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Poly<K> variable() {
    std::size_t start = pos_;
    ++pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    auto idx = ring_->vars.index_of(name);
    if (!idx) throw ParseError(start, "unknown variable '" + name + "'");
    return Poly<K>::variable(ring_, *idx);
  }

  std::string_view s_;
  RingPtr<K> ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class K>
Poly<K> parse_poly(std::string_view text, const RingPtr<K>& ring) {
  return detail::PolyParser<K>(text, ring).parse();
}

}  // namespace reesdual
