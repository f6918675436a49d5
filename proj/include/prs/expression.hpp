#pragma once

// Polynomials in x and y over F_p, and a small parser for the textual form
// used on the command line: "x^31+x+y+5", "x*(x^2+1)*(x^2+4)", "-3*x+2".

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prs/error.hpp"
#include "prs/numtheory.hpp"

namespace prs {

class BivariatePoly {
 public:
  using Exponents = std::pair<unsigned, unsigned>;  // (deg in x, deg in y)

  explicit BivariatePoly(u64 p) : p_(p) {}

  static BivariatePoly constant(u64 p, u64 c) {
    BivariatePoly r(p);
    r.add_term(0, 0, c);
    return r;
  }

  static BivariatePoly variable(u64 p, char name) {
    BivariatePoly r(p);
    r.add_term(name == 'x' ? 1 : 0, name == 'y' ? 1 : 0, 1);
    return r;
  }

  u64 modulus() const noexcept { return p_; }
  const std::map<Exponents, u64>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  unsigned degree_in(char name) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, name == 'x' ? e.first : e.second);
    return d;
  }

  void add_term(unsigned dx, unsigned dy, u64 c) {
    c %= p_;
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({dx, dy}, c);
    if (!inserted) {
      it->second = add_mod(it->second, c, p_);
      if (it->second == 0) terms_.erase(it);
    }
  }

  BivariatePoly operator+(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
    return r;
  }

  BivariatePoly operator-() const {
    BivariatePoly r(p_);
    for (const auto& [e, c] : terms_) r.add_term(e.first, e.second, p_ - c);
    return r;
  }

  BivariatePoly operator-(const BivariatePoly& o) const { return *this + (-o); }

  BivariatePoly operator*(const BivariatePoly& o) const {
    BivariatePoly r(p_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) r.add_term(a.first + b.first, a.second + b.second, mul_mod(ca, cb, p_));
    return r;
  }

  BivariatePoly pow(unsigned e) const {
    BivariatePoly result = constant(p_, 1);
    BivariatePoly base = *this;
    while (e != 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e != 0) base = base * base;
    }
    return result;
  }

  u64 eval(u64 x, u64 y) const {
    u64 acc = 0;
    for (const auto& [e, c] : terms_)
      acc = add_mod(acc, mul_mod(c, mul_mod(mod_pow(x, e.first, p_), mod_pow(y, e.second, p_), p_), p_), p_);
    return acc;
  }

  PolyOverFp to_univariate(const PrimeModulus& p) const {
    if (p.value() != p_) throw Error(ErrorCode::InvalidArgument, "modulus mismatch");
    std::vector<i64> coeffs(degree_in('x') + 1, 0);
    for (const auto& [e, c] : terms_) {
      if (e.second != 0) throw Error(ErrorCode::InvalidArgument, "polynomial in x expected, found y");
      coeffs[e.first] = static_cast<i64>(c);
    }
    return PolyOverFp(p, coeffs);
  }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  u64 p_;
  std::map<Exponents, u64> terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, u64 p, bool allow_y) : text_(text), p_(p), allow_y_(allow_y) {}

  BivariatePoly parse() {
    BivariatePoly r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, "polynomial '" + std::string(text_) + "': " + what + " at " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  u64 number() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("number expected");
    u128 v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v >> 64U) fail("number too large");
      ++pos_;
    }
    return static_cast<u64>(v);
  }

  BivariatePoly expr() {
    BivariatePoly r = accept('-') ? -term() : (accept('+'), term());
    for (;;) {
      if (accept('+')) {
        r = r + term();
      } else if (accept('-')) {
        r = r - term();
      } else {
        return r;
      }
    }
  }

  BivariatePoly term() {
    BivariatePoly r = power();
    while (accept('*')) r = r * power();
    return r;
  }

  BivariatePoly power() {
    BivariatePoly base = atom();
    if (accept('^')) {
      const u64 e = number();
      if (e > 100000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  BivariatePoly atom() {
    skip_ws();
    if (accept('(')) {
      BivariatePoly r = expr();
      if (!accept(')')) fail("')' expected");
      return r;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'y')) {
      const char v = text_[pos_++];
      if (v == 'y' && !allow_y_) fail("variable y not allowed here");
      return BivariatePoly::variable(p_, v);
    }
    return BivariatePoly::constant(p_, number() % p_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  u64 p_;
  bool allow_y_;
};

}  // namespace detail

inline BivariatePoly parse_bivariate(std::string_view text, u64 p) { return detail::PolyParser(text, p, true).parse(); }

inline PolyOverFp parse_polynomial(std::string_view text, const PrimeModulus& p) {
  return detail::PolyParser(text, p, false).parse().to_univariate(p);
}

}  // namespace prs
