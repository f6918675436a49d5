#pragma once

// Short Weierstrass curves y^2 = x^3 + Ax + B over F_p in affine coordinates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "prs/error.hpp"
#include "prs/expression.hpp"
#include "prs/numtheory.hpp"

namespace prs {

class CurveParams {
 public:
  CurveParams(const PrimeModulus& p, i64 a, i64 b) : p_(p), a_(reduce(a, p)), b_(reduce(b, p)) {
    if (p.value() <= 3) throw Error(ErrorCode::InvalidModulus, "curve needs p > 3");
    // 4A^3 + 27B^2 != 0 (mod p); the factor -16 is a unit for p > 3.
    const u64 disc = add_mod(mul_mod(4, mul_mod(a_, mul_mod(a_, a_, p), p), p), mul_mod(27, mul_mod(b_, b_, p), p), p);
    if (disc == 0) throw Error(ErrorCode::InvalidArgument, "singular curve (zero discriminant)");
  }

  const PrimeModulus& p() const noexcept { return p_; }
  u64 a() const noexcept { return a_; }
  u64 b() const noexcept { return b_; }

  // x^3 + Ax + B
  u64 rhs(u64 x) const {
    const u64 x2 = mul_mod(x, x, p_);
    return add_mod(add_mod(mul_mod(x2, x, p_), mul_mod(a_, x, p_), p_), b_, p_);
  }

  friend bool operator==(const CurveParams&, const CurveParams&) = default;

 private:
  PrimeModulus p_;
  u64 a_;
  u64 b_;
};

struct CurvePoint {
  bool infinity = true;
  u64 x = 0;
  u64 y = 0;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(u64 x, u64 y) { return {false, x, y}; }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

inline std::string to_string(const CurvePoint& P) {
  if (P.infinity) return "O";
  return "(" + std::to_string(P.x) + "," + std::to_string(P.y) + ")";
}

inline bool on_curve(const CurvePoint& P, const CurveParams& c) {
  if (P.infinity) return true;
  if (P.x >= c.p() || P.y >= c.p()) return false;
  return mul_mod(P.y, P.y, c.p()) == c.rhs(P.x);
}

inline CurvePoint ec_neg(const CurvePoint& P, const CurveParams& c) {
  if (P.infinity || P.y == 0) return P;
  return CurvePoint::affine(P.x, c.p().value() - P.y);
}

namespace detail {

inline CurvePoint ec_add_unchecked(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const PrimeModulus& p = c.p();
  u64 slope = 0;
  if (P.x == Q.x) {
    if (add_mod(P.y, Q.y, p) == 0) return CurvePoint::at_infinity();
    // Tangent: (3x^2 + A) / (2y); P.y != 0 here since P.y + Q.y != 0 with P == Q.
    const u64 num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p), p), c.a(), p);
    slope = mul_mod(num, mod_inverse(static_cast<i64>(mul_mod(2, P.y, p)), p), p);
  } else {
    slope = mul_mod(sub_mod(Q.y, P.y, p), mod_inverse(static_cast<i64>(sub_mod(Q.x, P.x, p)), p), p);
  }
  const u64 x3 = sub_mod(sub_mod(mul_mod(slope, slope, p), P.x, p), Q.x, p);
  const u64 y3 = sub_mod(mul_mod(slope, sub_mod(P.x, x3, p), p), P.y, p);
  return CurvePoint::affine(x3, y3);
}

}  // namespace detail

inline CurvePoint ec_add(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c) {
  if (!on_curve(P, c)) throw Error(ErrorCode::InvalidPoint, to_string(P) + " is not on the curve");
  if (!on_curve(Q, c)) throw Error(ErrorCode::InvalidPoint, to_string(Q) + " is not on the curve");
  return detail::ec_add_unchecked(P, Q, c);
}

inline CurvePoint ec_scalar_mul(u64 n, const CurvePoint& P, const CurveParams& c) {
  if (!on_curve(P, c)) throw Error(ErrorCode::InvalidPoint, to_string(P) + " is not on the curve");
  CurvePoint result = CurvePoint::at_infinity();
  CurvePoint addend = P;
  while (n != 0) {
    if (n & 1U) result = detail::ec_add_unchecked(result, addend, c);
    n >>= 1U;
    if (n != 0) addend = detail::ec_add_unchecked(addend, addend, c);
  }
  return result;
}

inline constexpr u64 kDefaultPointCountLimit = u64{1} << 26U;

// #E(F_p) = p + 1 + sum_x (x^3 + Ax + B / p), by an O(p) sweep.
inline u64 count_points(const CurveParams& c, u64 limit = kDefaultPointCountLimit) {
  const u64 p = c.p().value();
  if (p > limit) throw Error(ErrorCode::TooLarge, "p = " + std::to_string(p) + " exceeds the sweep limit");
  i64 total = static_cast<i64>(p) + 1;
  for (u64 x = 0; x < p; ++x) total += jacobi_symbol(c.rhs(x), p);
  return static_cast<u64>(total);
}

// A polynomial in the coordinate functions x, y, viewed in F_p[E]: powers of
// y above 1 are rewritten with y^2 = x^3 + Ax + B.
class CurveFunction {
 public:
  CurveFunction(const CurveParams& curve, const BivariatePoly& f) : curve_(curve), f_(reduce_y(curve, f)) {
    if (f.modulus() != curve.p().value()) throw Error(ErrorCode::InvalidArgument, "modulus mismatch");
  }

  CurveFunction(const CurveParams& curve, std::string_view text)
      : CurveFunction(curve, parse_bivariate(text, curve.p().value())) {}

  const BivariatePoly& polynomial() const noexcept { return f_; }

  // Pole order at O, with deg x = 2 and deg y = 3.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : f_.terms()) d = std::max(d, 2 * e.first + 3 * e.second);
    return d;
  }

  std::optional<u64> operator()(const CurvePoint& P) const {
    if (P.infinity) return std::nullopt;
    return f_.eval(P.x, P.y);
  }

 private:
  static BivariatePoly reduce_y(const CurveParams& curve, const BivariatePoly& f) {
    const u64 p = curve.p().value();
    BivariatePoly cubic(p);
    cubic.add_term(3, 0, 1);
    cubic.add_term(1, 0, curve.a());
    cubic.add_term(0, 0, curve.b());
    BivariatePoly out(p);
    for (const auto& [e, c] : f.terms()) {
      BivariatePoly term(p);
      term.add_term(e.first, e.second % 2, c);
      out = out + term * cubic.pow(e.second / 2);
    }
    return out;
  }

  CurveParams curve_;
  BivariatePoly f_;
};

// Value of f at an affine point; UndefinedAtInfinity for O.
inline u64 curve_function_eval(const CurveFunction& f, const CurvePoint& P) {
  const auto v = f(P);
  if (!v) throw Error(ErrorCode::UndefinedAtInfinity, "curve function evaluated at O");
  return *v;
}

}  // namespace prs
