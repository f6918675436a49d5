#pragma once

// Exact residue arithmetic over 64-bit moduli. Products use 128-bit
// intermediates; nothing here allocates except the polynomial type.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "prs/error.hpp"

namespace prs {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

// Least non-negative representative of a signed value.
inline u64 reduce(i64 n, u64 m) {
  if (m == 0) throw Error(ErrorCode::InvalidModulus, "modulus 0");
  const i64 r = static_cast<i64>(static_cast<u64>(n < 0 ? -(n + 1) : n) % m);
  if (n >= 0) return static_cast<u64>(r);
  return m - 1 - static_cast<u64>(r);
}

inline u64 mod_pow(u64 base, u64 exponent, u64 m) {
  if (m == 0) throw Error(ErrorCode::InvalidModulus, "modulus 0");
  u64 result = 1 % m;
  base %= m;
  while (exponent != 0) {
    if (exponent & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1U;
  }
  return result;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This witness set is deterministic for every n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// An odd prime p < 2^63.
class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(p) {
    if (p < 3 || (p >> 63U) != 0 || !is_prime(p))
      throw Error(ErrorCode::InvalidModulus, std::to_string(p) + " is not an odd prime below 2^63");
  }

  u64 value() const noexcept { return p_; }
  operator u64() const noexcept { return p_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
};

// Euler's criterion; the reference definition.
inline int legendre_symbol(i64 n, const PrimeModulus& p) {
  const u64 r = reduce(n, p);
  if (r == 0) return 0;
  return mod_pow(r, (p.value() - 1) / 2, p) == 1 ? 1 : -1;
}

// Binary reciprocity-based Jacobi symbol for odd m; fast path for the
// Legendre symbol when m is prime.
inline int jacobi_symbol(u64 a, u64 m) {
  if (m == 0 || (m & 1U) == 0) throw Error(ErrorCode::InvalidModulus, "Jacobi symbol needs odd modulus");
  a %= m;
  int sign = 1;
  while (a != 0) {
    while ((a & 1U) == 0) {
      a >>= 1U;
      const u64 r = m & 7U;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, m);
    if ((a & 3U) == 3 && (m & 3U) == 3) sign = -sign;
    a %= m;
  }
  return m == 1 ? sign : 0;
}

inline u64 mod_inverse(i64 a, const PrimeModulus& p) {
  const u64 r = reduce(a, p);
  if (r == 0) throw Error(ErrorCode::NotInvertible, std::to_string(a) + " mod " + std::to_string(p.value()));
  // Extended Euclid in signed 128-bit to avoid the Fermat exponentiation.
  __int128 old_r = static_cast<__int128>(p.value()), cur_r = r;
  __int128 old_s = 0, cur_s = 1;
  while (cur_r != 0) {
    const __int128 q = old_r / cur_r;
    std::tie(old_r, cur_r) = std::make_pair(cur_r, old_r - q * cur_r);
    std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - q * cur_s);
  }
  __int128 inv = old_s % static_cast<__int128>(p.value());
  if (inv < 0) inv += p.value();
  return static_cast<u64>(inv);
}

// Distinct prime factors by trial division.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q <= n / q; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_primitive_root(i64 g, const PrimeModulus& p) {
  const u64 r = reduce(g, p);
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "0 is never a primitive root");
  const u64 order = p.value() - 1;
  for (u64 q : prime_factors(order)) {
    if (mod_pow(r, order / q, p) == 1) return false;
  }
  return true;
}

// Primitive-root test for any prime modulus, including 2 and 3; used for
// the group order T of an elliptic curve.
inline bool is_primitive_root_mod(u64 g, u64 prime) {
  if (!is_prime(prime)) throw Error(ErrorCode::InvalidModulus, std::to_string(prime) + " is not prime");
  g %= prime;
  if (g == 0) return false;
  const u64 order = prime - 1;
  for (u64 q : prime_factors(order)) {
    if (mod_pow(g, order / q, prime) == 1) return false;
  }
  return true;
}

// Polynomial over F_p with coefficients stored lowest degree first.
class PolyOverFp {
 public:
  explicit PolyOverFp(const PrimeModulus& p) : p_(p) {}

  PolyOverFp(const PrimeModulus& p, std::span<const i64> coefficients) : p_(p) {
    coeffs_.reserve(coefficients.size());
    for (i64 c : coefficients) coeffs_.push_back(reduce(c, p));
    trim();
  }

  PolyOverFp(const PrimeModulus& p, std::initializer_list<i64> coefficients)
      : PolyOverFp(p, std::span<const i64>(coefficients.begin(), coefficients.size())) {}

  static PolyOverFp monomial(const PrimeModulus& p, std::size_t degree, u64 coefficient = 1) {
    PolyOverFp f(p);
    f.coeffs_.assign(degree + 1, 0);
    f.coeffs_[degree] = coefficient % p.value();
    f.trim();
    return f;
  }

  const PrimeModulus& modulus() const noexcept { return p_; }
  std::span<const u64> coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  u64 coefficient(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

  u64 operator()(u64 x) const {
    u64 acc = 0;
    x %= p_.value();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = add_mod(mul_mod(acc, x, p_), *it, p_);
    return acc;
  }

  PolyOverFp operator+(const PolyOverFp& o) const {
    PolyOverFp r(p_);
    r.coeffs_.assign(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = add_mod(coefficient(i), o.coefficient(i), p_);
    r.trim();
    return r;
  }

  PolyOverFp operator-(const PolyOverFp& o) const {
    PolyOverFp r(p_);
    r.coeffs_.assign(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = sub_mod(coefficient(i), o.coefficient(i), p_);
    r.trim();
    return r;
  }

  PolyOverFp operator*(const PolyOverFp& o) const {
    PolyOverFp r(p_);
    if (is_zero() || o.is_zero()) return r;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        r.coeffs_[i + j] = add_mod(r.coeffs_[i + j], mul_mod(coeffs_[i], o.coeffs_[j], p_), p_);
    r.trim();
    return r;
  }

  PolyOverFp derivative() const {
    PolyOverFp r(p_);
    if (coeffs_.size() <= 1) return r;
    r.coeffs_.resize(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r.coeffs_[i - 1] = mul_mod(coeffs_[i], i % p_.value(), p_);
    r.trim();
    return r;
  }

  // Remainder of division by a nonzero divisor.
  PolyOverFp operator%(const PolyOverFp& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    PolyOverFp r = *this;
    const u64 lead_inv = mod_inverse(static_cast<i64>(divisor.coeffs_.back()), p_);
    while (!r.is_zero() && r.degree() >= divisor.degree()) {
      const std::size_t shift = r.degree() - divisor.degree();
      const u64 factor = mul_mod(r.coeffs_.back(), lead_inv, p_);
      for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i)
        r.coeffs_[i + shift] = sub_mod(r.coeffs_[i + shift], mul_mod(factor, divisor.coeffs_[i], p_), p_);
      r.trim();
    }
    return r;
  }

  friend bool operator==(const PolyOverFp& a, const PolyOverFp& b) { return a.p_ == b.p_ && a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  PrimeModulus p_;
  std::vector<u64> coeffs_;
};

inline u64 poly_eval(const PolyOverFp& f, u64 x) { return f(x); }

inline PolyOverFp poly_gcd(PolyOverFp a, PolyOverFp b) {
  while (!b.is_zero()) {
    PolyOverFp r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// No repeated root in the algebraic closure, i.e. gcd(f, f') is constant.
// Meaningful for 0 < deg f < p.
inline bool is_squarefree(const PolyOverFp& f) {
  if (f.is_zero()) return false;
  if (f.degree() == 0) return true;
  const PolyOverFp d = f.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(f, d).degree() == 0;
}

}  // namespace prs
