#pragma once

// Generators for the studied sequence families. Index bases differ per
// family and are stated on each function; the resulting BinarySequence is
// plain position-agnostic storage.

#include <bit>
#include <cstdint>
#include <string>
#include <variant>

#include "prs/ecurve.hpp"
#include "prs/numtheory.hpp"
#include "prs/sequence.hpp"

namespace prs {

// e_n = (f(n)/p), or +1 when p | f(n); n = 1..p.
inline BinarySequence gen_legendre(const PrimeModulus& p, const PolyOverFp& f) {
  if (!(f.modulus() == p)) throw Error(ErrorCode::InvalidArgument, "polynomial modulus mismatch");
  if (f.is_zero() || f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "Legendre construction needs deg f >= 1");
  SequenceBuilder out(p);
  for (u64 n = 1; n <= p.value(); ++n) {
    const int chi = legendre_symbol(static_cast<i64>(f(n)), p);
    out.push(chi == 0 ? 1 : chi);
  }
  return std::move(out).build();
}

// e_n = +1 iff f(n) is invertible and r_p(f(n)^-1) < p/2; n = 0..p-1.
// With half_only the sequence stops at n = (p-1)/2, length (p+1)/2.
inline BinarySequence gen_inverse(const PrimeModulus& p, const PolyOverFp& f, bool half_only = false) {
  if (!(f.modulus() == p)) throw Error(ErrorCode::InvalidArgument, "polynomial modulus mismatch");
  const u64 last = half_only ? (p.value() - 1) / 2 : p.value() - 1;
  SequenceBuilder out(last + 1);
  for (u64 n = 0; n <= last; ++n) {
    const u64 v = f(n);
    if (v == 0) {
      out.push(-1);
      continue;
    }
    // p is odd, so the inverse is never exactly p/2.
    out.push(2 * mod_inverse(static_cast<i64>(v), p) < p.value() ? 1 : -1);
  }
  return std::move(out).build();
}

// e_n = (f(nG)/p) if f(nG) is a unit, +1 otherwise (including nG = O);
// n = 1..T, walked incrementally. G must have order exactly T.
inline BinarySequence gen_ec(const CurveParams& c, const CurvePoint& G, u64 T, const CurveFunction& f) {
  if (!on_curve(G, c)) throw Error(ErrorCode::InvalidPoint, to_string(G) + " is not on the curve");
  if (G.infinity) throw Error(ErrorCode::InvalidPoint, "generator must not be O");
  if (T == 0) throw Error(ErrorCode::InvalidArgument, "order T must be positive");
  SequenceBuilder out(T);
  CurvePoint P = CurvePoint::at_infinity();
  for (u64 n = 1; n <= T; ++n) {
    P = detail::ec_add_unchecked(P, G, c);
    if (P.infinity && n != T)
      throw Error(ErrorCode::InvalidArgument, "generator order " + std::to_string(n) + " is smaller than T");
    const auto v = f(P);
    const int chi = v ? legendre_symbol(static_cast<i64>(*v), c.p()) : 0;
    out.push(chi == 0 ? 1 : chi);
  }
  if (!P.infinity) throw Error(ErrorCode::InvalidArgument, "T * G != O; T is not the order of G");
  return std::move(out).build();
}

// (-1)^(number of adjacent "11" digit pairs of n), n = start..start+N-1.
inline BinarySequence gen_rudin_shapiro(std::size_t N, std::uint64_t start = 0) {
  SequenceBuilder out(N);
  for (std::uint64_t n = start; n < start + N; ++n) out.push((std::popcount(n & (n >> 1U)) & 1) ? -1 : 1);
  return std::move(out).build();
}

// (-1)^(binary digit sum of n), n = start..start+N-1.
inline BinarySequence gen_thue_morse(std::size_t N, std::uint64_t start = 0) {
  SequenceBuilder out(N);
  for (std::uint64_t n = start; n < start + N; ++n) out.push((std::popcount(n) & 1) ? -1 : 1);
  return std::move(out).build();
}

inline BinarySequence gen_periodic(const BinarySequence& pattern, std::size_t reps) {
  if (reps == 0) throw Error(ErrorCode::InvalidInput, "repetition count must be positive");
  if (pattern.size() > kMaxSequenceLength / reps) throw Error(ErrorCode::TooLarge, "sequence length exceeds 2^28");
  SequenceBuilder out(pattern.size() * reps);
  for (std::size_t r = 0; r < reps; ++r)
    for (std::size_t i = 0; i < pattern.size(); ++i) out.push(pattern[i]);
  return std::move(out).build();
}

struct LegendreSpec {
  PrimeModulus p;
  PolyOverFp f;
};

struct InverseSpec {
  PrimeModulus p;
  PolyOverFp f;
  bool half_only = false;
};

struct EllipticCurveSpec {
  CurveParams curve;
  CurvePoint G;
  u64 T;
  CurveFunction f;
};

struct RudinShapiroSpec {
  std::size_t N;
  std::uint64_t start = 0;
};

struct ThueMorseSpec {
  std::size_t N;
  std::uint64_t start = 0;
};

struct PeriodicSpec {
  BinarySequence pattern;
  std::size_t reps;
};

using GeneratorSpec =
    std::variant<LegendreSpec, InverseSpec, EllipticCurveSpec, RudinShapiroSpec, ThueMorseSpec, PeriodicSpec>;

inline BinarySequence generate(const GeneratorSpec& spec) {
  struct Visitor {
    BinarySequence operator()(const LegendreSpec& s) const { return gen_legendre(s.p, s.f); }
    BinarySequence operator()(const InverseSpec& s) const { return gen_inverse(s.p, s.f, s.half_only); }
    BinarySequence operator()(const EllipticCurveSpec& s) const { return gen_ec(s.curve, s.G, s.T, s.f); }
    BinarySequence operator()(const RudinShapiroSpec& s) const { return gen_rudin_shapiro(s.N, s.start); }
    BinarySequence operator()(const ThueMorseSpec& s) const { return gen_thue_morse(s.N, s.start); }
    BinarySequence operator()(const PeriodicSpec& s) const { return gen_periodic(s.pattern, s.reps); }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace prs
