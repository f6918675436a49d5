#pragma once

// Berlekamp-Massey over GF(2) on bit-packed data.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace prs {

struct LinearRecurrence {
  std::size_t L = 0;
  // s[n+L] = sum_{i<L} c[i] s[n+i] (mod 2) for every admissible n.
  std::vector<std::uint8_t> c;
};

namespace detail {

inline bool get_bit(const std::vector<std::uint64_t>& v, std::size_t i) { return (v[i / 64] >> (i % 64)) & 1U; }

// 64 bits of v starting at bit position `pos` (bits past the end read as 0).
inline std::uint64_t window(const std::vector<std::uint64_t>& v, std::size_t pos) {
  const std::size_t q = pos / 64, s = pos % 64;
  std::uint64_t w = q < v.size() ? v[q] >> s : 0;
  if (s != 0 && q + 1 < v.size()) w |= v[q + 1] << (64 - s);
  return w;
}

}  // namespace detail

// Shortest LFSR generating `bits` (0/1 values).
inline LinearRecurrence berlekamp_massey(std::span<const std::uint8_t> bits) {
  const std::size_t N = bits.size();
  const std::size_t words = N / 64 + 2;
  // r holds the sequence reversed: r[N-1-j] = s[j]. Then the discrepancy at
  // step n is the parity of C & (r >> (N-1-n)), with C(x) = 1 + C_1 x + ...
  std::vector<std::uint64_t> r(words, 0);
  for (std::size_t j = 0; j < N; ++j)
    if (bits[j]) r[(N - 1 - j) / 64] |= std::uint64_t{1} << ((N - 1 - j) % 64);

  std::vector<std::uint64_t> C(words, 0), B(words, 0), T;
  C[0] = B[0] = 1;
  std::size_t L = 0, m = 1;
  for (std::size_t n = 0; n < N; ++n) {
    unsigned parity = 0;
    const std::size_t base = N - 1 - n;
    for (std::size_t w = 0; w * 64 <= L; ++w) parity ^= std::popcount(C[w] & detail::window(r, base + w * 64)) & 1U;
    if (parity == 0) {
      ++m;
      continue;
    }
    if (2 * L <= n) T = C;
    // C ^= B << m
    const std::size_t q = m / 64, s = m % 64;
    for (std::size_t w = words; w-- > q;) {
      std::uint64_t v = B[w - q] << s;
      if (s != 0 && w > q) v |= B[w - q - 1] >> (64 - s);
      C[w] ^= v;
    }
    if (2 * L <= n) {
      L = n + 1 - L;
      B = std::move(T);
      m = 1;
    } else {
      ++m;
    }
  }

  LinearRecurrence out;
  out.L = L;
  out.c.resize(L);
  for (std::size_t i = 0; i < L; ++i) out.c[i] = detail::get_bit(C, L - i) ? 1 : 0;
  return out;
}

inline std::size_t linear_complexity(std::span<const std::uint8_t> bits) { return berlekamp_massey(bits).L; }

}  // namespace prs
