#pragma once

// Discrete Fourier transform of arbitrary length: radix-2 for powers of two,
// Bluestein's chirp-z reduction otherwise.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace prs {

using Complex = std::complex<double>;

namespace detail {

inline void fft_pow2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1U) {
    const double angle = 2 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1 : -1);
    const std::size_t half = len / 2;
    // Twiddles computed directly, not by repeated multiplication, to keep
    // rounding error flat for long transforms.
    std::vector<Complex> w(half);
    for (std::size_t k = 0; k < half; ++k) w[k] = std::polar(1.0, angle * static_cast<double>(k));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

}  // namespace detail

// X_k = sum_j x_j exp(-2 pi i jk / n).
inline std::vector<Complex> dft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if ((n & (n - 1)) == 0) {
    std::vector<Complex> a = x;
    detail::fft_pow2(a, false);
    return a;
  }
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1U;
  // chirp_k = exp(-i pi k^2 / n); k^2 is reduced mod 2n before scaling.
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const unsigned long long k2 = static_cast<unsigned long long>(k) * k % (2ULL * n);
    chirp[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
  }
  std::vector<Complex> a(m), b(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  detail::fft_pow2(a, false);
  detail::fft_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  detail::fft_pow2(a, true);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  return out;
}

}  // namespace prs
