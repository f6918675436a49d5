#pragma once

// Pseudorandomness measures of a +-1 sequence E_N = (e_1, ..., e_N):
//
//   W(E)   = max_{a,b,t} | sum_{j=0}^{t-1} e_{a+jb} |,   1 <= a <= a+(t-1)b <= N
//   C_k(E) = max_{M,D}   | sum_{n=1}^{M} e_{n+d_1} ... e_{n+d_k} |,  0 <= d_1 < ... < d_k <= N-M
//   Q_k(E) = max_{a,b,t,D} | sum_{j=0}^{t} e_{a+jb+d_1} ... e_{a+jb+d_k} |, all subscripts in [1,N]
//   N_k(E) = max_X max_{0<M<=N+1-k} | #{0 <= n < M : (e_{n+1..n+k}) = X} - M/2^k |
//
// Every search returns the maximizing parameters. Ties resolve to the
// smallest parameters in the order documented on each function, so serial
// and multi-threaded runs agree bit for bit.
//
// Searches may be restricted (cap on the step b, cap on the largest lag
// d_k, plus random lag tuples beyond the cap); the value is then a lower
// bound for the measure and `exact` is false.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prs/error.hpp"
#include "prs/parallel.hpp"
#include "prs/sequence.hpp"

namespace prs {

inline constexpr double kDefaultWorkBudget = 1e9;

struct SearchBounds {
  std::optional<std::size_t> b_max;  // nullopt: every admissible step
  std::optional<std::size_t> d_max;  // nullopt: every admissible lag
  std::size_t sample_count = 0;      // random lag tuples with d_k > d_max
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double work_budget = kDefaultWorkBudget;

  static SearchBounds exact() { return {}; }

  static SearchBounds restricted(std::size_t b_max, std::size_t d_max, std::size_t samples = 0,
                                 std::uint64_t seed = 0) {
    SearchBounds s;
    s.b_max = b_max;
    s.d_max = d_max;
    s.sample_count = samples;
    s.seed = seed;
    return s;
  }
};

enum class MeasureKind { WellDistribution, Correlation, Combined, Normality };

struct Witness {
  std::size_t a = 0;              // 1-based start (W, Q_k)
  std::size_t b = 0;              // step (W, Q_k)
  std::size_t t = 0;              // W: number of terms; Q_k: upper summation index (t+1 terms)
  std::size_t M = 0;              // C_k: summation length; N_k: window count
  std::vector<std::size_t> D;     // lag tuple (C_k, Q_k)
  std::vector<int> pattern;       // N_k: the pattern X as +-1 values

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct MeasureResult {
  // Measure value = numerator / denominator; the denominator is 1 except for
  // N_k, where it is 2^k.
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  Witness witness;
  bool exact = false;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  friend bool operator==(const MeasureResult&, const MeasureResult&) = default;
};

// ---------------------------------------------------------------------------
// Sums at explicit parameters (used to validate witnesses).

inline long long well_distribution_sum(const BinarySequence& E, std::size_t a, std::size_t b, std::size_t t) {
  const std::size_t N = E.size();
  if (a < 1 || b < 1 || t < 1 || a + (t - 1) * b > N) throw Error(ErrorCode::InvalidInput, "W parameters out of range");
  long long s = 0;
  for (std::size_t j = 0; j < t; ++j) s += E[a - 1 + j * b];
  return s;
}

inline long long correlation_sum(const BinarySequence& E, std::span<const std::size_t> D, std::size_t M) {
  const std::size_t N = E.size();
  if (D.empty() || M < 1) throw Error(ErrorCode::InvalidInput, "C_k parameters out of range");
  for (std::size_t i = 1; i < D.size(); ++i)
    if (D[i] <= D[i - 1]) throw Error(ErrorCode::InvalidInput, "lags must be strictly increasing");
  if (D.back() + M > N) throw Error(ErrorCode::InvalidInput, "d_k > N - M");
  long long s = 0;
  for (std::size_t n = 1; n <= M; ++n) {
    int prod = 1;
    for (std::size_t d : D) prod *= E[n + d - 1];
    s += prod;
  }
  return s;
}

inline long long combined_sum(const BinarySequence& E, std::size_t a, std::size_t b, std::size_t t,
                              std::span<const std::size_t> D) {
  const std::size_t N = E.size();
  if (D.empty() || a < 1 || b < 1) throw Error(ErrorCode::InvalidInput, "Q_k parameters out of range");
  for (std::size_t i = 1; i < D.size(); ++i)
    if (D[i] <= D[i - 1]) throw Error(ErrorCode::InvalidInput, "lags must be strictly increasing");
  if (a + t * b + D.back() > N) throw Error(ErrorCode::InvalidInput, "subscript exceeds N");
  long long s = 0;
  for (std::size_t j = 0; j <= t; ++j) {
    int prod = 1;
    for (std::size_t d : D) prod *= E[a - 1 + j * b + d];
    s += prod;
  }
  return s;
}

// |count * 2^k - M| for pattern X over windows n = 0..M-1.
inline std::int64_t normality_deviation_scaled(const BinarySequence& E, std::span<const int> X, std::size_t M) {
  const std::size_t k = X.size();
  if (k < 1 || k > 24 || M < 1 || M + k - 1 > E.size())
    throw Error(ErrorCode::InvalidInput, "N_k parameters out of range");
  std::int64_t count = 0;
  for (std::size_t n = 0; n < M; ++n) {
    bool match = true;
    for (std::size_t i = 0; i < k && match; ++i) match = E[n + i] == X[i];
    count += match ? 1 : 0;
  }
  return std::llabs(count * (std::int64_t{1} << k) - static_cast<std::int64_t>(M));
}

// ---------------------------------------------------------------------------
// Work estimates and default bounds.

namespace detail {

inline double binomial(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (double i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::size_t effective_b(const SearchBounds& s, std::size_t N) {
  const std::size_t cap = N > 1 ? N - 1 : 1;
  return std::max<std::size_t>(1, std::min(s.b_max.value_or(cap), cap));
}

inline std::size_t effective_d(const SearchBounds& s, std::size_t N) { return std::min(s.d_max.value_or(N - 1), N - 1); }

}  // namespace detail

// Inner-loop operation count of a search with the given bounds.
inline double work_estimate(MeasureKind kind, std::size_t N, std::size_t k, const SearchBounds& s) {
  const double n = static_cast<double>(N);
  const double b = static_cast<double>(detail::effective_b(s, N));
  const double d = static_cast<double>(detail::effective_d(s, N));
  switch (kind) {
    case MeasureKind::WellDistribution: return n * b;
    case MeasureKind::Correlation:
      return detail::binomial(d + 1, static_cast<double>(k)) * n + static_cast<double>(s.sample_count) * n;
    case MeasureKind::Combined: return detail::binomial(d, static_cast<double>(k) - 1) * b * n;
    case MeasureKind::Normality: return n + std::ldexp(1.0, static_cast<int>(k));
  }
  return 0.0;
}

// Exact when the full search fits the budget; otherwise b_max = 64,
// d_max = 32 and 10^4 random lag tuples.
inline SearchBounds default_bounds(MeasureKind kind, std::size_t N, std::size_t k, std::uint64_t seed = 0) {
  SearchBounds s = SearchBounds::exact();
  s.seed = seed;
  if (work_estimate(kind, N, k, s) <= s.work_budget) return s;
  s.b_max = 64;
  s.d_max = 32;
  if (kind == MeasureKind::Correlation && k >= 2) s.sample_count = 10000;
  return s;
}

namespace detail {
inline double pruned_w_work(const std::vector<std::int8_t>& g);
}  // namespace detail

// As above, but W is searched exhaustively whenever its pruned search fits
// the budget for this particular sequence.
inline SearchBounds default_bounds(MeasureKind kind, const BinarySequence& E, std::size_t k, std::uint64_t seed = 0) {
  if (kind == MeasureKind::WellDistribution) {
    std::vector<std::int8_t> g(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) g[i] = static_cast<std::int8_t>(E[i]);
    SearchBounds s = SearchBounds::exact();
    s.seed = seed;
    if (detail::pruned_w_work(g) <= s.work_budget) return s;
  }
  return default_bounds(kind, E.size(), k, seed);
}

namespace detail {

inline void check_budget(MeasureKind kind, std::size_t N, std::size_t k, const SearchBounds& s) {
  if (s.b_max && s.d_max) return;
  const bool needs_b = kind == MeasureKind::WellDistribution || kind == MeasureKind::Combined;
  const bool needs_d = kind == MeasureKind::Correlation || kind == MeasureKind::Combined;
  if ((needs_b && !s.b_max) || (needs_d && !s.d_max)) {
    const double w = work_estimate(kind, N, k, s);
    if (w > s.work_budget)
      throw Error(ErrorCode::BudgetExceeded, "unbounded search needs ~" + std::to_string(static_cast<long long>(w)) +
                                                 " operations; set b_max/d_max");
  }
}

// Extremes of the prefix sums P_0 = 0, P_j = g[r] + g[r+b] + ... (j terms).
// The best contiguous run is the segment between the first extreme and the
// first later occurrence of the opposite extreme; this is also the
// lexicographically smallest (start, length) among optimal runs.
struct Run {
  long long value = 0;
  std::size_t start = 0;  // 0-based element index
  std::size_t terms = 0;
};

inline long long progression_span(const std::int8_t* g, std::size_t len, std::size_t b, std::size_t r) {
  long long P = 0, hi = 0, lo = 0;
  for (std::size_t i = r; i < len; i += b) {
    P += g[i];
    hi = std::max(hi, P);
    lo = std::min(lo, P);
  }
  return hi - lo;
}

inline Run progression_run(const std::int8_t* g, std::size_t len, std::size_t b, std::size_t r) {
  long long P = 0, hi = 0, lo = 0;
  for (std::size_t i = r; i < len; i += b) {
    P += g[i];
    hi = std::max(hi, P);
    lo = std::min(lo, P);
  }
  Run run;
  run.value = hi - lo;
  P = 0;
  std::size_t j = 0;
  long long target = 0;
  std::size_t first = 0;
  bool found = false;
  if (hi == 0 || lo == 0) {
    found = true;
    first = 0;
    target = hi == 0 ? lo : hi;
  }
  for (std::size_t i = r; i < len; i += b) {
    P += g[i];
    ++j;
    if (!found) {
      if (P == hi || P == lo) {
        found = true;
        first = j;
        target = P == hi ? lo : hi;
      }
    } else if (P == target) {
      run.start = r + first * b;
      run.terms = j - first;
      return run;
    }
  }
  return run;  // unreachable for non-empty progressions
}

// Work of the exhaustive W search after pruning: a progression needs at
// least as many terms as the best value found for steps b <= 4.
inline double pruned_w_work(const std::vector<std::int8_t>& g) {
  const std::size_t N = g.size();
  long long seed = 0;
  for (std::size_t b = 1; b <= std::min<std::size_t>(4, N); ++b)
    for (std::size_t r = 0; r < b; ++r) seed = std::max(seed, progression_span(g.data(), N, b, r));
  const std::size_t useful =
      seed <= 1 ? N : std::min<std::size_t>(N, (N - 1) / static_cast<std::size_t>(seed - 1) + 1);
  return static_cast<double>(N) * static_cast<double>(useful);
}

struct ByteTable {
  std::array<std::int8_t, 256> sum{};
  std::array<std::int8_t, 256> hi{};
  std::array<std::int8_t, 256> lo{};
};

// Bit 1 encodes -1. hi/lo are max/min of the 8 prefix sums inside a byte.
inline const ByteTable& byte_table() {
  static const ByteTable table = [] {
    ByteTable t;
    for (int v = 0; v < 256; ++v) {
      int s = 0, h = -9, l = 9;
      for (int i = 0; i < 8; ++i) {
        s += ((v >> i) & 1) ? -1 : 1;
        h = std::max(h, s);
        l = std::min(l, s);
      }
      t.sum[v] = static_cast<std::int8_t>(s);
      t.hi[v] = static_cast<std::int8_t>(h);
      t.lo[v] = static_cast<std::int8_t>(l);
    }
    return t;
  }();
  return table;
}

// max over M = 1..len of |sum of the first M elements|, bit 1 = -1.
inline long long max_abs_prefix(const std::uint64_t* w, std::size_t len) {
  const ByteTable& t = byte_table();
  long long S = 0, hi = std::numeric_limits<long long>::min(), lo = std::numeric_limits<long long>::max();
  const std::size_t full_words = len / 64;
  for (std::size_t i = 0; i < full_words; ++i) {
    std::uint64_t x = w[i];
    for (int byte = 0; byte < 8; ++byte, x >>= 8U) {
      const unsigned v = static_cast<unsigned>(x & 0xFFU);
      hi = std::max(hi, S + t.hi[v]);
      lo = std::min(lo, S + t.lo[v]);
      S += t.sum[v];
    }
  }
  const std::size_t rem = len % 64;
  if (rem != 0) {
    std::uint64_t x = w[full_words];
    std::size_t i = 0;
    for (; i + 8 <= rem; i += 8, x >>= 8U) {
      const unsigned v = static_cast<unsigned>(x & 0xFFU);
      hi = std::max(hi, S + t.hi[v]);
      lo = std::min(lo, S + t.lo[v]);
      S += t.sum[v];
    }
    for (; i < rem; ++i, x >>= 1U) {
      S += (x & 1U) ? -1 : 1;
      hi = std::max(hi, S);
      lo = std::min(lo, S);
    }
  }
  return std::max(hi, -lo);
}

inline std::size_t first_prefix_reaching(const std::uint64_t* w, std::size_t len, long long value) {
  long long S = 0;
  for (std::size_t i = 0; i < len; ++i) {
    S += ((w[i / 64] >> (i % 64)) & 1U) ? -1 : 1;
    if (S == value || S == -value) return i + 1;
  }
  return 0;
}

// out[i] = in[i] ^ (z >> d)[i] for the first `words` words.
inline void xor_shifted(std::uint64_t* out, const std::uint64_t* in, std::span<const std::uint64_t> z, std::size_t d,
                        std::size_t words) {
  const std::size_t q = d / 64, s = d % 64;
  for (std::size_t i = 0; i < words; ++i) {
    const std::size_t j = i + q;
    std::uint64_t v = j < z.size() ? z[j] >> s : 0;
    if (s != 0 && j + 1 < z.size()) v |= z[j + 1] << (64 - s);
    out[i] = in[i] ^ v;
  }
}

// Bit 1 for -1, bits past N cleared.
inline std::vector<std::uint64_t> minus_bits(const BinarySequence& E) {
  std::vector<std::uint64_t> z(E.words().begin(), E.words().end());
  for (auto& w : z) w = ~w;
  const std::size_t rem = E.size() % 64;
  if (rem != 0) z.back() &= (std::uint64_t{1} << rem) - 1;
  return z;
}

inline bool lex_less(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// W. Ties: smallest (b, a, t).

inline MeasureResult well_distribution(const BinarySequence& E, const SearchBounds& bounds = SearchBounds::exact()) {
  const std::size_t N = E.size();
  std::vector<std::int8_t> g(N);
  for (std::size_t i = 0; i < N; ++i) g[i] = static_cast<std::int8_t>(E[i]);
  if (!bounds.b_max) {
    const double w = detail::pruned_w_work(g);
    if (w > bounds.work_budget)
      throw Error(ErrorCode::BudgetExceeded, "unbounded W search needs ~" + std::to_string(static_cast<long long>(w)) +
                                                 " operations; set b_max");
  }
  const std::size_t B = detail::effective_b(bounds, N);

  struct Best {
    long long value = -1;
    std::size_t a = 0, b = 0, t = 0;
  };
  auto better = [](const Best& x, const Best& y) {
    if (x.value != y.value) return x.value > y.value;
    if (x.b != y.b) return x.b < y.b;
    if (x.a != y.a) return x.a < y.a;
    return x.t < y.t;
  };

  // A progression with fewer terms than a value already found elsewhere
  // cannot win; the strict comparison keeps ties, so pruning does not
  // depend on scheduling.
  std::atomic<long long> shared_best{-1};
  std::vector<Best> per_b(B);
  parallel_for(B, bounds.threads, [&](std::size_t idx) {
    const std::size_t b = idx + 1;
    Best best;
    for (std::size_t r = 0; r < std::min(b, N); ++r) {
      const auto terms = static_cast<long long>((N - r + b - 1) / b);  // non-increasing in r
      if (terms < best.value || terms < shared_best.load(std::memory_order_relaxed)) break;
      if (detail::progression_span(g.data(), N, b, r) < best.value) continue;
      const auto run = detail::progression_run(g.data(), N, b, r);
      const Best cand{run.value, run.start + 1, b, run.terms};
      if (best.value < 0 || better(cand, best)) best = cand;
    }
    long long cur = shared_best.load();
    while (best.value > cur && !shared_best.compare_exchange_weak(cur, best.value)) {
    }
    per_b[idx] = best;
  });

  Best best = per_b.front();
  for (const Best& c : per_b)
    if (better(c, best)) best = c;

  MeasureResult res;
  res.numerator = best.value;
  res.witness.a = best.a;
  res.witness.b = best.b;
  res.witness.t = best.t;
  res.exact = B >= N - 1 || N == 1;
  return res;
}

// ---------------------------------------------------------------------------
// C_k. Ties: lexicographically smallest D, then smallest M. Sampled tuples
// rank after every tuple inside the lag window, in sampling order.

inline MeasureResult correlation(const BinarySequence& E, std::size_t k,
                                 const SearchBounds& bounds = SearchBounds::exact()) {
  const std::size_t N = E.size();
  if (k < 1 || k > N) throw Error(ErrorCode::InvalidInput, "correlation order k must satisfy 1 <= k <= N");
  detail::check_budget(MeasureKind::Correlation, N, k, bounds);
  const std::size_t dm = detail::effective_d(bounds, N);
  const auto z = detail::minus_bits(E);
  const std::size_t words = z.size();

  struct Best {
    long long value = -1;
    std::vector<std::size_t> D;
  };

  std::atomic<long long> shared_best{-1};
  auto raise_shared = [&](long long v) {
    long long cur = shared_best.load();
    while (v > cur && !shared_best.compare_exchange_weak(cur, v)) {
    }
  };

  // Exhaustive part, one task per d_1.
  const std::size_t first_count = dm + 1 >= k ? dm + 2 - k : 0;
  std::vector<Best> per_first(first_count);
  parallel_for(first_count, bounds.threads, [&](std::size_t d1) {
    Best best;
    std::vector<std::vector<std::uint64_t>> acc(k + 1, std::vector<std::uint64_t>(words, 0));
    std::vector<std::size_t> D(k);
    // Depth-first over d_2 < ... < d_k; any leaf under lag d has value <= N - d.
    auto recurse = [&](auto&& self, std::size_t level, std::size_t lo) -> void {
      const std::size_t hi = dm - (k - 1 - level);
      for (std::size_t d = lo; d <= hi; ++d) {
        const long long cap = static_cast<long long>(N - d - (k - 1 - level));
        if (cap <= best.value || cap < shared_best.load(std::memory_order_relaxed)) break;
        D[level] = d;
        detail::xor_shifted(acc[level + 1].data(), acc[level].data(), z, d, words);
        if (level + 1 == k) {
          const long long v = detail::max_abs_prefix(acc[k].data(), N - d);
          if (v > best.value) {
            best.value = v;
            best.D = D;
            raise_shared(v);
          }
        } else {
          self(self, level + 1, d + 1);
        }
      }
    };
    const long long cap = static_cast<long long>(N - d1 - (k - 1));
    if (cap >= shared_best.load()) {
      D[0] = d1;
      detail::xor_shifted(acc[1].data(), acc[0].data(), z, d1, words);
      if (k == 1) {
        best.value = detail::max_abs_prefix(acc[1].data(), N - d1);
        best.D = D;
        raise_shared(best.value);
      } else {
        recurse(recurse, 1, d1 + 1);
      }
    }
    per_first[d1] = std::move(best);
  });

  Best best;
  for (auto& c : per_first)
    if (c.value > best.value) best = std::move(c);

  // Random tuples with d_k beyond the window.
  if (bounds.sample_count > 0 && dm < N - 1) {
    std::mt19937_64 rng(bounds.seed);
    std::vector<std::vector<std::size_t>> samples(bounds.sample_count);
    for (auto& D : samples) {
      const std::size_t lo = std::max(dm + 1, k - 1);
      const std::size_t dk = lo + static_cast<std::size_t>(rng() % (N - lo));
      D.clear();
      D.push_back(dk);
      while (D.size() < k) {
        const std::size_t d = static_cast<std::size_t>(rng() % dk);
        if (std::find(D.begin(), D.end(), d) == D.end()) D.push_back(d);
      }
      std::sort(D.begin(), D.end());
    }
    std::vector<long long> values(samples.size());
    parallel_for(samples.size(), bounds.threads, [&](std::size_t i) {
      std::vector<std::uint64_t> a(words, 0), b(words, 0);
      for (std::size_t d : samples[i]) {
        detail::xor_shifted(b.data(), a.data(), z, d, words);
        std::swap(a, b);
      }
      values[i] = detail::max_abs_prefix(a.data(), N - samples[i].back());
    });
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (values[i] > best.value) {
        best.value = values[i];
        best.D = samples[i];
      }
  }

  MeasureResult res;
  res.exact = dm >= N - 1;
  if (best.value < 0) return res;  // no admissible tuple inside the bounds
  std::vector<std::uint64_t> a(words, 0), b(words, 0);
  for (std::size_t d : best.D) {
    detail::xor_shifted(b.data(), a.data(), z, d, words);
    std::swap(a, b);
  }
  res.numerator = best.value;
  res.witness.D = best.D;
  res.witness.M = detail::first_prefix_reaching(a.data(), N - best.D.back(), best.value);
  return res;
}

// ---------------------------------------------------------------------------
// Q_k. Lag tuples are normalized to d_1 = 0 (a shift of d_1 is absorbed by
// a). Ties: lexicographically smallest D, then (b, a, t).

inline MeasureResult combined_measure(const BinarySequence& E, std::size_t k,
                                      const SearchBounds& bounds = SearchBounds::exact()) {
  const std::size_t N = E.size();
  if (k < 1 || k > N) throw Error(ErrorCode::InvalidInput, "combined measure order k must satisfy 1 <= k <= N");
  detail::check_budget(MeasureKind::Combined, N, k, bounds);
  const std::size_t dm = detail::effective_d(bounds, N);
  const std::size_t B = detail::effective_b(bounds, N);

  // All tuples 0 = d_1 < d_2 < ... < d_k <= dm, in lexicographic order.
  std::vector<std::vector<std::size_t>> tuples;
  {
    std::vector<std::size_t> D(k, 0);
    auto rec = [&](auto&& self, std::size_t level, std::size_t lo) -> void {
      if (level == k) {
        tuples.push_back(D);
        return;
      }
      for (std::size_t d = lo; d + (k - 1 - level) <= dm; ++d) {
        D[level] = d;
        self(self, level + 1, d + 1);
      }
    };
    if (k == 1 || dm >= k - 1) rec(rec, 1, 1);
  }

  struct Best {
    long long value = -1;
    std::size_t a = 0, b = 0, t = 0;
  };
  auto better_in_tuple = [](const Best& x, const Best& y) {
    if (x.value != y.value) return x.value > y.value;
    if (x.b != y.b) return x.b < y.b;
    if (x.a != y.a) return x.a < y.a;
    return x.t < y.t;
  };

  std::atomic<long long> shared_best{-1};
  std::vector<Best> per_tuple(tuples.size());
  parallel_for(tuples.size(), bounds.threads, [&](std::size_t ti) {
    const auto& D = tuples[ti];
    const std::size_t len = N - D.back();
    Best best;
    if (static_cast<long long>(len) < shared_best.load(std::memory_order_relaxed)) {
      per_tuple[ti] = best;
      return;
    }
    std::vector<std::int8_t> g(len, 1);
    for (std::size_t d : D)
      for (std::size_t n = 0; n < len; ++n) g[n] = static_cast<std::int8_t>(g[n] * E[n + d]);
    const std::size_t b_cap = std::min(B, std::max<std::size_t>(1, len - 1));
    for (std::size_t b = 1; b <= b_cap; ++b) {
      for (std::size_t r = 0; r < std::min(b, len); ++r) {
        const auto terms = static_cast<long long>((len - r + b - 1) / b);  // non-increasing in r
        if (terms < best.value || terms < shared_best.load(std::memory_order_relaxed)) break;
        if (detail::progression_span(g.data(), len, b, r) < best.value) continue;
        const auto run = detail::progression_run(g.data(), len, b, r);
        const Best cand{run.value, run.start + 1, b, run.terms - 1};
        if (best.value < 0 || better_in_tuple(cand, best)) best = cand;
      }
    }
    long long cur = shared_best.load();
    while (best.value > cur && !shared_best.compare_exchange_weak(cur, best.value)) {
    }
    per_tuple[ti] = best;
  });

  MeasureResult res;
  res.exact = (dm >= N - 1 || k == 1) && B >= N - 1;
  std::size_t best_idx = tuples.size();
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (per_tuple[i].value >= 0 && (best_idx == tuples.size() || per_tuple[i].value > per_tuple[best_idx].value))
      best_idx = i;
  if (best_idx == tuples.size()) return res;
  const Best& b = per_tuple[best_idx];
  res.numerator = b.value;
  res.witness.a = b.a;
  res.witness.b = b.b;
  res.witness.t = b.t;
  res.witness.D = tuples[best_idx];
  return res;
}

// ---------------------------------------------------------------------------
// N_k. Windows n = 0..M-1 pair with the subtrahend M/2^k. Patterns are
// ordered by their code (first element most significant, +1 = bit 1);
// ties: smallest pattern code, then smallest M.

inline MeasureResult normality(const BinarySequence& E, std::size_t k) {
  const std::size_t N = E.size();
  if (k < 1 || k > 24 || k > N) throw Error(ErrorCode::InvalidInput, "normality order k must satisfy 1 <= k <= min(24, N)");
  const std::size_t patterns = std::size_t{1} << k;
  const std::int64_t scale = static_cast<std::int64_t>(patterns);
  const std::size_t Mmax = N + 1 - k;

  std::vector<std::uint32_t> count(patterns, 0), last(patterns, 0);
  std::int64_t best_value = -1;
  std::size_t best_code = 0, best_M = 0;
  auto offer = [&](std::int64_t d, std::size_t code, std::size_t M) {
    const std::int64_t v = d < 0 ? -d : d;
    if (v > best_value || (v == best_value && (code < best_code || (code == best_code && M < best_M)))) {
      best_value = v;
      best_code = code;
      best_M = M;
    }
  };
  // Scaled deviation of `code` at time M, given no match in (last, M].
  auto deviation_at = [&](std::size_t code, std::size_t M) {
    return static_cast<std::int64_t>(count[code]) * scale - static_cast<std::int64_t>(M);
  };

  std::size_t code = 0;
  const std::size_t mask = patterns - 1;
  for (std::size_t i = 0; i + 1 < k; ++i) code = ((code << 1U) | (E.bit(i) ? 1U : 0U)) & mask;
  std::size_t first_code = 0;
  for (std::size_t n = 0; n < Mmax; ++n) {
    code = ((code << 1U) | (E.bit(n + k - 1) ? 1U : 0U)) & mask;
    if (n == 0) first_code = code;
    const std::size_t M = n + 1;
    if (M - 1 >= 1) offer(deviation_at(code, M - 1), code, M - 1);
    ++count[code];
    last[code] = static_cast<std::uint32_t>(M);
    offer(deviation_at(code, M), code, M);
  }
  for (std::size_t c = 0; c < patterns; ++c) {
    if (last[c] < Mmax) offer(deviation_at(c, Mmax), c, Mmax);
    if (c != first_code) offer(-1, c, 1);
  }

  MeasureResult res;
  res.numerator = best_value;
  res.denominator = scale;
  res.exact = true;
  res.witness.M = best_M;
  res.witness.pattern.resize(k);
  for (std::size_t i = 0; i < k; ++i) res.witness.pattern[i] = ((best_code >> (k - 1 - i)) & 1U) ? 1 : -1;
  return res;
}

// ---------------------------------------------------------------------------
// Closed-form upper bounds for the Legendre and elliptic-curve
// constructions (natural logarithms).

enum class BoundKind { LegendreW, LegendreC, EcW, EcC };

struct BoundParams {
  double p = 0;    // field characteristic
  double T = 0;    // group order (elliptic-curve bounds)
  double k = 0;    // degree of f
  double ell = 0;  // correlation order (C bounds)
};

inline BoundKind parse_bound_kind(std::string_view name) {
  if (name == "legendre-W") return BoundKind::LegendreW;
  if (name == "legendre-C") return BoundKind::LegendreC;
  if (name == "ec-W") return BoundKind::EcW;
  if (name == "ec-C") return BoundKind::EcC;
  throw Error(ErrorCode::InvalidArgument, "unknown bound kind '" + std::string(name) + "'");
}

inline double theoretical_bound(BoundKind kind, const BoundParams& q) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  };
  positive(q.p, "p");
  positive(q.k, "k");
  switch (kind) {
    case BoundKind::LegendreW: return 10.0 * q.k * std::sqrt(q.p) * std::log(q.p);
    case BoundKind::LegendreC: positive(q.ell, "ell"); return 10.0 * q.k * q.ell * std::sqrt(q.p) * std::log(q.p);
    case BoundKind::EcW: positive(q.T, "T"); return 6.0 * q.k * std::sqrt(q.p) * std::log(q.T);
    case BoundKind::EcC: positive(q.T, "T"); positive(q.ell, "ell"); return 2.0 * q.ell * q.k * std::sqrt(q.p) * std::log(q.T);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown bound kind");
}

}  // namespace prs
