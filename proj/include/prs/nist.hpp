#pragma once

// Monobit, block frequency, longest run of ones, linear complexity and DFT
// tests. P-values follow the SP 800-22 procedures; bit 1 is +1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prs/berlekamp_massey.hpp"
#include "prs/error.hpp"
#include "prs/fft.hpp"
#include "prs/parallel.hpp"
#include "prs/sequence.hpp"
#include "prs/special.hpp"

namespace prs {

inline constexpr double kDefaultAlpha = 0.01;

enum class TestStatus { Ok, Skipped };

struct TestResult {
  std::string name;
  TestStatus status = TestStatus::Ok;
  double statistic = 0;
  double p_value = 0;
  bool pass = false;
  std::string note;  // warning or skip reason
  std::vector<std::pair<std::string, double>> details;

  double detail(std::string_view key) const {
    for (const auto& [k, v] : details)
      if (k == key) return v;
    throw Error(ErrorCode::InvalidArgument, "no detail '" + std::string(key) + "' in " + name);
  }
};

namespace detail {

inline TestResult finish(TestResult r, double alpha) {
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.pass = r.p_value >= alpha;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline TestResult monobit(const BinarySequence& E, double alpha = kDefaultAlpha) {
  const double N = static_cast<double>(E.size());
  TestResult r;
  r.name = "Frequency";
  r.statistic = std::fabs(static_cast<double>(E.sum())) / std::sqrt(N);
  r.p_value = erfc(r.statistic / std::sqrt(2.0));
  r.details = {{"n", N}, {"sum", static_cast<double>(E.sum())}};
  if (E.size() < 100) r.note = "n < 100";
  return detail::finish(std::move(r), alpha);
}

// Recommended regime M >= 20, M > N/100, t < 100.
inline bool block_frequency_recommended(std::size_t N, std::size_t M) {
  const std::size_t t = M == 0 ? 0 : N / M;
  return M >= 20 && 100 * M > N && t < 100;
}

// X_1 = 4M sum_i (pi_i - 1/2)^2 over t = floor(N/M) blocks, as a ratio of
// integers: sum_i (2 ones_i - M)^2 / M.
inline double block_frequency_statistic(const BinarySequence& E, std::size_t M) {
  const std::size_t t = E.size() / M;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < t; ++i) {
    std::int64_t ones = 0;
    for (std::size_t j = 0; j < M; ++j) ones += E.bit(i * M + j) ? 1 : 0;
    const std::int64_t d = 2 * ones - static_cast<std::int64_t>(M);
    acc += d * d;
  }
  return static_cast<double>(acc) / static_cast<double>(M);
}

inline TestResult block_frequency(const BinarySequence& E, std::size_t M, double alpha = kDefaultAlpha) {
  if (M < 1) throw Error(ErrorCode::InvalidInput, "block length must be positive");
  const std::size_t t = E.size() / M;
  if (t < 1) throw Error(ErrorCode::InvalidInput, "sequence shorter than one block");
  TestResult r;
  r.name = "BlockFrequency";
  r.statistic = block_frequency_statistic(E, M);
  r.p_value = igamc(static_cast<double>(t) / 2.0, r.statistic / 2.0);
  const bool rec = block_frequency_recommended(E.size(), M);
  r.details = {{"M", static_cast<double>(M)},
               {"blocks", static_cast<double>(t)},
               {"discarded", static_cast<double>(E.size() - t * M)},
               {"recommended", rec ? 1.0 : 0.0}};
  if (!rec) r.note = "outside M >= 20, M > N/100, t < 100";
  return detail::finish(std::move(r), alpha);
}

// ---------------------------------------------------------------------------
// Longest run of ones.

inline std::size_t longest_run_length(const BinarySequence& E, std::size_t first, std::size_t count) {
  std::size_t best = 0, cur = 0;
  for (std::size_t i = first; i < first + count; ++i) {
    cur = E.bit(i) ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

inline std::size_t longest_run_length(const BinarySequence& E) { return longest_run_length(E, 0, E.size()); }

struct RunClass {
  std::size_t lo = 0, hi = 0;  // inclusive
};

inline void validate_partition(std::size_t M, const std::vector<RunClass>& classes) {
  if (classes.empty()) throw Error(ErrorCode::InvalidArgument, "empty partition");
  std::size_t next = 0;
  for (const auto& c : classes) {
    if (c.lo != next || c.hi < c.lo) throw Error(ErrorCode::InvalidArgument, "classes must be consecutive intervals from 0");
    next = c.hi + 1;
  }
  if (next != M + 1) throw Error(ErrorCode::InvalidArgument, "classes must cover {0..M}");
}

// P(longest run of ones <= r) for a uniform string of length m. With
// A(n, r) the number of such strings: A(n, r) = 2^n for n <= r, else
// A(n, r) = sum_{j=0}^{r} A(n-1-j, r). Counts are exact in 128 bits for
// m <= 128; longer strings use the normalized recurrence in long double.
inline long double longest_run_cdf(std::size_t m, std::size_t r) {
  if (r >= m) return 1.0L;
  if (m <= 128) {
    std::vector<unsigned __int128> A(m + 1);
    for (std::size_t n = 0; n <= m; ++n) {
      if (n <= r) {
        A[n] = static_cast<unsigned __int128>(1) << n;
      } else {
        unsigned __int128 s = 0;
        for (std::size_t j = 0; j <= r; ++j) s += A[n - 1 - j];
        A[n] = s;
      }
    }
    const auto hi = static_cast<std::uint64_t>(A[m] >> 64U);
    const auto lo = static_cast<std::uint64_t>(A[m]);
    return std::ldexp(static_cast<long double>(hi), 64 - static_cast<int>(m)) +
           std::ldexp(static_cast<long double>(lo), -static_cast<int>(m));
  }
  std::vector<long double> a(m + 1);
  for (std::size_t n = 0; n <= m; ++n) {
    if (n <= r) {
      a[n] = 1.0L;
      continue;
    }
    long double s = 0, w = 0.5L;
    for (std::size_t j = 0; j <= r; ++j, w *= 0.5L) s += a[n - 1 - j] * w;
    a[n] = s;
  }
  return a[m];
}

inline std::vector<double> longest_run_probs(std::size_t M, const std::vector<RunClass>& classes) {
  validate_partition(M, classes);
  std::vector<double> out;
  for (const auto& c : classes) {
    const long double upper = longest_run_cdf(M, c.hi);
    const long double lower = c.lo == 0 ? 0.0L : longest_run_cdf(M, c.lo - 1);
    out.push_back(static_cast<double>(upper - lower));
  }
  return out;
}

struct LongestRunConfig {
  std::size_t M = 8;
  std::vector<RunClass> classes;
  std::vector<double> probs;

  std::size_t K() const { return classes.size() - 1; }

  static LongestRunConfig make(std::size_t M, std::vector<RunClass> classes) {
    LongestRunConfig c;
    c.M = M;
    c.probs = longest_run_probs(M, classes);
    c.classes = std::move(classes);
    return c;
  }

  // Class tables for M = 8, 128 and 10^4.
  static const LongestRunConfig& standard(std::size_t M) {
    static const LongestRunConfig m8 = make(8, {{0, 1}, {2, 2}, {3, 3}, {4, 8}});
    static const LongestRunConfig m128 = make(128, {{0, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 128}});
    static const LongestRunConfig m10k =
        make(10000, {{0, 10}, {11, 11}, {12, 12}, {13, 13}, {14, 14}, {15, 15}, {16, 10000}});
    if (M == 8) return m8;
    if (M == 128) return m128;
    if (M == 10000) return m10k;
    throw Error(ErrorCode::InvalidArgument, "no standard longest-run table for M = " + std::to_string(M));
  }

  // Minimum lengths 128, 6272 and 750000.
  static std::size_t auto_block(std::size_t N) {
    if (N < 128) throw Error(ErrorCode::InvalidInput, "longest-run test needs n >= 128");
    if (N < 6272) return 8;
    if (N < 750000) return 128;
    return 10000;
  }
};

inline std::vector<std::size_t> longest_run_counts(const BinarySequence& E, const LongestRunConfig& config) {
  const std::size_t t = E.size() / config.M;
  std::vector<std::size_t> nu(config.classes.size(), 0);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t run = longest_run_length(E, i * config.M, config.M);
    for (std::size_t c = 0; c < config.classes.size(); ++c)
      if (run <= config.classes[c].hi) {
        ++nu[c];
        break;
      }
  }
  return nu;
}

inline double longest_run_statistic(const std::vector<std::size_t>& nu, const std::vector<double>& probs,
                                    std::size_t t) {
  double X = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double expected = static_cast<double>(t) * probs[i];
    const double d = static_cast<double>(nu[i]) - expected;
    X += d * d / expected;
  }
  return X;
}

inline TestResult longest_run_test(const BinarySequence& E, const LongestRunConfig& config,
                                   double alpha = kDefaultAlpha) {
  const std::size_t t = E.size() / config.M;
  if (t < 16) throw Error(ErrorCode::InvalidInput, "longest-run test needs at least 16 blocks");
  const auto nu = longest_run_counts(E, config);
  TestResult r;
  r.name = "LongestRun";
  r.statistic = longest_run_statistic(nu, config.probs, t);
  r.p_value = igamc(static_cast<double>(config.K()) / 2.0, r.statistic / 2.0);
  r.details = {{"M", static_cast<double>(config.M)},
               {"K", static_cast<double>(config.K())},
               {"blocks", static_cast<double>(t)},
               {"discarded", static_cast<double>(E.size() - t * config.M)}};
  for (std::size_t i = 0; i < nu.size(); ++i) r.details.emplace_back("nu" + std::to_string(i), static_cast<double>(nu[i]));
  return detail::finish(std::move(r), alpha);
}

// ---------------------------------------------------------------------------
// Linear complexity.

struct LinComplexityConfig {
  std::size_t M = 500;
  // Interval edges: I_0 = (-inf, e_0], I_j = (e_{j-1}, e_j], I_6 = (e_5, inf).
  std::vector<double> edges{-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
  std::vector<double> probs{0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};

  static LinComplexityConfig with_block(std::size_t M) {
    LinComplexityConfig c;
    c.M = M;
    return c;
  }

  std::size_t bin(double T) const {
    std::size_t j = 0;
    while (j < edges.size() && T > edges[j]) ++j;
    return j;
  }
};

inline double lin_complexity_mean(std::size_t M) {
  return static_cast<double>(M) / 2.0 + (4.0 + static_cast<double>(M % 2)) / 18.0;
}

inline double lin_complexity_T(std::size_t L, std::size_t M) {
  const double sign = M % 2 == 0 ? 1.0 : -1.0;
  return sign * (static_cast<double>(L) - lin_complexity_mean(M)) + 2.0 / 9.0;
}

inline std::vector<std::size_t> block_linear_complexities(const BinarySequence& E, std::size_t M, unsigned threads = 1) {
  const std::size_t t = E.size() / M;
  std::vector<std::size_t> L(t);
  parallel_for(t, threads, [&](std::size_t i) {
    std::vector<std::uint8_t> bits(M);
    for (std::size_t j = 0; j < M; ++j) bits[j] = E.bit(i * M + j) ? 1 : 0;
    L[i] = linear_complexity(bits);
  });
  return L;
}

inline TestResult linear_complexity_test(const BinarySequence& E, const LinComplexityConfig& config,
                                         double alpha = kDefaultAlpha, unsigned threads = 1) {
  if (config.M < 1) throw Error(ErrorCode::InvalidInput, "block length must be positive");
  const std::size_t t = E.size() / config.M;
  if (t < 1) throw Error(ErrorCode::InvalidInput, "sequence shorter than one block");
  const auto L = block_linear_complexities(E, config.M, threads);
  std::vector<std::size_t> v(config.probs.size(), 0);
  for (std::size_t l : L) ++v[config.bin(lin_complexity_T(l, config.M))];
  TestResult r;
  r.name = "LinearComplexity";
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double expected = static_cast<double>(t) * config.probs[j];
    const double d = static_cast<double>(v[j]) - expected;
    r.statistic += d * d / expected;
  }
  r.p_value = igamc(static_cast<double>(v.size() - 1) / 2.0, r.statistic / 2.0);
  r.details = {{"M", static_cast<double>(config.M)},
               {"blocks", static_cast<double>(t)},
               {"discarded", static_cast<double>(E.size() - t * config.M)}};
  for (std::size_t j = 0; j < v.size(); ++j) r.details.emplace_back("v" + std::to_string(j), static_cast<double>(v[j]));
  if (config.M < 500 || config.M > 5000) r.note = "M outside [500, 5000]";
  return detail::finish(std::move(r), alpha);
}

// ---------------------------------------------------------------------------
// Spectral test. Bins k = 1..floor(N/2)-1; threshold sqrt(N ln 20).

inline std::vector<double> dft_moduli(const BinarySequence& E) {
  std::vector<Complex> x(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) x[i] = E[i];
  const auto X = dft(x);
  std::vector<double> m;
  for (std::size_t k = 1; k < E.size() / 2; ++k) m.push_back(std::abs(X[k]));
  return m;
}

inline TestResult dft_test(const BinarySequence& E, double alpha = kDefaultAlpha) {
  if (E.size() < 1000) throw Error(ErrorCode::InvalidInput, "DFT test needs n >= 1000");
  const double N = static_cast<double>(E.size());
  const auto m = dft_moduli(E);
  const double threshold = std::sqrt(N * std::log(1.0 / 0.05));
  const double N0 = 0.95 * N / 2.0;
  const auto N1 = static_cast<double>(std::count_if(m.begin(), m.end(), [&](double v) { return v < threshold; }));
  TestResult r;
  r.name = "FFT";
  r.statistic = (N1 - N0) / std::sqrt(N * 0.95 * 0.05 / 4.0);
  r.p_value = erfc(std::fabs(r.statistic) / std::sqrt(2.0));
  r.details = {{"threshold", threshold}, {"N0", N0}, {"N1", N1}, {"bins", static_cast<double>(m.size())}};
  return detail::finish(std::move(r), alpha);
}

// ---------------------------------------------------------------------------
// Suite.

struct SuiteConfig {
  double alpha = kDefaultAlpha;
  std::size_t block_frequency_M = 128;
  std::size_t longest_run_M = 0;  // 0: choose 8, 128 or 10^4 from N
  std::size_t linear_complexity_M = 500;
  unsigned threads = 1;
};

inline const std::vector<std::string>& suite_test_names() {
  static const std::vector<std::string> names{"Frequency", "BlockFrequency", "LongestRun", "FFT", "LinearComplexity"};
  return names;
}

// Keys: alpha, block_frequency.M, longest_run.M (0 or "auto"),
// linear_complexity.M, threads. '#' starts a comment.
inline SuiteConfig parse_suite_config(std::string_view text) {
  SuiteConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": " + why);
  };
  auto to_size = [&](const std::string& v) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &pos);
    } catch (const std::exception&) {
      fail("not an integer: '" + v + "'");
    }
    if (pos != v.size()) fail("not an integer: '" + v + "'");
    return static_cast<std::size_t>(x);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "alpha") {
      std::size_t pos = 0;
      double a = 0;
      try {
        a = std::stod(value, &pos);
      } catch (const std::exception&) {
        fail("not a number: '" + value + "'");
      }
      if (pos != value.size() || !(a > 0 && a < 1)) fail("alpha must lie in (0, 1)");
      c.alpha = a;
    } else if (key == "block_frequency.M") {
      c.block_frequency_M = to_size(value);
      if (c.block_frequency_M == 0) fail("block_frequency.M must be positive");
    } else if (key == "longest_run.M") {
      c.longest_run_M = value == "auto" ? 0 : to_size(value);
      if (c.longest_run_M != 0) (void)LongestRunConfig::standard(c.longest_run_M);
    } else if (key == "linear_complexity.M") {
      c.linear_complexity_M = to_size(value);
      if (c.linear_complexity_M == 0) fail("linear_complexity.M must be positive");
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(std::max<std::size_t>(1, to_size(value)));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return c;
}

inline std::vector<TestResult> run_suite(const BinarySequence& E, const SuiteConfig& config = {}) {
  std::vector<TestResult> out;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidInput) throw;
      TestResult r;
      r.name = name;
      r.status = TestStatus::Skipped;
      r.note = e.what();
      out.push_back(std::move(r));
    }
  };
  guarded("Frequency", [&] { return monobit(E, config.alpha); });
  guarded("BlockFrequency", [&] { return block_frequency(E, config.block_frequency_M, config.alpha); });
  guarded("LongestRun", [&] {
    const std::size_t M = config.longest_run_M != 0 ? config.longest_run_M : LongestRunConfig::auto_block(E.size());
    return longest_run_test(E, LongestRunConfig::standard(M), config.alpha);
  });
  guarded("FFT", [&] { return dft_test(E, config.alpha); });
  guarded("LinearComplexity", [&] {
    return linear_complexity_test(E, LinComplexityConfig::with_block(config.linear_complexity_M), config.alpha,
                                  config.threads);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Line records: space-separated key=value fields, numbers in %.17g, the
// note last and running to end of line.
//
//   test=FFT status=ok statistic=... p_value=... pass=1 [detail.<k>=<v> ...] note=<text>

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_result_record(const TestResult& r) {
  std::string s = "test=" + r.name + " status=" + (r.status == TestStatus::Ok ? "ok" : "skipped");
  s += " statistic=" + format_number(r.statistic);
  s += " p_value=" + format_number(r.p_value);
  s += std::string(" pass=") + (r.pass ? "1" : "0");
  for (const auto& [k, v] : r.details) s += " detail." + k + "=" + format_number(v);
  s += " note=" + r.note;
  return s;
}

inline TestResult parse_result_record(std::string_view line) {
  TestResult r;
  const auto note_at = line.find(" note=");
  if (note_at == std::string_view::npos) throw Error(ErrorCode::Parse, "result record without note field");
  r.note = std::string(line.substr(note_at + 6));
  std::istringstream in{std::string(line.substr(0, note_at))};
  std::string field;
  bool seen_test = false;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "bad field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "test") {
        r.name = value;
        seen_test = true;
      } else if (key == "status") {
        if (value != "ok" && value != "skipped") throw Error(ErrorCode::Parse, "bad status '" + value + "'");
        r.status = value == "ok" ? TestStatus::Ok : TestStatus::Skipped;
      } else if (key == "statistic") {
        r.statistic = std::stod(value);
      } else if (key == "p_value") {
        r.p_value = std::stod(value);
      } else if (key == "pass") {
        r.pass = value == "1";
      } else if (key.rfind("detail.", 0) == 0) {
        r.details.emplace_back(key.substr(7), std::stod(value));
      } else {
        throw Error(ErrorCode::Parse, "unknown field '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::Parse, "bad number in '" + field + "'");
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::Parse, "number out of range in '" + field + "'");
    }
  }
  if (!seen_test) throw Error(ErrorCode::Parse, "result record without test field");
  return r;
}

}  // namespace prs
