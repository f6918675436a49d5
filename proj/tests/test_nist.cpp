#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "prs/berlekamp_massey.hpp"
#include "prs/expression.hpp"
#include "prs/fft.hpp"
#include "prs/generators.hpp"
#include "prs/nist.hpp"
#include "prs/special.hpp"

using namespace prs;

namespace {

BinarySequence random_seq(oracle::Gen& g, std::size_t N) { return oracle::seq(g.signs(N)); }

}  // namespace

// ---------------------------------------------------------------------------

TEST(Special, Examples) {
  EXPECT_DOUBLE_EQ(prs::erfc(0), 1.0);
  for (double a : {0.5, 1.0, 4.5, 50.0, 500.0}) EXPECT_DOUBLE_EQ(igamc(a, 0), 1.0);
  for (double x : {0.25, 1.0, 4.0}) EXPECT_NEAR(igamc(0.5, x), std::erfc(std::sqrt(x)), 1e-10 * std::erfc(std::sqrt(x)));
}

TEST(Special, IgamcClosedForms) {
  // Q(1, x) = e^-x; Q(n, x) = e^-x sum_{j<n} x^j / j!
  for (double x : {0.1, 1.0, 3.0, 10.0, 40.0, 200.0}) {
    EXPECT_NEAR(igamc(1, x), std::exp(-x), 1e-10 * std::exp(-x));
    for (int n : {2, 3, 7, 30}) {
      double s = 0, term = 1;
      for (int j = 0; j < n; ++j) {
        s += term;
        term *= x / (j + 1);
      }
      const double want = std::exp(-x) * s;
      EXPECT_NEAR(igamc(n, x), want, 1e-10 * want + 1e-300) << n << " " << x;
    }
  }
  // Chi-square medians, larger a.
  EXPECT_NEAR(igamc(250, 249.6668), 0.5, 1e-3);
  EXPECT_NEAR(igamc(500, 10000), 0.0, 1e-300);
}

TEST(Special, DomainErrors) {
  EXPECT_THROW(igamc(0, 1), Error);
  EXPECT_THROW(igamc(1, -1), Error);
  EXPECT_THROW(igamc(std::nan(""), 1), Error);
}

// ---------------------------------------------------------------------------

TEST(Monobit, Examples) {
  auto r = monobit(BinarySequence::from_signs({1, -1, 1, -1}));
  EXPECT_EQ(r.statistic, 0);
  EXPECT_EQ(r.p_value, 1);
  r = monobit(BinarySequence::constant(100, 1));
  EXPECT_DOUBLE_EQ(r.statistic, 10);
  EXPECT_NEAR(r.p_value, 1.5e-23, 0.05e-23);
  EXPECT_FALSE(r.pass);
  r = monobit(BinarySequence::from_signs({1, -1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.statistic, 1);
  EXPECT_NEAR(r.p_value, 0.3173, 1e-4);
  EXPECT_FALSE(r.note.empty());
}

TEST(BlockFrequency, Examples) {
  auto r = block_frequency(gen_periodic(BinarySequence::from_signs({1, -1}), 100), 20);
  EXPECT_EQ(r.statistic, 0);
  EXPECT_EQ(r.p_value, 1);
  r = block_frequency(BinarySequence::constant(400, 1), 20);
  EXPECT_DOUBLE_EQ(r.statistic, 400);
  EXPECT_EQ(r.detail("blocks"), 20);
  SequenceBuilder b(20);
  for (int i = 0; i < 20; ++i) b.push(i < 15 ? 1 : -1);
  r = block_frequency(std::move(b).build(), 20);
  EXPECT_DOUBLE_EQ(r.statistic, 5);
  EXPECT_THROW(block_frequency(BinarySequence::constant(10, 1), 20), Error);
  EXPECT_THROW(block_frequency(BinarySequence::constant(10, 1), 0), Error);
}

TEST(BlockFrequency, RecommendedRegimeFlag) {
  EXPECT_TRUE(block_frequency_recommended(2000, 25));
  EXPECT_FALSE(block_frequency_recommended(2000, 19));
  EXPECT_FALSE(block_frequency_recommended(10000, 100));  // M > N/100 fails
  EXPECT_FALSE(block_frequency_recommended(100000, 1000 - 1));
  EXPECT_EQ(block_frequency(BinarySequence::constant(2000, 1), 25).detail("recommended"), 1);
  EXPECT_EQ(block_frequency(BinarySequence::constant(100000, 1), 128).detail("recommended"), 0);
}

TEST(BlockFrequency, OneBitBlocksMatchMonobitStatistic) {
  oracle::Gen g(1);
  const BinarySequence E = random_seq(g, 1000);
  EXPECT_DOUBLE_EQ(block_frequency_statistic(E, 1), 1000.0);
  EXPECT_DOUBLE_EQ(block_frequency_statistic(E, 1000), std::pow(monobit(E).statistic, 2));
}

// ---------------------------------------------------------------------------

TEST(LongestRun, LengthExamples) {
  EXPECT_EQ(longest_run_length(BinarySequence::from_signs({-1, -1})), 0u);
  EXPECT_EQ(longest_run_length(BinarySequence::from_signs({1, 1, -1, 1})), 2u);
  for (std::uint64_t v = 0; v < 4096; ++v) {
    const BinarySequence E = oracle::seq(oracle::signs_of(v, 12));
    ASSERT_EQ(longest_run_length(E), oracle::longest_run(E.to_bits()));
  }
}

TEST(LongestRun, ProbsMatchEnumeration) {
  EXPECT_DOUBLE_EQ(longest_run_probs(2, {{0, 1}, {2, 2}})[0], 0.75);
  for (std::size_t M = 1; M <= 16; ++M) {
    const auto h = oracle::longest_run_histogram(M);
    const double total = std::ldexp(1.0, static_cast<int>(M));
    // Every partition of {0..M} into intervals is a set of cut points.
    for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << M); cuts += (M > 10 ? 37 : 1)) {
      std::vector<RunClass> classes;
      std::size_t lo = 0;
      for (std::size_t i = 0; i < M; ++i)
        if ((cuts >> i) & 1U) {
          classes.push_back({lo, i});
          lo = i + 1;
        }
      classes.push_back({lo, M});
      const auto probs = longest_run_probs(M, classes);
      for (std::size_t c = 0; c < classes.size(); ++c) {
        std::uint64_t n = 0;
        for (std::size_t r = classes[c].lo; r <= classes[c].hi; ++r) n += h[r];
        ASSERT_DOUBLE_EQ(probs[c], static_cast<double>(n) / total) << M << " class " << c;
      }
    }
    EXPECT_DOUBLE_EQ(longest_run_probs(M, {{0, M}})[0], 1.0);
  }
}

TEST(LongestRun, StandardTables) {
  const auto& m8 = LongestRunConfig::standard(8);
  const std::vector<double> ref{0.2148, 0.3672, 0.2305, 0.1875};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(m8.probs[i], ref[i], 5e-5);
  const std::vector<double> ref128{0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  const auto& m128 = LongestRunConfig::standard(128);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(m128.probs[i], ref128[i], 5e-4);
  for (std::size_t M : {8u, 128u, 10000u}) {
    const auto& c = LongestRunConfig::standard(M);
    EXPECT_NEAR(std::accumulate(c.probs.begin(), c.probs.end(), 0.0), 1.0, 1e-6);
  }
  EXPECT_EQ(LongestRunConfig::standard(10000).K(), 6u);
  EXPECT_THROW(LongestRunConfig::standard(16), Error);
}

TEST(LongestRun, InvalidPartitions) {
  EXPECT_THROW(longest_run_probs(4, {{0, 1}, {3, 4}}), Error);
  EXPECT_THROW(longest_run_probs(4, {{0, 2}, {2, 4}}), Error);
  EXPECT_THROW(longest_run_probs(4, {{0, 3}}), Error);
  EXPECT_THROW(longest_run_probs(4, {{1, 4}}), Error);
  EXPECT_THROW(longest_run_probs(4, {}), Error);
}

TEST(LongestRun, AutoBlock) {
  EXPECT_THROW(LongestRunConfig::auto_block(127), Error);
  EXPECT_EQ(LongestRunConfig::auto_block(128), 8u);
  EXPECT_EQ(LongestRunConfig::auto_block(6271), 8u);
  EXPECT_EQ(LongestRunConfig::auto_block(6272), 128u);
  EXPECT_EQ(LongestRunConfig::auto_block(100003), 128u);
  EXPECT_EQ(LongestRunConfig::auto_block(750000), 10000u);
}

TEST(LongestRun, SingleClassStatistic) {
  const auto& c = LongestRunConfig::standard(8);
  const auto r = longest_run_test(BinarySequence::constant(800, -1), c);
  const double t = 100;
  EXPECT_EQ(r.detail("nu0"), t);
  EXPECT_NEAR(r.statistic, t * (1.0 / c.probs[0] - 1.0), 1e-9);
  EXPECT_THROW(longest_run_test(BinarySequence::constant(120, 1), c), Error);
}

TEST(LongestRun, CountsSumToBlocks) {
  oracle::Gen g(2);
  for (int i = 0; i < 50; ++i) {
    const BinarySequence E = random_seq(g, g.length(128, 3000));
    const auto nu = longest_run_counts(E, LongestRunConfig::standard(8));
    EXPECT_EQ(std::accumulate(nu.begin(), nu.end(), std::size_t{0}), E.size() / 8);
  }
}

TEST(LongestRun, StatisticMeanIsDegreesOfFreedom) {
  // X_2 over 10^4 blocks of 8 bits, repeated: chi-square with K = 3.
  oracle::Gen g(3);
  const auto& c = LongestRunConfig::standard(8);
  double sum = 0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) sum += longest_run_test(random_seq(g, 80000), c).statistic;
  EXPECT_NEAR(sum / reps, 3.0, 0.35);
}

// ---------------------------------------------------------------------------

TEST(BerlekampMassey, Examples) {
  for (std::size_t N : {1u, 5u, 64u, 200u}) {
    EXPECT_EQ(linear_complexity(std::vector<std::uint8_t>(N, 0)), 0u);
    std::vector<std::uint8_t> impulse(N - 1, 0);
    impulse.push_back(1);
    EXPECT_EQ(linear_complexity(impulse), N);
  }
  const std::vector<std::uint8_t> alt{0, 1, 0, 1, 0, 1, 0, 1};
  const auto rec = berlekamp_massey(alt);
  EXPECT_EQ(rec.L, 2u);
  EXPECT_EQ(oracle::lfsr_length(alt), 2u);
}

TEST(BerlekampMassey, MatchesExhaustiveLfsrSearch) {
  for (std::size_t N = 1; N <= 12; ++N)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v) {
      oracle::Bits b(N);
      for (std::size_t i = 0; i < N; ++i) b[i] = (v >> i) & 1U;
      ASSERT_EQ(linear_complexity(b), oracle::lfsr_length(b)) << N << ":" << v;
    }
}

TEST(BerlekampMassey, RecurrenceRegeneratesInput) {
  oracle::Gen g(4);
  for (int i = 0; i < 10000; ++i) {
    const auto b = g.bits(g.length(1, 512));
    const auto rec = berlekamp_massey(b);
    ASSERT_LE(rec.L, b.size());
    ASSERT_EQ(rec.c.size(), rec.L);
    // s[n] = sum_{i<L} c[i] s[n-L+i].
    for (std::size_t n = rec.L; n < b.size(); ++n) {
      unsigned v = 0;
      for (std::size_t i = 0; i < rec.L; ++i) v ^= rec.c[i] & b[n - rec.L + i];
      ASSERT_EQ(v, b[n]) << "input " << i << " position " << n;
    }
  }
}

TEST(BerlekampMassey, PrefixComplexityNonDecreasing) {
  oracle::Gen g(5);
  for (int i = 0; i < 50; ++i) {
    const auto b = g.bits(200);
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= b.size(); ++n) {
      const std::size_t L = linear_complexity(std::span(b.data(), n));
      ASSERT_GE(L, prev);
      ASSERT_LE(L, n);
      prev = L;
    }
  }
}

TEST(LinearComplexity, MeanAndT) {
  EXPECT_NEAR(lin_complexity_mean(500), 250.2222222, 1e-6);
  EXPECT_NEAR(lin_complexity_mean(501), 250.5 + 5.0 / 18, 1e-12);
  EXPECT_NEAR(lin_complexity_T(250, 500), -0.2222222 + 2.0 / 9, 1e-6);
  const LinComplexityConfig c;
  EXPECT_EQ(c.bin(-2.5), 0u);
  EXPECT_EQ(c.bin(-2.4), 1u);
  EXPECT_EQ(c.bin(0.5), 3u);
  EXPECT_EQ(c.bin(2.6), 6u);
  EXPECT_NEAR(std::accumulate(c.probs.begin(), c.probs.end(), 0.0), 1.0, 1e-6);
}

TEST(LinearComplexity, ShippedConstantsMatchExactDistribution) {
  // All 2^12 blocks of length 12, complexity by exhaustive LFSR search.
  const std::size_t M = 12;
  const LinComplexityConfig c = LinComplexityConfig::with_block(M);
  std::vector<double> freq(7, 0);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << M); ++v) {
    oracle::Bits b(M);
    for (std::size_t i = 0; i < M; ++i) b[i] = (v >> i) & 1U;
    freq[c.bin(lin_complexity_T(oracle::lfsr_length(b), M))] += 1.0 / 4096;
  }
  for (std::size_t j = 0; j < 7; ++j) EXPECT_NEAR(freq[j], c.probs[j], 0.01) << j;
}

TEST(LinearComplexity, MeanOverRandomBlocks) {
  oracle::Gen g(6);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) sum += static_cast<double>(linear_complexity(g.bits(500)));
  EXPECT_NEAR(sum / 1000, 250.22, 0.5);
}

TEST(LinearComplexity, TestBookkeeping) {
  oracle::Gen g(7);
  const BinarySequence E = random_seq(g, 10123);
  const auto r = linear_complexity_test(E, LinComplexityConfig::with_block(500));
  double total = 0;
  for (int j = 0; j < 7; ++j) total += r.detail("v" + std::to_string(j));
  EXPECT_EQ(total, 20);
  EXPECT_EQ(r.detail("discarded"), 123);
  EXPECT_GE(r.p_value, 0);
  EXPECT_LE(r.p_value, 1);
  EXPECT_THROW(linear_complexity_test(BinarySequence::constant(100, 1), LinComplexityConfig::with_block(500)), Error);
  EXPECT_EQ(linear_complexity_test(E, LinComplexityConfig::with_block(500), 0.01, 4).p_value, r.p_value);
}

// ---------------------------------------------------------------------------

TEST(Dft, MatchesDirectTransform) {
  oracle::Gen g(8);
  for (std::size_t N : {1u, 2u, 3u, 17u, 1000u, 1023u, 2048u, 4096u}) {
    const auto e = g.signs(N);
    std::vector<Complex> x(N);
    std::vector<double> xd(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = xd[i] = e[i];
    const auto fast = dft(x);
    const auto slow = oracle::direct_dft(xd);
    double scale = 0, err = 0;
    for (std::size_t k = 0; k < N; ++k) {
      scale = std::max(scale, std::abs(slow[k]));
      err = std::max(err, std::abs(std::abs(fast[k]) - std::abs(slow[k])));
    }
    EXPECT_LT(err, 1e-6 * std::max(1.0, scale)) << N;
  }
}

TEST(Dft, KnownFailures) {
  const BinarySequence P = gen_periodic(BinarySequence::from_signs({1, -1, -1, 1}), 25000);
  EXPECT_LT(dft_test(P).p_value, 0.01);
  EXPECT_LT(dft_test(gen_rudin_shapiro(100000)).p_value, 0.01);
  EXPECT_LT(dft_test(gen_thue_morse(100000)).p_value, 0.01);
  EXPECT_THROW(dft_test(BinarySequence::constant(999, 1)), Error);
}

TEST(Dft, BinsAndThreshold) {
  oracle::Gen g(9);
  const auto r = dft_test(random_seq(g, 1001));
  EXPECT_EQ(r.detail("bins"), 499);
  EXPECT_NEAR(r.detail("threshold"), std::sqrt(1001 * std::log(20.0)), 1e-12);
  EXPECT_NEAR(r.detail("N0"), 0.95 * 1001 / 2, 1e-12);
}

// ---------------------------------------------------------------------------

TEST(Suite, LegendreInstancePasses) {
  const PrimeModulus p(100003);
  const auto results = run_suite(gen_legendre(p, parse_polynomial("x^31+1", p)));
  ASSERT_EQ(results.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(results[i].name, suite_test_names()[i]);
    EXPECT_TRUE(results[i].pass) << results[i].name << " p=" << results[i].p_value;
  }
}

TEST(Suite, ThueMorseFailsFft) {
  const auto results = run_suite(gen_thue_morse(100000));
  EXPECT_EQ(results[3].name, "FFT");
  EXPECT_FALSE(results[3].pass);
}

TEST(Suite, ShortSequenceSkipsAllButMonobit) {
  const auto results = run_suite(BinarySequence::constant(50, 1));
  EXPECT_EQ(results[0].status, TestStatus::Ok);
  EXPECT_FALSE(results[0].note.empty());
  for (std::size_t i = 1; i < results.size(); ++i) EXPECT_EQ(results[i].status, TestStatus::Skipped) << i;
}

TEST(Suite, PValuesInUnitIntervalAndParallelIdentical) {
  oracle::Gen g(10);
  for (int i = 0; i < 5; ++i) {
    const BinarySequence E = random_seq(g, g.length(1000, 20000));
    SuiteConfig c;
    const auto a = run_suite(E, c);
    c.threads = 3;
    const auto b = run_suite(E, c);
    for (std::size_t j = 0; j < a.size(); ++j) {
      EXPECT_EQ(format_result_record(a[j]), format_result_record(b[j]));
      if (a[j].status == TestStatus::Ok) {
        EXPECT_GE(a[j].p_value, 0);
        EXPECT_LE(a[j].p_value, 1);
        EXPECT_EQ(a[j].pass, a[j].p_value >= 0.01);
      }
    }
  }
}

TEST(Suite, ConfigParsing) {
  const SuiteConfig c = parse_suite_config("# comment\nalpha=0.05\nblock_frequency.M = 64\nlongest_run.M=8\n"
                                           "linear_complexity.M=1000\n");
  EXPECT_EQ(c.alpha, 0.05);
  EXPECT_EQ(c.block_frequency_M, 64u);
  EXPECT_EQ(c.longest_run_M, 8u);
  EXPECT_EQ(c.linear_complexity_M, 1000u);
  EXPECT_EQ(parse_suite_config("longest_run.M=auto").longest_run_M, 0u);
  EXPECT_THROW(parse_suite_config("alpha=2"), Error);
  EXPECT_THROW(parse_suite_config("bogus=1"), Error);
  EXPECT_THROW(parse_suite_config("alpha"), Error);
  EXPECT_THROW(parse_suite_config("longest_run.M=9"), Error);
}

TEST(Suite, ResultRecordRoundTrip) {
  oracle::Gen g(11);
  for (const auto& r : run_suite(random_seq(g, 5000))) {
    const TestResult back = parse_result_record(format_result_record(r));
    EXPECT_EQ(back.name, r.name);
    EXPECT_EQ(back.p_value, r.p_value);
    EXPECT_EQ(back.statistic, r.statistic);
    EXPECT_EQ(back.details, r.details);
    EXPECT_EQ(back.note, r.note);
    EXPECT_EQ(format_result_record(back), format_result_record(r));
  }
  EXPECT_THROW(parse_result_record("test=x status=maybe note="), Error);
  EXPECT_THROW(parse_result_record("status=ok"), Error);
}
