#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prs/generators.hpp"
#include "prs/measures.hpp"
#include "prs/sequence_io.hpp"

using namespace prs;
using oracle::Signs;

namespace {

BinarySequence alternating(std::size_t N) {
  SequenceBuilder b(N);
  for (std::size_t i = 0; i < N; ++i) b.push(i % 2 ? -1 : 1);
  return std::move(b).build();
}

void expect_witness_valid(const BinarySequence& E, std::size_t k) {
  const auto w = well_distribution(E);
  EXPECT_EQ(std::llabs(well_distribution_sum(E, w.witness.a, w.witness.b, w.witness.t)), w.numerator);
  const auto c = correlation(E, k);
  EXPECT_EQ(std::llabs(correlation_sum(E, c.witness.D, c.witness.M)), c.numerator);
  const auto q = combined_measure(E, k);
  EXPECT_EQ(std::llabs(combined_sum(E, q.witness.a, q.witness.b, q.witness.t, q.witness.D)), q.numerator);
  const auto n = normality(E, k);
  EXPECT_EQ(normality_deviation_scaled(E, n.witness.pattern, n.witness.M), n.numerator);
  EXPECT_EQ(n.denominator, 1LL << k);
}

}  // namespace

TEST(WellDistribution, Examples) {
  auto r = well_distribution(BinarySequence::constant(10, 1));
  EXPECT_EQ(r.numerator, 10);
  EXPECT_EQ(r.witness, (Witness{1, 1, 10, 0, {}, {}}));
  EXPECT_TRUE(r.exact);
  r = well_distribution(alternating(10));
  EXPECT_EQ(r.numerator, 5);
  EXPECT_EQ(r.witness.a, 1u);
  EXPECT_EQ(r.witness.b, 2u);
  EXPECT_EQ(r.witness.t, 5u);
  EXPECT_EQ(well_distribution(BinarySequence::constant(1, -1)).numerator, 1);
}

TEST(Correlation, Examples) {
  auto r = correlation(alternating(10), 2);
  EXPECT_EQ(r.numerator, 9);
  EXPECT_EQ(r.witness.D, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.witness.M, 9u);
  for (std::size_t N : {2u, 7u, 64u, 65u, 200u}) {
    r = correlation(BinarySequence::constant(N, 1), 2);
    EXPECT_EQ(r.numerator, static_cast<long long>(N) - 1);
    EXPECT_EQ(r.witness.D, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.witness.M, N - 1);
  }
  const BinarySequence P = gen_periodic(BinarySequence::from_signs({1, -1, -1, 1}), 5);
  const std::vector<std::size_t> D02{0, 2};
  EXPECT_EQ(correlation_sum(P, D02, 18), -18);
  EXPECT_EQ(correlation(P, 2).numerator, 18);
}

TEST(Correlation, RestrictedLagsAreLowerBounds) {
  oracle::Gen g(21);
  const BinarySequence E = oracle::seq(g.signs(40));
  const auto r = correlation(E, 2, SearchBounds::restricted(1, 8));
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.numerator, correlation(E, 2).numerator);
  EXPECT_LE(r.witness.D.back(), 8u);
  EXPECT_TRUE(correlation(E, 2, SearchBounds::restricted(1, 39)).exact);
}

TEST(Combined, PeriodicExample) {
  const BinarySequence P = gen_periodic(BinarySequence::from_signs({1, -1, -1, 1}), 250);
  const std::vector<std::size_t> D{0, 1, 2, 3};
  EXPECT_EQ(combined_sum(P, 1, 4, 249, D), 250);
  const auto r = combined_measure(P, 4, SearchBounds::restricted(4, 3));
  EXPECT_GE(r.numerator, 250);
  EXPECT_FALSE(r.exact);
}

TEST(Normality, Examples) {
  const auto r = normality(BinarySequence::constant(8, 1), 1);
  EXPECT_EQ(r.numerator, 8);
  EXPECT_EQ(r.denominator, 2);
  EXPECT_DOUBLE_EQ(r.value(), 4.0);
  EXPECT_EQ(r.witness.pattern, std::vector<int>{-1});  // ties with +1; smaller code wins
  EXPECT_EQ(r.witness.M, 8u);
  EXPECT_TRUE(r.exact);
}

TEST(Measures, ErrorPaths) {
  const BinarySequence E = BinarySequence::constant(5, 1);
  EXPECT_THROW(correlation(E, 6), Error);
  EXPECT_THROW(correlation(E, 0), Error);
  EXPECT_THROW(combined_measure(E, 6), Error);
  EXPECT_THROW(normality(E, 0), Error);
  EXPECT_THROW(normality(BinarySequence::constant(30, 1), 25), Error);
  EXPECT_THROW(well_distribution_sum(E, 1, 2, 4), Error);
  const std::vector<std::size_t> bad{1, 1};
  EXPECT_THROW(correlation_sum(E, bad, 2), Error);
  try {
    correlation(BinarySequence::constant(100000, 1), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Measures, MatchOraclesExhaustivelyUpTo10) {
  for (std::size_t N = 1; N <= 10; ++N) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v) {
      const Signs e = oracle::signs_of(v, N);
      const BinarySequence E = oracle::seq(e);
      ASSERT_EQ(well_distribution(E).numerator, oracle::W(e)) << N << ":" << v;
      for (std::size_t k = 1; k <= std::min<std::size_t>(3, N); ++k) {
        ASSERT_EQ(correlation(E, k).numerator, oracle::C(e, k)) << N << ":" << v << " k=" << k;
        ASSERT_EQ(combined_measure(E, k).numerator, oracle::Q(e, k)) << N << ":" << v << " k=" << k;
        ASSERT_EQ(normality(E, k).numerator, oracle::N_scaled(e, k)) << N << ":" << v << " k=" << k;
      }
    }
  }
}

TEST(Measures, MatchOraclesOnRandomUpTo14) {
  oracle::Gen g(2024);
  for (int i = 0; i < 500; ++i) {
    const Signs e = g.signs(g.length(11, 14));
    const BinarySequence E = oracle::seq(e);
    ASSERT_EQ(well_distribution(E).numerator, oracle::W(e));
    for (std::size_t k = 1; k <= 3; ++k) {
      ASSERT_EQ(correlation(E, k).numerator, oracle::C(e, k)) << k;
      ASSERT_EQ(combined_measure(E, k).numerator, oracle::Q(e, k)) << k;
      ASSERT_EQ(normality(E, k).numerator, oracle::N_scaled(e, k)) << k;
    }
  }
}

TEST(Measures, WitnessesReproduceValues) {
  oracle::Gen g(5);
  for (int i = 0; i < 100; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(4, 48)));
    expect_witness_valid(E, 1 + g.below(3));
  }
  // Larger inputs with restricted searches, sampled lags included.
  for (int i = 0; i < 10; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(500, 3000)));
    SearchBounds b = SearchBounds::restricted(16, 12, 200, g.below(1000));
    const auto c = correlation(E, 3, b);
    EXPECT_EQ(std::llabs(correlation_sum(E, c.witness.D, c.witness.M)), c.numerator);
    const auto q = combined_measure(E, 2, b);
    EXPECT_EQ(std::llabs(combined_sum(E, q.witness.a, q.witness.b, q.witness.t, q.witness.D)), q.numerator);
    const auto w = well_distribution(E, b);
    EXPECT_EQ(std::llabs(well_distribution_sum(E, w.witness.a, w.witness.b, w.witness.t)), w.numerator);
  }
}

TEST(Measures, QOneEqualsW) {
  oracle::Gen g(6);
  for (int i = 0; i < 100; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(1, 64)));
    EXPECT_EQ(combined_measure(E, 1).numerator, well_distribution(E).numerator);
  }
}

TEST(Measures, CorrelationAtMostCombined) {
  oracle::Gen g(7);
  for (int i = 0; i < 100; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(3, 40)));
    for (std::size_t k : {2u, 3u}) EXPECT_LE(correlation(E, k).numerator, combined_measure(E, k).numerator);
  }
}

TEST(Measures, NormalityOneIsPrefixImbalance) {
  oracle::Gen g(8);
  for (int i = 0; i < 100; ++i) {
    const Signs e = g.signs(g.length(1, 64));
    long long s = 0, best = 0;
    for (int v : e) best = std::max(best, std::llabs(s += v));
    EXPECT_EQ(normality(oracle::seq(e), 1).numerator, best);
  }
}

TEST(Measures, NormalityChain) {
  oracle::Gen g(9);
  for (int i = 0; i < 100; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(4, 40)));
    for (std::size_t k = 1; k <= 4; ++k) {
      double mix = 0, top = 0;
      for (std::size_t t = 1; t <= k; ++t) {
        const double c = static_cast<double>(correlation(E, t).numerator);
        mix += std::tgamma(k + 1.0) / (std::tgamma(t + 1.0) * std::tgamma(k - t + 1.0)) * c;
        top = std::max(top, c);
      }
      mix /= std::ldexp(1.0, static_cast<int>(k));
      const double nk = normality(E, k).value();
      EXPECT_LE(nk, mix + 1e-9);
      EXPECT_LE(mix, top + 1e-9);
    }
  }
}

TEST(Measures, MonotoneInBounds) {
  oracle::Gen g(10);
  for (int i = 0; i < 20; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(50, 300)));
    long long w = 0, c = 0, q = 0;
    for (std::size_t cap = 1; cap <= 16; cap *= 2) {
      const SearchBounds b = SearchBounds::restricted(cap, cap);
      const long long w2 = well_distribution(E, b).numerator;
      const long long c2 = correlation(E, 2, b).numerator;
      const long long q2 = combined_measure(E, 2, b).numerator;
      EXPECT_GE(w2, w);
      EXPECT_GE(c2, c);
      EXPECT_GE(q2, q);
      w = w2, c = c2, q = q2;
    }
    EXPECT_LE(w, well_distribution(E).numerator);
  }
}

TEST(Measures, NegationSymmetry) {
  oracle::Gen g(11);
  for (int i = 0; i < 50; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(2, 60)));
    const BinarySequence F = E.negated();
    EXPECT_EQ(well_distribution(E), well_distribution(F));
    EXPECT_EQ(correlation(E, 2), correlation(F, 2));
    if (E.size() >= 4) {
      EXPECT_EQ(correlation(E, 4).numerator, correlation(F, 4).numerator);
    }
  }
}

TEST(Measures, ThreadCountDoesNotChangeResults) {
  oracle::Gen g(12);
  for (int i = 0; i < 5; ++i) {
    const BinarySequence E = oracle::seq(g.signs(g.length(2000, 5000)));
    SearchBounds serial = SearchBounds::restricted(64, 10, 500, 99);
    SearchBounds parallel = serial;
    parallel.threads = 4;
    EXPECT_EQ(well_distribution(E, serial), well_distribution(E, parallel));
    EXPECT_EQ(well_distribution(E), [&] {
      SearchBounds s = SearchBounds::exact();
      s.threads = 3;
      return well_distribution(E, s);
    }());
    EXPECT_EQ(correlation(E, 2, serial), correlation(E, 2, parallel));
    EXPECT_EQ(combined_measure(E, 3, serial), combined_measure(E, 3, parallel));
  }
}

TEST(Measures, SampledLagsAreSeeded) {
  const BinarySequence E = gen_rudin_shapiro(4000);
  const auto a = correlation(E, 2, SearchBounds::restricted(1, 4, 300, 5));
  const auto b = correlation(E, 2, SearchBounds::restricted(1, 4, 300, 5));
  EXPECT_EQ(a, b);
  EXPECT_GE(a.numerator, correlation(E, 2, SearchBounds::restricted(1, 4)).numerator);
}

TEST(DefaultBounds, ExactWhenAffordable) {
  EXPECT_FALSE(default_bounds(MeasureKind::Correlation, 100, 2).d_max.has_value());
  const SearchBounds big = default_bounds(MeasureKind::Correlation, 100003, 2);
  EXPECT_EQ(big.b_max, 64u);
  EXPECT_EQ(big.d_max, 32u);
  EXPECT_EQ(big.sample_count, 10000u);
  EXPECT_EQ(default_bounds(MeasureKind::Correlation, 100003, 1).sample_count, 0u);
  const PrimeModulus p(100003);
  const BinarySequence L = gen_legendre(p, PolyOverFp(p, {1, 0, 0, 1}));
  EXPECT_FALSE(default_bounds(MeasureKind::WellDistribution, L, 1).b_max.has_value());
  // Pruning makes the constant sequence cheap; the length-only estimate does not see that.
  EXPECT_FALSE(default_bounds(MeasureKind::WellDistribution, BinarySequence::constant(100003, 1), 1).b_max.has_value());
  EXPECT_EQ(default_bounds(MeasureKind::WellDistribution, 100003, 1).b_max, 64u);
}

TEST(TheoreticalBound, Examples) {
  EXPECT_NEAR(theoretical_bound(BoundKind::LegendreW, {100003, 0, 31, 0}), 1.1287e6, 0.0001e6);
  EXPECT_NEAR(theoretical_bound(BoundKind::EcW, {100003, 100523, 62, 0}),
              6 * 62 * std::sqrt(100003.0) * std::log(100523.0), 1e-6);
  EXPECT_NEAR(theoretical_bound(BoundKind::LegendreC, {7, 0, 1, 2}), 102.96, 0.01);
  EXPECT_NEAR(theoretical_bound(parse_bound_kind("ec-C"), {100003, 100523, 62, 2}),
              2 * 2 * 62 * std::sqrt(100003.0) * std::log(100523.0), 1e-6);
  EXPECT_THROW(parse_bound_kind("inverse-W"), Error);
  EXPECT_THROW(theoretical_bound(BoundKind::LegendreW, {0, 0, 1, 0}), Error);
  EXPECT_THROW(theoretical_bound(BoundKind::EcC, {7, 9, 1, 0}), Error);
}
