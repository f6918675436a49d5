#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "prs/ecurve.hpp"

using namespace prs;

namespace {

const PrimeModulus kP(100003);
const CurveParams kPaperCurve(kP, -3, 74439);
const CurvePoint kG = CurvePoint::affine(85611, 76395);

std::vector<CurvePoint> all_points(const CurveParams& c) {
  std::vector<CurvePoint> out{CurvePoint::at_infinity()};
  const u64 p = c.p();
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y)
      if (y * y % p == (x * x % p * x + c.a() * x + c.b()) % p) out.push_back(CurvePoint::affine(x, y));
  return out;
}

}  // namespace

TEST(Curve, RejectsSingular) {
  EXPECT_THROW(CurveParams(PrimeModulus(7), 0, 0), Error);
  EXPECT_THROW(CurveParams(PrimeModulus(5), -3, 2), Error);  // 4(-27) + 27*4 = 0
  EXPECT_THROW(CurveParams(PrimeModulus(3), 1, 1), Error);
}

TEST(Curve, OnCurveExamples) {
  EXPECT_TRUE(on_curve(CurvePoint::at_infinity(), kPaperCurve));
  EXPECT_TRUE(on_curve(kG, kPaperCurve));
  EXPECT_FALSE(on_curve(CurvePoint::affine(0, 1), CurveParams(PrimeModulus(5), 0, 2)));
  EXPECT_FALSE(on_curve(CurvePoint::affine(100003, 0), kPaperCurve));
}

TEST(Curve, AddExamples) {
  const CurveParams c(PrimeModulus(5), 1, 1);
  const CurvePoint P = CurvePoint::affine(0, 1);
  EXPECT_EQ(ec_add(P, CurvePoint::at_infinity(), c), P);
  EXPECT_EQ(ec_add(CurvePoint::at_infinity(), P, c), P);
  EXPECT_EQ(ec_add(P, CurvePoint::affine(0, 4), c), CurvePoint::at_infinity());
  EXPECT_EQ(ec_add(P, P, c), CurvePoint::affine(4, 2));
  EXPECT_EQ(ec_neg(P, c), CurvePoint::affine(0, 4));
}

TEST(Curve, AddRejectsOffCurvePoints) {
  const CurveParams c(PrimeModulus(5), 1, 1);
  try {
    ec_add(CurvePoint::affine(1, 1), CurvePoint::affine(0, 1), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPoint);
  }
  EXPECT_THROW(ec_scalar_mul(3, CurvePoint::affine(1, 1), c), Error);
}

TEST(Curve, ScalarMulExamples) {
  EXPECT_EQ(ec_scalar_mul(0, kG, kPaperCurve), CurvePoint::at_infinity());
  EXPECT_EQ(ec_scalar_mul(1, kG, kPaperCurve), kG);
  EXPECT_EQ(ec_scalar_mul(2, kG, kPaperCurve), ec_add(kG, kG, kPaperCurve));
  EXPECT_EQ(ec_scalar_mul(100523, kG, kPaperCurve), CurvePoint::at_infinity());
  EXPECT_NE(ec_scalar_mul(100522, kG, kPaperCurve), CurvePoint::at_infinity());
}

TEST(Curve, CountPointsExamples) {
  EXPECT_EQ(count_points(kPaperCurve), 100523u);
  EXPECT_EQ(count_points(CurveParams(PrimeModulus(5), 1, 1)), 9u);
  EXPECT_THROW(count_points(kPaperCurve, 1000), Error);
}

TEST(Curve, CountPointsMatchesEnumerationOnSmallFields) {
  for (u64 q : {5ull, 7ull, 11ull, 13ull}) {
    const PrimeModulus p(q);
    for (u64 a = 0; a < q; ++a)
      for (u64 b = 0; b < q; ++b) {
        if ((4 * a * a * a + 27 * b * b) % q == 0) continue;
        const CurveParams c(p, static_cast<i64>(a), static_cast<i64>(b));
        const u64 n = count_points(c);
        EXPECT_EQ(n, all_points(c).size()) << "p=" << q << " A=" << a << " B=" << b;
        EXPECT_LE(std::abs(static_cast<double>(q + 1) - static_cast<double>(n)), 2 * std::sqrt(static_cast<double>(q)));
      }
  }
}

TEST(Curve, HasseWeilOnRandomCurves) {
  std::mt19937_64 rng(7);
  for (u64 q : {1009ull, 10007ull, 65537ull}) {
    const PrimeModulus p(q);
    for (int i = 0; i < 5; ++i) {
      const i64 a = static_cast<i64>(rng() % q), b = static_cast<i64>(rng() % q);
      try {
        const CurveParams c(p, a, b);
        const double n = static_cast<double>(count_points(c));
        EXPECT_LE(std::abs(static_cast<double>(q + 1) - n), 2 * std::sqrt(static_cast<double>(q)));
      } catch (const Error&) {
      }
    }
  }
}

TEST(Curve, GroupLawProperties) {
  std::mt19937_64 rng(11);
  const std::vector<std::pair<u64, std::pair<i64, i64>>> curves{
      {101, {2, 3}}, {103, {1, 1}}, {211, {5, 7}}, {307, {0, 4}}, {499, {3, 0}}};
  for (const auto& [q, ab] : curves) {
    const CurveParams c(PrimeModulus(q), ab.first, ab.second);
    const auto pts = all_points(c);
    auto pick = [&] { return pts[rng() % pts.size()]; };
    for (int i = 0; i < 200; ++i) {
      const CurvePoint P = pick(), Q = pick(), R = pick();
      const CurvePoint PQ = ec_add(P, Q, c);
      ASSERT_TRUE(on_curve(PQ, c));
      ASSERT_EQ(PQ, ec_add(Q, P, c));
      ASSERT_EQ(ec_add(PQ, R, c), ec_add(P, ec_add(Q, R, c), c));
      ASSERT_EQ(ec_add(P, ec_neg(P, c), c), CurvePoint::at_infinity());
      const u64 m = rng() % 1000, n = rng() % 1000;
      ASSERT_EQ(ec_scalar_mul(m + n, P, c), ec_add(ec_scalar_mul(m, P, c), ec_scalar_mul(n, P, c), c));
    }
    // Lagrange: the group order kills every point.
    for (const CurvePoint& P : pts) ASSERT_EQ(ec_scalar_mul(pts.size(), P, c), CurvePoint::at_infinity());
  }
}

TEST(CurveFunction, Examples) {
  EXPECT_EQ(curve_function_eval(CurveFunction(kPaperCurve, "x"), kG), 85611u);
  const u64 v = curve_function_eval(CurveFunction(kPaperCurve, "x^31+x+y+0"), kG);
  EXPECT_EQ(v, (mod_pow(85611, 31, kP) + 85611 + 76395) % 100003);
  const CurveFunction eq(kPaperCurve, "y^2 - x^3 + 3*x - 74439");
  for (u64 n = 1; n < 50; ++n) EXPECT_EQ(curve_function_eval(eq, ec_scalar_mul(n, kG, kPaperCurve)), 0u);
  try {
    curve_function_eval(CurveFunction(kPaperCurve, "x"), CurvePoint::at_infinity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedAtInfinity);
  }
}

TEST(CurveFunction, Degree) {
  EXPECT_EQ(CurveFunction(kPaperCurve, "x^31+x+y+1").degree(), 62u);
  EXPECT_EQ(CurveFunction(kPaperCurve, "y").degree(), 3u);
  EXPECT_EQ(CurveFunction(kPaperCurve, "y^2").degree(), 6u);  // rewritten as x^3 + Ax + B
  EXPECT_EQ(CurveFunction(kPaperCurve, "x*y").degree(), 5u);
}
