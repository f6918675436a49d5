#pragma once

// Concrete checks of the inequalities linking the measures to the test
// statistics and to the constructions.
//
// When a measure comes from a restricted search it is only a lower bound.
// A lower bound on the larger side of "lhs <= rhs" makes a pass conclusive;
// on the smaller side it makes a violation conclusive.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prs/ecurve.hpp"
#include "prs/generators.hpp"
#include "prs/measures.hpp"
#include "prs/nist.hpp"
#include "prs/numtheory.hpp"

namespace prs {

enum class CheckStatus { Applicable, NotApplicable, NoNumericBound };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Applicable: return "applicable";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::NoNumericBound: return "no-numeric-bound";
  }
  return "?";
}

struct BoundCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  std::optional<double> tight_rhs;  // sharper intermediate bound, lhs <= tight_rhs <= rhs
  bool holds = true;
  bool conclusive = true;
  CheckStatus status = CheckStatus::Applicable;
  std::string context;

  bool violation() const { return status == CheckStatus::Applicable && !holds && conclusive; }
};

class TheoremViolation : public std::runtime_error {
 public:
  explicit TheoremViolation(const BoundCheck& c)
      : std::runtime_error("inequality '" + c.name + "' violated: lhs=" + format_number(c.lhs) +
                           " rhs=" + format_number(c.rhs) + " [" + c.context + "]"),
        check_(c) {}
  const BoundCheck& check() const { return check_; }

 private:
  BoundCheck check_;
};

// Throws on a conclusive violation; returns the check otherwise.
inline const BoundCheck& require_holds(const BoundCheck& c) {
  if (c.violation()) throw TheoremViolation(c);
  return c;
}

namespace detail {

inline BoundCheck not_applicable(std::string name, std::string why, CheckStatus s = CheckStatus::NotApplicable) {
  BoundCheck c;
  c.name = std::move(name);
  c.status = s;
  c.holds = true;
  c.conclusive = false;
  c.context = std::move(why);
  return c;
}

inline void settle(BoundCheck& c) {
  c.holds = c.lhs <= c.rhs;
  if (c.tight_rhs) c.holds = c.holds && c.lhs <= *c.tight_rhs && *c.tight_rhs <= c.rhs;
}

inline std::string n_context(const BinarySequence& E) { return "N=" + std::to_string(E.size()); }

}  // namespace detail

// ---------------------------------------------------------------------------
// X_1 <= 2*10^4 W^2 / N and the sharper X_1 <= (2t/M) W^2, under
// M >= 20, M > N/100, t < 100.

inline BoundCheck check_block_frequency_bound(const BinarySequence& E, std::size_t M,
                                              const SearchBounds& bounds = SearchBounds::exact()) {
  const std::string name = "block-frequency";
  const std::size_t N = E.size();
  if (M == 0 || !block_frequency_recommended(N, M))
    return detail::not_applicable(name, detail::n_context(E) + " M=" + std::to_string(M) + ": needs M>=20, M>N/100, t<100");
  const std::size_t t = N / M;
  const MeasureResult W = well_distribution(E, bounds);
  const double w = W.value();
  BoundCheck c;
  c.name = name;
  c.lhs = block_frequency_statistic(E, M);
  c.rhs = 2e4 * w * w / static_cast<double>(N);
  c.tight_rhs = 2.0 * static_cast<double>(t) / static_cast<double>(M) * w * w;
  detail::settle(c);
  c.conclusive = W.exact || c.holds;  // W sits on the right-hand side
  c.context = detail::n_context(E) + " M=" + std::to_string(M) + " t=" + std::to_string(t) +
              " W=" + std::to_string(W.numerator) + (W.exact ? "" : " (lower bound)");
  return c;
}

// ---------------------------------------------------------------------------
// X_2 <= (M/N) (sum_{r=1}^{M} binom(M,r) Q_r)^2 for N = Mt.

inline constexpr std::size_t kLongestRunCheckMaxM = 8;
inline constexpr std::size_t kLongestRunCheckMaxN = 64;

inline BoundCheck check_longest_run_bound(const BinarySequence& E, std::size_t M, const std::vector<RunClass>& classes,
                                          double exact_budget = 2e8) {
  const std::string name = "longest-run";
  const std::size_t N = E.size();
  if (M == 0 || M > kLongestRunCheckMaxM || N > kLongestRunCheckMaxN || N % M != 0)
    return detail::not_applicable(name, detail::n_context(E) + " M=" + std::to_string(M) +
                                            ": needs M<=8, N<=64, M|N");
  LongestRunConfig config;
  config.M = M;
  config.probs = longest_run_probs(M, classes);
  config.classes = classes;
  const std::size_t t = N / M;
  const auto nu = longest_run_counts(E, config);

  double sum = 0;
  bool all_exact = true;
  std::string qs;
  for (std::size_t r = 1; r <= M; ++r) {
    SearchBounds s = SearchBounds::exact();
    if (work_estimate(MeasureKind::Combined, N, r, s) > exact_budget) {
      // Q_r sits on the right-hand side; a lower bound still certifies a pass.
      s.b_max = N;
      s.d_max = std::min(N - 1, r + 3);
    }
    const MeasureResult q = combined_measure(E, r, s);
    all_exact = all_exact && q.exact;
    sum += detail::binomial(static_cast<double>(M), static_cast<double>(r)) * q.value();
    qs += (r == 1 ? "" : ",") + std::to_string(q.numerator);
  }
  BoundCheck c;
  c.name = name;
  c.lhs = longest_run_statistic(nu, config.probs, t);
  c.rhs = static_cast<double>(M) / static_cast<double>(N) * sum * sum;
  detail::settle(c);
  c.conclusive = all_exact || c.holds;
  c.context = detail::n_context(E) + " M=" + std::to_string(M) + " K=" + std::to_string(classes.size() - 1) +
              " Q=" + qs + (all_exact ? "" : " (lower bounds)");
  return c;
}

// ---------------------------------------------------------------------------
// L(E) >= N - max_{1<=k<=L+1} C_k(E).

inline constexpr std::size_t kBwCheckMaxN = 24;

inline BoundCheck check_bw_inequality(const BinarySequence& E) {
  const std::string name = "bw";
  const std::size_t N = E.size();
  if (N > kBwCheckMaxN) return detail::not_applicable(name, detail::n_context(E) + ": needs N<=24");
  const std::size_t L = linear_complexity(E.to_bits());
  long long best = 0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= std::min(L + 1, N); ++k) {
    const MeasureResult r = correlation(E, k);
    if (r.numerator > best) {
      best = r.numerator;
      best_k = k;
    }
  }
  BoundCheck c;
  c.name = name;
  // Written as lhs <= rhs: N - max C_k <= L.
  c.lhs = static_cast<double>(N) - static_cast<double>(best);
  c.rhs = static_cast<double>(L);
  detail::settle(c);
  c.context = detail::n_context(E) + " L=" + std::to_string(L) + " maxC=" + std::to_string(best) +
              " at k=" + std::to_string(best_k);
  return c;
}

// ---------------------------------------------------------------------------
// N_k <= 2^-k sum_{t=1}^{k} binom(k,t) C_t <= max_{t<=k} C_t.

inline constexpr std::size_t kChainCheckMaxN = 40;
inline constexpr std::size_t kChainCheckMaxK = 4;

inline BoundCheck check_nk_chain(const BinarySequence& E, std::size_t k) {
  const std::string name = "nk-chain";
  const std::size_t N = E.size();
  if (k < 1 || k > kChainCheckMaxK || k > N || N > kChainCheckMaxN)
    return detail::not_applicable(name, detail::n_context(E) + " k=" + std::to_string(k) + ": needs N<=40, 1<=k<=4");
  const MeasureResult nk = normality(E, k);
  double middle = 0, top = 0;
  std::string cs;
  for (std::size_t t = 1; t <= k; ++t) {
    const MeasureResult ct = correlation(E, t);
    middle += detail::binomial(static_cast<double>(k), static_cast<double>(t)) * ct.value();
    top = std::max(top, ct.value());
    cs += (t == 1 ? "" : ",") + std::to_string(ct.numerator);
  }
  middle /= std::ldexp(1.0, static_cast<int>(k));
  BoundCheck c;
  c.name = name;
  c.lhs = nk.value();
  c.rhs = top;
  c.tight_rhs = middle;
  detail::settle(c);
  c.context = detail::n_context(E) + " k=" + std::to_string(k) + " C=" + cs;
  return c;
}

// ---------------------------------------------------------------------------
// Q_k(E_p) <= C_k(E_p) + 2k for the Legendre construction.

inline constexpr u64 kLegendreQcMaxP = 2003;

inline BoundCheck check_legendre_qc(const LegendreSpec& spec, std::size_t k,
                                    const SearchBounds& q_bounds = SearchBounds::exact()) {
  const std::string name = "legendre-qc";
  const u64 p = spec.p.value();
  const std::string ctx = "p=" + std::to_string(p) + " k=" + std::to_string(k);
  if (p > kLegendreQcMaxP || k < 1 || k > 3) return detail::not_applicable(name, ctx + ": needs p<=2003, 1<=k<=3");
  if (spec.f.degree() < 1 || !is_squarefree(spec.f))
    return detail::not_applicable(name, ctx + ": f must be squarefree of positive degree");
  const BinarySequence E = gen_legendre(spec.p, spec.f);
  const MeasureResult Q = combined_measure(E, k, q_bounds);
  const MeasureResult C = correlation(E, k);
  BoundCheck c;
  c.name = name;
  c.lhs = Q.value();
  c.rhs = C.value() + 2.0 * static_cast<double>(k);
  detail::settle(c);
  // Q on the left: a lower bound certifies only a violation.
  c.conclusive = c.holds ? Q.exact : true;
  c.context = ctx + " Q=" + std::to_string(Q.numerator) + (Q.exact ? "" : " (lower bound)") +
              " C=" + std::to_string(C.numerator);
  return c;
}

// ---------------------------------------------------------------------------
// Closed-form bounds of the Legendre and elliptic-curve constructions.

// Hypotheses (i)-(iii) for the correlation bound, with modulus q.
inline bool correlation_bound_hypothesis(u64 q, double k, std::size_t ell) {
  if (ell == 2) return true;
  if (ell < q && is_primitive_root_mod(2, q)) return true;
  return std::pow(4.0 * k, static_cast<double>(ell)) < static_cast<double>(q);
}

struct ConstructionCheckOptions {
  std::optional<SearchBounds> bounds;  // nullopt: default_bounds per measure
  std::size_t ell = 2;                 // correlation order
  bool f_not_square = true;            // asserted by the caller for elliptic-curve f
};

inline std::vector<BoundCheck> check_construction_bounds(const BinarySequence& E, const GeneratorSpec& spec,
                                                         const ConstructionCheckOptions& opt = {}) {
  std::vector<BoundCheck> out;
  auto bounds_for = [&](MeasureKind kind, std::size_t k) {
    return opt.bounds ? *opt.bounds : default_bounds(kind, E, k);
  };
  auto measure_check = [&](const std::string& name, const MeasureResult& m, double bound, std::string ctx) {
    BoundCheck c;
    c.name = name;
    c.lhs = m.value();
    c.rhs = bound;
    detail::settle(c);
    c.conclusive = c.holds ? m.exact : true;  // measure on the left
    c.context = std::move(ctx) + (m.exact ? "" : " (lower bound)");
    out.push_back(std::move(c));
  };

  if (const auto* s = std::get_if<LegendreSpec>(&spec)) {
    const u64 p = s->p.value();
    const double k = static_cast<double>(s->f.degree());
    const std::string ctx = "legendre p=" + std::to_string(p) + " k=" + std::to_string(s->f.degree());
    if (s->f.degree() < 1 || !is_squarefree(s->f)) {
      out.push_back(detail::not_applicable("legendre-W", ctx + ": f has a multiple zero"));
      out.push_back(detail::not_applicable("legendre-C", ctx + ": f has a multiple zero"));
      return out;
    }
    measure_check("legendre-W", well_distribution(E, bounds_for(MeasureKind::WellDistribution, 1)),
                  theoretical_bound(BoundKind::LegendreW, {static_cast<double>(p), 0, k, 0}), ctx);
    const std::string cctx = ctx + " l=" + std::to_string(opt.ell);
    if (!correlation_bound_hypothesis(p, k, opt.ell))
      out.push_back(detail::not_applicable("legendre-C", cctx + ": none of (i)-(iii) holds"));
    else
      measure_check("legendre-C", correlation(E, opt.ell, bounds_for(MeasureKind::Correlation, opt.ell)),
                    theoretical_bound(BoundKind::LegendreC, {static_cast<double>(p), 0, k, static_cast<double>(opt.ell)}),
                    cctx);
    return out;
  }
  if (const auto* s = std::get_if<EllipticCurveSpec>(&spec)) {
    const u64 p = s->curve.p();
    const u64 T = s->T;
    const double k = static_cast<double>(s->f.degree());
    const std::string ctx = "ec p=" + std::to_string(p) + " T=" + std::to_string(T) + " k=" + std::to_string(s->f.degree());
    std::string why;
    if (!is_prime(T)) why = ": T is not prime";
    else if (count_points(s->curve) != T) why = ": G does not generate E(F_p)";
    else if (!opt.f_not_square) why = ": f not asserted non-square";
    if (!why.empty()) {
      out.push_back(detail::not_applicable("ec-W", ctx + why));
      out.push_back(detail::not_applicable("ec-C", ctx + why));
      return out;
    }
    measure_check("ec-W", well_distribution(E, bounds_for(MeasureKind::WellDistribution, 1)),
                  theoretical_bound(BoundKind::EcW, {static_cast<double>(p), static_cast<double>(T), k, 0}), ctx);
    const std::string cctx = ctx + " l=" + std::to_string(opt.ell);
    if (!correlation_bound_hypothesis(T, k, opt.ell))
      out.push_back(detail::not_applicable("ec-C", cctx + ": none of (i)-(iii) holds with T"));
    else
      measure_check("ec-C", correlation(E, opt.ell, bounds_for(MeasureKind::Correlation, opt.ell)),
                    theoretical_bound(BoundKind::EcC,
                                      {static_cast<double>(p), static_cast<double>(T), k, static_cast<double>(opt.ell)}),
                    cctx);
    return out;
  }
  if (std::holds_alternative<InverseSpec>(spec)) {
    out.push_back(detail::not_applicable("inverse-W", "bound has an implicit constant: W << k p^(1/2) (log p)^2",
                                         CheckStatus::NoNumericBound));
    out.push_back(detail::not_applicable("inverse-C", "bound has an implicit constant: C_l << k l p^(1/2) (log p)^(l+1)",
                                         CheckStatus::NoNumericBound));
    return out;
  }
  out.push_back(detail::not_applicable("construction", "no closed-form bound for this generator"));
  return out;
}

// ---------------------------------------------------------------------------
// Line record: name=... status=... holds=... conclusive=... lhs=... rhs=...
// [tight_rhs=...] context=<rest of line>

inline std::string format_check_record(const BoundCheck& c) {
  std::string s = "check=" + c.name + " status=" + to_string(c.status) + " holds=" + (c.holds ? "1" : "0") +
                  " conclusive=" + (c.conclusive ? "1" : "0") + " lhs=" + format_number(c.lhs) +
                  " rhs=" + format_number(c.rhs);
  if (c.tight_rhs) s += " tight_rhs=" + format_number(*c.tight_rhs);
  s += " context=" + c.context;
  return s;
}

}  // namespace prs
