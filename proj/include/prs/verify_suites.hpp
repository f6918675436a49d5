#pragma once

// Fixed verification corpora: each suite runs one check over random and
// constructed sequences in the regime where its measures are exact.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "prs/expression.hpp"
#include "prs/generators.hpp"
#include "prs/parallel.hpp"
#include "prs/pipeline.hpp"
#include "prs/verify.hpp"

namespace prs {

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t random_count = 0;  // 0: suite default
  SearchBounds large_bounds = SearchBounds::restricted(64, 32, 10000, 1);  // construction suite at p ~ 10^5
};

struct SuiteOutcome {
  std::string name;
  std::vector<BoundCheck> checks;

  std::size_t count_if(bool (*pred)(const BoundCheck&)) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), pred));
  }
  std::size_t violations() const { return count_if([](const BoundCheck& c) { return c.violation(); }); }
  std::size_t holding() const {
    return count_if([](const BoundCheck& c) { return c.status == CheckStatus::Applicable && c.holds; });
  }
  std::size_t inconclusive() const {
    return count_if([](const BoundCheck& c) { return c.status == CheckStatus::Applicable && !c.conclusive; });
  }
  std::size_t not_applicable() const {
    return count_if([](const BoundCheck& c) { return c.status != CheckStatus::Applicable; });
  }
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"block-freq", "bw", "construction", "legendre-qc", "longest-run",
                                              "nk-chain"};
  return names;
}

inline BinarySequence random_sequence(std::mt19937_64& rng, std::size_t N) {
  std::vector<std::uint64_t> w((N + 63) / 64);
  for (auto& x : w) x = rng();
  if (N % 64 != 0) w.back() &= (std::uint64_t{1} << (N % 64)) - 1;
  return BinarySequence::from_words(std::move(w), N);
}

// All 2^N sequences of length N, in order of their bit pattern.
inline std::vector<BinarySequence> all_sequences(std::size_t N) {
  std::vector<BinarySequence> out;
  out.reserve(std::size_t{1} << N);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v) out.push_back(BinarySequence::from_words({v}, N));
  return out;
}

namespace detail {

template <class Check>
std::vector<BoundCheck> run_checks(const std::vector<BinarySequence>& corpus, unsigned threads, Check&& check) {
  std::vector<BoundCheck> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) { out[i] = check(corpus[i]); });
  return out;
}

inline void tag(std::vector<BoundCheck>& checks, std::size_t from, const std::string& label) {
  for (std::size_t i = from; i < checks.size(); ++i)
    checks[i].context = label + "#" + std::to_string(i - from) + " " + checks[i].context;
}

inline void append(std::vector<BoundCheck>& dst, std::vector<BoundCheck> src, const std::string& label) {
  const std::size_t from = dst.size();
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
  tag(dst, from, label);
}

// 20 structured sequences of length N: Legendre and inverse prefixes,
// Rudin-Shapiro and Thue-Morse blocks, periodic patterns.
inline std::vector<BinarySequence> constructed_corpus(std::size_t N) {
  std::vector<BinarySequence> out;
  const PrimeModulus p(2003);
  for (int i = 1; i <= 5; ++i)
    out.push_back(gen_legendre(p, parse_polynomial("x^3+" + std::to_string(i), p)).slice(0, N));
  for (int i = 1; i <= 5; ++i)
    out.push_back(gen_inverse(p, parse_polynomial("x^3+" + std::to_string(i) + "*x", p)).slice(0, N));
  for (int i = 0; i < 3; ++i) out.push_back(gen_rudin_shapiro(N, static_cast<std::uint64_t>(i) * N));
  for (int i = 0; i < 3; ++i) out.push_back(gen_thue_morse(N, static_cast<std::uint64_t>(i) * N));
  for (const char* pat : {"1001", "10", "1110", "110100"}) {
    const BinarySequence P = parse_ascii(pat);
    out.push_back(gen_periodic(P, N / P.size() + 1).slice(0, N));
  }
  return out;
}

}  // namespace detail

inline SuiteOutcome run_verify_suite(std::string_view name, const VerifyOptions& opt = {}) {
  SuiteOutcome out;
  out.name = std::string(name);
  std::mt19937_64 rng(opt.seed);
  auto count_or = [&](std::size_t d) { return opt.random_count != 0 ? opt.random_count : d; };

  if (name == "block-freq") {
    // N = 2000, M = 25 (t = 80), exact W.
    constexpr std::size_t N = 2000, M = 25;
    std::vector<BinarySequence> random;
    for (std::size_t i = 0; i < count_or(500); ++i) random.push_back(random_sequence(rng, N));
    auto check = [&](const BinarySequence& E) { return check_block_frequency_bound(E, M); };
    detail::append(out.checks, detail::run_checks(random, opt.threads, check), "random");
    detail::append(out.checks, detail::run_checks(detail::constructed_corpus(N), opt.threads, check), "constructed");
    detail::append(out.checks, {check(BinarySequence::constant(N, 1))}, "all-plus");
    return out;
  }
  if (name == "bw") {
    std::vector<BinarySequence> random;
    for (std::size_t i = 0; i < count_or(1000); ++i) random.push_back(random_sequence(rng, 20));
    auto check = [](const BinarySequence& E) { return check_bw_inequality(E); };
    detail::append(out.checks, detail::run_checks(random, opt.threads, check), "random-N20");
    detail::append(out.checks, detail::run_checks(all_sequences(12), opt.threads, check), "all-N12");
    return out;
  }
  if (name == "longest-run") {
    const std::vector<RunClass> split{{0, 2}, {3, 5}};
    auto check = [&](const BinarySequence& E) { return check_longest_run_bound(E, 5, split); };
    detail::append(out.checks, detail::run_checks(all_sequences(10), opt.threads, check), "all-N10-M5");
    const std::vector<RunClass> four{{0, 3}, {4, 4}};
    std::vector<BinarySequence> small{BinarySequence::constant(32, 1), gen_periodic(parse_ascii("10"), 16)};
    for (std::size_t i = 0; i < count_or(20); ++i) small.push_back(random_sequence(rng, 32));
    detail::append(out.checks,
                   detail::run_checks(small, opt.threads,
                                      [&](const BinarySequence& E) { return check_longest_run_bound(E, 4, four); }),
                   "N32-M4");
    return out;
  }
  if (name == "nk-chain") {
    const auto all10 = all_sequences(10);
    for (std::size_t k = 1; k <= 3; ++k)
      detail::append(out.checks,
                     detail::run_checks(all10, opt.threads, [k](const BinarySequence& E) { return check_nk_chain(E, k); }),
                     "all-N10-k" + std::to_string(k));
    std::vector<BinarySequence> random;
    for (std::size_t i = 0; i < count_or(20); ++i) random.push_back(random_sequence(rng, 32));
    detail::append(out.checks,
                   detail::run_checks(random, opt.threads, [](const BinarySequence& E) { return check_nk_chain(E, 4); }),
                   "random-N32-k4");
    return out;
  }
  if (name == "legendre-qc") {
    struct Case {
      u64 p;
      const char* f;
      std::size_t k;
      std::optional<std::size_t> d_max;
    };
    const std::vector<Case> cases{{103, "x+1", 2, {}},   {103, "x^3+2", 2, {}}, {103, "x^3+2", 3, {}},
                                  {211, "x^2+x+3", 2, {}}, {503, "x+1", 2, 64}};
    out.checks.resize(cases.size());
    parallel_for(cases.size(), opt.threads, [&](std::size_t i) {
      const PrimeModulus p(cases[i].p);
      const LegendreSpec spec{p, parse_polynomial(cases[i].f, p)};
      SearchBounds b = SearchBounds::exact();
      b.d_max = cases[i].d_max;
      out.checks[i] = check_legendre_qc(spec, cases[i].k, b);
      out.checks[i].context = std::string("f=") + cases[i].f + " " + out.checks[i].context;
    });
    return out;
  }
  if (name == "construction") {
    std::vector<std::pair<std::string, GeneratorSpec>> specs;
    const PrimeModulus small(2003);
    specs.emplace_back("legendre-2003", LegendreSpec{small, parse_polynomial("x^3+1", small)});
    FamilySpec leg = family_preset("legendre");
    specs.emplace_back("legendre-100003", member_spec(leg, 1));
    FamilySpec ec = family_preset("ec");
    specs.emplace_back("ec-100003", member_spec(ec, 1));
    FamilySpec inv = family_preset("inverse");
    specs.emplace_back("inverse-200003", member_spec(inv, 1));
    std::vector<std::vector<BoundCheck>> parts(specs.size());
    parallel_for(specs.size(), opt.threads, [&](std::size_t i) {
      ConstructionCheckOptions o;
      o.ell = 2;
      const bool inverse = std::holds_alternative<InverseSpec>(specs[i].second);
      const BinarySequence E = inverse ? BinarySequence::constant(1, 1) : generate(specs[i].second);
      if (E.size() > 2003) o.bounds = opt.large_bounds;
      parts[i] = check_construction_bounds(E, specs[i].second, o);
    });
    for (std::size_t i = 0; i < specs.size(); ++i) detail::append(out.checks, std::move(parts[i]), specs[i].first);
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown verification suite '" + std::string(name) + "'");
}

}  // namespace prs
