#pragma once

// Aggregation of per-sequence test results into a table of P-value decile
// counts, uniformity P-value and pass proportion per test.

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "prs/error.hpp"
#include "prs/nist.hpp"
#include "prs/special.hpp"

namespace prs {

// Uniformity P-values below this are flagged as non-uniform.
inline constexpr double kUniformityThreshold = 0.0001;

struct ReportRow {
  std::string test;
  std::array<std::size_t, 10> counts{};  // C1..C10
  double chi2 = 0;
  double uniformity_p = 1;
  std::size_t passed = 0;
  std::size_t total = 0;    // sequences on which the test ran
  std::size_t skipped = 0;
  bool uniformity_flag = false;
  bool proportion_flag = false;
};

struct SuiteReport {
  double alpha = kDefaultAlpha;
  std::size_t sequences = 0;
  std::vector<ReportRow> rows;
};

// C_i counts P-values in [(i-1)/10, i/10); the last bin is closed at 1.
inline std::size_t decile(double p) {
  if (!(p >= 0 && p <= 1)) throw Error(ErrorCode::InvalidInput, "P-value outside [0, 1]");
  return std::min<std::size_t>(9, static_cast<std::size_t>(std::floor(p * 10.0)));
}

// Acceptable pass proportions: phat -/+ 3 sqrt(phat (1 - phat) / s), phat = 1 - alpha.
inline std::pair<double, double> proportion_band(double alpha, std::size_t s) {
  const double phat = 1.0 - alpha;
  const double half = 3.0 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(s));
  return {phat - half, phat + half};
}

inline SuiteReport aggregate(const std::vector<std::vector<TestResult>>& per_sequence, double alpha = kDefaultAlpha) {
  if (per_sequence.empty()) throw Error(ErrorCode::InvalidInput, "no sequences to aggregate");
  SuiteReport rep;
  rep.alpha = alpha;
  rep.sequences = per_sequence.size();
  for (const auto& r : per_sequence.front()) {
    ReportRow row;
    row.test = r.name;
    rep.rows.push_back(row);
  }
  for (const auto& results : per_sequence) {
    if (results.size() != rep.rows.size()) throw Error(ErrorCode::InvalidInput, "sequences ran different test sets");
    for (std::size_t i = 0; i < results.size(); ++i) {
      const TestResult& r = results[i];
      ReportRow& row = rep.rows[i];
      if (r.name != row.test) throw Error(ErrorCode::InvalidInput, "sequences ran different test sets");
      if (r.status == TestStatus::Skipped) {
        ++row.skipped;
        continue;
      }
      ++row.counts[decile(r.p_value)];
      ++row.total;
      if (r.p_value >= alpha) ++row.passed;
    }
  }
  for (ReportRow& row : rep.rows) {
    if (row.total == 0) continue;
    // sum (c - s/10)^2 / (s/10) = sum (10c - s)^2 / (10 s), in integers.
    long long num = 0;
    for (std::size_t c : row.counts) {
      const long long d = 10 * static_cast<long long>(c) - static_cast<long long>(row.total);
      num += d * d;
    }
    row.chi2 = static_cast<double>(num) / (10.0 * static_cast<double>(row.total));
    row.uniformity_p = igamc(4.5, row.chi2 / 2.0);
    row.uniformity_flag = row.uniformity_p < kUniformityThreshold;
    const auto [lo, hi] = proportion_band(alpha, row.total);
    const double prop = static_cast<double>(row.passed) / static_cast<double>(row.total);
    row.proportion_flag = prop < lo || prop > hi;
  }
  return rep;
}

inline std::string render_text(const SuiteReport& rep) {
  const std::string rule(78, '-');
  std::ostringstream out;
  out << rule << "\n"
      << "RESULTS FOR THE UNIFORMITY OF P-VALUES AND THE PROPORTION OF PASSING SEQUENCES\n"
      << rule << "\n"
      << " C1  C2  C3  C4  C5  C6  C7  C8  C9 C10  P-VALUE  PROPORTION  STATISTICAL TEST\n"
      << rule << "\n";
  char buf[128];
  for (const ReportRow& row : rep.rows) {
    for (std::size_t c : row.counts) {
      std::snprintf(buf, sizeof buf, "%3zu ", c);
      out << buf;
    }
    if (row.total == 0) {
      std::snprintf(buf, sizeof buf, " %8s %-2s %5s     ", "----", "", "----");
    } else {
      const std::string prop = std::to_string(row.passed) + "/" + std::to_string(row.total);
      std::snprintf(buf, sizeof buf, " %8.6f %-2s%7s %-2s  ", row.uniformity_p, row.uniformity_flag ? "*" : "",
                    prop.c_str(), row.proportion_flag ? "*" : "");
    }
    out << buf << row.test << "\n";
  }
  out << rule << "\n";
  std::snprintf(buf, sizeof buf, "%zu sequences, alpha = %g", rep.sequences, rep.alpha);
  out << buf << "\n";
  if (!rep.rows.empty() && rep.rows.front().total > 0) {
    const auto [lo, hi] = proportion_band(rep.alpha, rep.rows.front().total);
    std::snprintf(buf, sizeof buf, "Proportion band for %zu sequences: [%.4f, %.4f]", rep.rows.front().total, lo, hi);
    out << buf << "\n";
  }
  out << "'*' after P-VALUE: non-uniform P-values (below " << kUniformityThreshold
      << "); after PROPORTION: outside the band.\n";
  return out.str();
}

// One line per row:
//   row test=<name> counts=c1,...,c10 chi2=<x> uniformity_p=<x> passed=<n>
//       total=<n> skipped=<n> uniformity_flag=<0|1> proportion_flag=<0|1>
inline std::string render_records(const SuiteReport& rep) {
  std::string s;
  for (const ReportRow& row : rep.rows) {
    s += "row test=" + row.test + " counts=";
    for (std::size_t i = 0; i < 10; ++i) s += (i ? "," : "") + std::to_string(row.counts[i]);
    s += " chi2=" + format_number(row.chi2) + " uniformity_p=" + format_number(row.uniformity_p);
    s += " passed=" + std::to_string(row.passed) + " total=" + std::to_string(row.total);
    s += " skipped=" + std::to_string(row.skipped);
    s += std::string(" uniformity_flag=") + (row.uniformity_flag ? "1" : "0");
    s += std::string(" proportion_flag=") + (row.proportion_flag ? "1" : "0") + "\n";
  }
  return s;
}

}  // namespace prs
