#pragma once

// Sequence families, run manifests and the batch generate/test pipeline.
//
// A family is indexed by i = first .. first+count-1:
//   legendre       f_i from the template `poly` ('i' replaced by i), n = 1..p
//   inverse        same, n = 0..p-1 (or 0..(p-1)/2 with half=1); the template
//                  "inverse-blocks" means f_i = x * prod_{j=15(i-1)+1}^{15i} (x^2 + j^2)
//   ec             y^2 = x^3 + curve_a x + curve_b over F_p, walk from
//                  (gx, gy) of order `order`, f_i from `poly` in x and y
//   rudin-shapiro  terms n = i*length .. (i+1)*length - 1
//   thue-morse     likewise
//   periodic       `pattern` ('1' = +1) repeated, member i starting at
//                  offset i*length
//
// Manifest: one key=value per line, '#' comments. Given the same manifest
// every output byte is the same, whatever the thread count.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "prs/ecurve.hpp"
#include "prs/error.hpp"
#include "prs/expression.hpp"
#include "prs/generators.hpp"
#include "prs/nist.hpp"
#include "prs/numtheory.hpp"
#include "prs/parallel.hpp"
#include "prs/report.hpp"
#include "prs/sequence.hpp"
#include "prs/sequence_io.hpp"

namespace prs {

inline constexpr const char* kToolVersion = "prs 1.0.0";

struct FamilySpec {
  std::string family = "legendre";
  u64 p = 100003;
  std::string poly = "x^31+i";
  bool half = false;
  i64 curve_a = -3;
  i64 curve_b = 74439;
  u64 gx = 85611;
  u64 gy = 76395;
  u64 order = 100523;
  std::size_t length = 100000;
  std::string pattern = "1001";
  i64 first = 1;
  std::size_t count = 20;
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"legendre", "inverse", "ec", "rudin-shapiro", "thue-morse", "periodic"};
  return names;
}

// Defaults for each family; the number-theoretic ones are the 20-member
// experiment families at p ~ 10^5.
inline FamilySpec family_preset(std::string_view name) {
  FamilySpec s;
  s.family = std::string(name);
  if (name == "legendre") return s;
  if (name == "inverse") {
    s.p = 200003;
    s.poly = "inverse-blocks";
    s.half = true;
    return s;
  }
  if (name == "ec") {
    s.poly = "x^31+x+y+i";
    s.first = 0;
    return s;
  }
  if (name == "rudin-shapiro" || name == "thue-morse" || name == "periodic") {
    s.first = 0;
    s.count = 1;
    return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

inline std::string member_polynomial(const FamilySpec& s, i64 i) {
  if (s.poly == "inverse-blocks") {
    if (i < 1) throw Error(ErrorCode::InvalidArgument, "inverse-blocks needs i >= 1");
    std::string out = "x";
    for (i64 j = 15 * (i - 1) + 1; j <= 15 * i; ++j) out += "*(x^2+" + std::to_string(j * j) + ")";
    return out;
  }
  std::string out;
  for (char c : s.poly) {
    if (c == 'i') out += "(" + std::to_string(i) + ")";
    else out += c;
  }
  return out;
}

inline BinarySequence parse_pattern(std::string_view pattern) {
  if (pattern.empty()) throw Error(ErrorCode::InvalidArgument, "empty pattern");
  return parse_ascii(pattern);
}

inline std::size_t checked_length(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "length must be positive");
  if (n > kMaxSequenceLength) throw Error(ErrorCode::TooLarge, "length exceeds 2^28");
  return n;
}

inline u64 member_start(const FamilySpec& s, i64 i) {
  if (i < 0) throw Error(ErrorCode::InvalidArgument, "member index must be non-negative");
  return static_cast<u64>(i) * s.length;
}

inline GeneratorSpec member_spec(const FamilySpec& s, i64 i) {
  if (s.family == "legendre") {
    PrimeModulus p(s.p);
    return LegendreSpec{p, parse_polynomial(member_polynomial(s, i), p)};
  }
  if (s.family == "inverse") {
    PrimeModulus p(s.p);
    return InverseSpec{p, parse_polynomial(member_polynomial(s, i), p), s.half};
  }
  if (s.family == "ec") {
    PrimeModulus p(s.p);
    CurveParams c(p, s.curve_a, s.curve_b);
    return EllipticCurveSpec{c, CurvePoint::affine(s.gx, s.gy), s.order, CurveFunction(c, member_polynomial(s, i))};
  }
  if (s.family == "rudin-shapiro") return RudinShapiroSpec{checked_length(s.length), member_start(s, i)};
  if (s.family == "thue-morse") return ThueMorseSpec{checked_length(s.length), member_start(s, i)};
  if (s.family == "periodic") {
    const BinarySequence pat = parse_pattern(s.pattern);
    const std::size_t P = pat.size();
    const std::size_t N = checked_length(s.length);
    const std::size_t shift = static_cast<std::size_t>(member_start(s, i) % P);
    SequenceBuilder rotated(P);
    for (std::size_t j = 0; j < P; ++j) rotated.push(pat[(shift + j) % P]);
    if (N % P != 0) throw Error(ErrorCode::InvalidArgument, "periodic length must be a multiple of the pattern length");
    return PeriodicSpec{std::move(rotated).build(), N / P};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + s.family + "'");
}

inline std::vector<i64> member_indices(const FamilySpec& s) {
  std::vector<i64> out;
  for (std::size_t k = 0; k < s.count; ++k) out.push_back(s.first + static_cast<i64>(k));
  return out;
}

inline std::string member_file_name(i64 i) { return "seq_" + std::to_string(i); }

inline std::vector<BinarySequence> generate_family(const FamilySpec& s, unsigned threads = 1) {
  const auto idx = member_indices(s);
  std::vector<GeneratorSpec> specs;
  for (i64 i : idx) specs.push_back(member_spec(s, i));  // validates before any work
  std::vector<BinarySequence> out(specs.size(), BinarySequence::constant(1, 1));
  parallel_for(specs.size(), threads, [&](std::size_t k) { out[k] = generate(specs[k]); });
  return out;
}

// ---------------------------------------------------------------------------

struct RunManifest {
  FamilySpec family;
  SuiteConfig suite;
  SequenceFormat format = SequenceFormat::Ascii;
  std::string tool = kToolVersion;
};

inline std::string format_manifest(const RunManifest& m) {
  const FamilySpec& f = m.family;
  std::ostringstream o;
  o << "tool=" << m.tool << "\n";
  o << "family=" << f.family << "\n";
  if (f.family == "legendre" || f.family == "inverse" || f.family == "ec") {
    o << "p=" << f.p << "\n" << "poly=" << f.poly << "\n";
  }
  if (f.family == "inverse") o << "half=" << (f.half ? 1 : 0) << "\n";
  if (f.family == "ec") {
    o << "curve_a=" << f.curve_a << "\n" << "curve_b=" << f.curve_b << "\n";
    o << "gx=" << f.gx << "\n" << "gy=" << f.gy << "\n" << "order=" << f.order << "\n";
  }
  if (f.family == "rudin-shapiro" || f.family == "thue-morse" || f.family == "periodic") o << "length=" << f.length << "\n";
  if (f.family == "periodic") o << "pattern=" << f.pattern << "\n";
  o << "first=" << f.first << "\n" << "count=" << f.count << "\n";
  o << "format=" << to_string(m.format) << "\n";
  o << "suite.alpha=" << format_number(m.suite.alpha) << "\n";
  o << "suite.block_frequency.M=" << m.suite.block_frequency_M << "\n";
  o << "suite.longest_run.M=" << (m.suite.longest_run_M == 0 ? std::string("auto") : std::to_string(m.suite.longest_run_M))
    << "\n";
  o << "suite.linear_complexity.M=" << m.suite.linear_complexity_M << "\n";
  return o.str();
}

inline RunManifest parse_manifest(std::string_view text) {
  // First pass: the family sets the defaults the other keys override.
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in{std::string(text)};
  std::string line, suite_text;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    line.erase(0, b);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "manifest line " + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  RunManifest m;
  for (const auto& [k, v] : kv)
    if (k == "family") m.family = family_preset(v);
  auto to_u64 = [](const std::string& k, const std::string& v) -> u64 {
    std::size_t pos = 0;
    u64 x = 0;
    try {
      x = std::stoull(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != v.size() || v.empty() || v[0] == '-') throw Error(ErrorCode::Parse, "manifest: bad value for " + k + ": '" + v + "'");
    return x;
  };
  auto to_i64 = [](const std::string& k, const std::string& v) -> i64 {
    std::size_t pos = 0;
    i64 x = 0;
    try {
      x = std::stoll(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != v.size() || v.empty()) throw Error(ErrorCode::Parse, "manifest: bad value for " + k + ": '" + v + "'");
    return x;
  };
  for (const auto& [k, v] : kv) {
    if (k == "tool") m.tool = v;
    else if (k == "family") continue;
    else if (k == "p") m.family.p = to_u64(k, v);
    else if (k == "poly") m.family.poly = v;
    else if (k == "half") m.family.half = to_u64(k, v) != 0;
    else if (k == "curve_a") m.family.curve_a = to_i64(k, v);
    else if (k == "curve_b") m.family.curve_b = to_i64(k, v);
    else if (k == "gx") m.family.gx = to_u64(k, v);
    else if (k == "gy") m.family.gy = to_u64(k, v);
    else if (k == "order") m.family.order = to_u64(k, v);
    else if (k == "length") m.family.length = to_u64(k, v);
    else if (k == "pattern") m.family.pattern = v;
    else if (k == "first") m.family.first = to_i64(k, v);
    else if (k == "count") m.family.count = to_u64(k, v);
    else if (k == "format") m.format = parse_format(v);
    else if (k.rfind("suite.", 0) == 0) suite_text += k.substr(6) + "=" + v + "\n";
    else throw Error(ErrorCode::Parse, "manifest: unknown key '" + k + "'");
  }
  m.suite = parse_suite_config(suite_text);
  return m;
}

// ---------------------------------------------------------------------------

// Per-sequence suites, sequences in parallel, results in input order.
inline std::vector<std::vector<TestResult>> run_suites(const std::vector<BinarySequence>& seqs, SuiteConfig config) {
  const unsigned threads = config.threads;
  config.threads = 1;
  std::vector<std::vector<TestResult>> out(seqs.size());
  parallel_for(seqs.size(), threads, [&](std::size_t k) { out[k] = run_suite(seqs[k], config); });
  return out;
}

inline std::string render_sequence_results(const std::vector<std::string>& names,
                                           const std::vector<std::vector<TestResult>>& results) {
  std::string s;
  for (std::size_t k = 0; k < results.size(); ++k) {
    s += "sequence=" + names[k] + "\n";
    for (const auto& r : results[k]) s += format_result_record(r) + "\n";
  }
  return s;
}

}  // namespace prs
