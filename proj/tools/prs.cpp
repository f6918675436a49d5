// prs: generate sequences, compute measures, run the statistical tests and
// check the bounds.
//
// Exit codes: 0 success, 1 violation or failing test row, 2 usage, 3 I/O.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prs/measures.hpp"
#include "prs/nist.hpp"
#include "prs/pipeline.hpp"
#include "prs/report.hpp"
#include "prs/sequence_io.hpp"
#include "prs/verify_suites.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(const prs::Error& e) {
  return e.code() == prs::ErrorCode::Io || e.code() == prs::ErrorCode::Parse ? kExitIo : kExitUsage;
}

void emit(const std::optional<fs::path>& out_file, const std::string& text) {
  if (out_file) prs::write_file(*out_file, text);
  else std::cout << text;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family = "legendre";
  std::optional<std::string> manifest;
  std::optional<prs::u64> p, gx, gy, order;
  std::optional<std::string> poly, pattern;
  std::optional<bool> half;
  std::optional<prs::i64> curve_a, curve_b, first;
  std::optional<std::size_t> length, count;
  std::string format = "ascii";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string out;
};

prs::RunManifest manifest_from(const GenerateArgs& a) {
  prs::RunManifest m;
  if (a.manifest) {
    m = prs::parse_manifest(prs::read_file(*a.manifest));
  } else {
    m.family = prs::family_preset(a.family);
    m.format = prs::parse_format(a.format);
  }
  auto& f = m.family;
  if (a.p) f.p = *a.p;
  if (a.poly) f.poly = *a.poly;
  if (a.half) f.half = *a.half;
  if (a.curve_a) f.curve_a = *a.curve_a;
  if (a.curve_b) f.curve_b = *a.curve_b;
  if (a.gx) f.gx = *a.gx;
  if (a.gy) f.gy = *a.gy;
  if (a.order) f.order = *a.order;
  if (a.length) f.length = *a.length;
  if (a.pattern) f.pattern = *a.pattern;
  if (a.first) f.first = *a.first;
  if (a.count) f.count = *a.count;
  return m;
}

int cmd_generate(const GenerateArgs& a) {
  const prs::RunManifest m = manifest_from(a);
  const auto seqs = prs::generate_family(m.family, a.threads);
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw prs::Error(prs::ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  const auto idx = prs::member_indices(m.family);
  for (std::size_t k = 0; k < seqs.size(); ++k)
    prs::write_sequence(dir / prs::member_file_name(idx[k]), m.format, seqs[k]);
  prs::write_file(dir / "manifest.txt", prs::format_manifest(m));
  std::cout << "wrote " << seqs.size() << " sequences to " << dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MeasureArgs {
  std::string file;
  std::vector<std::string> measures{"W"};
  std::string format = "ascii";
  std::optional<std::size_t> b_max, d_max, samples;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::string> out;
};

std::string witness_text(prs::MeasureKind kind, const prs::Witness& w) {
  auto list = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  switch (kind) {
    case prs::MeasureKind::WellDistribution:
      return "a=" + std::to_string(w.a) + " b=" + std::to_string(w.b) + " t=" + std::to_string(w.t);
    case prs::MeasureKind::Correlation: return "M=" + std::to_string(w.M) + " D=" + list(w.D);
    case prs::MeasureKind::Combined:
      return "a=" + std::to_string(w.a) + " b=" + std::to_string(w.b) + " t=" + std::to_string(w.t) + " D=" + list(w.D);
    case prs::MeasureKind::Normality: {
      std::string x;
      for (int v : w.pattern) x += v > 0 ? '1' : '0';
      return "X=" + x + " M=" + std::to_string(w.M);
    }
  }
  return "";
}

int cmd_measure(const MeasureArgs& a) {
  const prs::BinarySequence E = prs::read_sequence(a.file, prs::parse_format(a.format));
  std::string out;
  for (const std::string& spec : a.measures) {
    prs::MeasureKind kind;
    std::size_t k = 1;
    if (spec == "W") {
      kind = prs::MeasureKind::WellDistribution;
    } else if (spec.size() >= 2 && (spec[0] == 'C' || spec[0] == 'Q' || spec[0] == 'N')) {
      kind = spec[0] == 'C' ? prs::MeasureKind::Correlation
             : spec[0] == 'Q' ? prs::MeasureKind::Combined
                              : prs::MeasureKind::Normality;
      std::size_t pos = 0;
      try {
        k = std::stoul(spec.substr(1), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != spec.size() - 1 || k == 0) throw UsageError("bad measure '" + spec + "' (use W, C<k>, Q<k>, N<k>)");
    } else {
      throw UsageError("bad measure '" + spec + "' (use W, C<k>, Q<k>, N<k>)");
    }
    prs::SearchBounds b = prs::default_bounds(kind, E, k, a.seed);
    if (a.b_max) b.b_max = *a.b_max;
    if (a.d_max) b.d_max = *a.d_max;
    if (a.samples) b.sample_count = *a.samples;
    b.seed = a.seed;
    b.threads = a.threads;
    prs::MeasureResult r;
    switch (kind) {
      case prs::MeasureKind::WellDistribution: r = prs::well_distribution(E, b); break;
      case prs::MeasureKind::Correlation: r = prs::correlation(E, k, b); break;
      case prs::MeasureKind::Combined: r = prs::combined_measure(E, k, b); break;
      case prs::MeasureKind::Normality: r = prs::normality(E, k); break;
    }
    std::string value = std::to_string(r.numerator);
    if (r.denominator != 1) value += "/" + std::to_string(r.denominator);
    out += "measure=" + spec + " N=" + std::to_string(E.size()) + " value=" + value +
           " exact=" + (r.exact ? "1" : "0") + " " + witness_text(kind, r.witness);
    if (kind != prs::MeasureKind::Normality) {
      out += " b_max=" + (b.b_max ? std::to_string(*b.b_max) : std::string("all"));
      out += " d_max=" + (b.d_max ? std::to_string(*b.d_max) : std::string("all"));
      out += " samples=" + std::to_string(b.sample_count);
    }
    out += "\n";
  }
  emit(a.out ? std::optional<fs::path>(*a.out) : std::nullopt, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TestArgs {
  std::vector<std::string> files;
  std::optional<std::string> manifest, config;
  std::string format = "ascii";
  std::optional<double> alpha;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

int cmd_test(const TestArgs& a) {
  if (a.files.empty() == !a.manifest) throw UsageError("give sequence files or --manifest (not both)");
  prs::SuiteConfig config;
  std::vector<prs::BinarySequence> seqs;
  std::vector<std::string> names;
  int status = kExitOk;
  if (a.manifest) {
    const prs::RunManifest m = prs::parse_manifest(prs::read_file(*a.manifest));
    config = m.suite;
    seqs = prs::generate_family(m.family, a.threads);
    for (prs::i64 i : prs::member_indices(m.family)) names.push_back(prs::member_file_name(i));
  } else {
    const auto format = prs::parse_format(a.format);
    for (const auto& f : a.files) {
      try {
        seqs.push_back(prs::read_sequence(f, format));
        names.push_back(fs::path(f).filename().string());
      } catch (const prs::Error& e) {
        std::cerr << "prs test: " << f << ": " << e.what() << "\n";
        status = kExitIo;
      }
    }
  }
  if (a.config) config = prs::parse_suite_config(prs::read_file(*a.config));
  if (a.alpha) {
    if (!(*a.alpha > 0 && *a.alpha < 1)) throw UsageError("--alpha must lie in (0, 1)");
    config.alpha = *a.alpha;
  }
  config.threads = a.threads;
  if (seqs.empty()) return status == kExitOk ? kExitUsage : status;

  const auto results = prs::run_suites(seqs, config);
  const prs::SuiteReport rep = prs::aggregate(results, config.alpha);
  const std::string table = prs::render_text(rep);
  if (a.out) {
    const fs::path dir(*a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw prs::Error(prs::ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    prs::write_file(dir / "results.txt", prs::render_sequence_results(names, results));
    prs::write_file(dir / "report.txt", table);
    prs::write_file(dir / "report_rows.txt", prs::render_records(rep));
  }
  std::cout << table;
  if (status != kExitOk) return status;
  for (const auto& row : rep.rows)
    if (row.proportion_flag) return kExitFailure;
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string target = "all";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<std::size_t> samples, b_max, d_max;
  std::optional<std::string> out;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  if (a.target == "all") {
    suites = prs::verify_suite_names();
  } else {
    const auto& known = prs::verify_suite_names();
    if (std::find(known.begin(), known.end(), a.target) == known.end())
      throw UsageError("unknown check '" + a.target + "'");
    suites = {a.target};
  }
  prs::VerifyOptions opt;
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (a.samples) opt.random_count = *a.samples;
  if (a.b_max) opt.large_bounds.b_max = *a.b_max;
  if (a.d_max) opt.large_bounds.d_max = *a.d_max;
  opt.large_bounds.seed = a.seed;
  opt.large_bounds.threads = a.threads;

  std::string records;
  std::ostringstream table;
  table << "suite          checks    holds  inconclusive  not-applicable  violations\n";
  std::size_t violations = 0;
  for (const auto& name : suites) {
    const prs::SuiteOutcome o = prs::run_verify_suite(name, opt);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %8zu %8zu %13zu %15zu %11zu\n", name.c_str(), o.checks.size(), o.holding(),
                  o.inconclusive(), o.not_applicable(), o.violations());
    table << buf;
    violations += o.violations();
    for (const auto& c : o.checks) {
      records += "suite=" + name + " " + prs::format_check_record(c) + "\n";
      if (c.violation()) std::cerr << "VIOLATION: " << prs::format_check_record(c) << "\n";
    }
  }
  if (a.out) prs::write_file(*a.out, records);
  std::cout << table.str();
  return violations == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudorandom binary sequences: generation, measures, statistical tests, bound checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", prs::kToolVersion);

  auto positive_threads = CLI::Range(1u, 1024u);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Write a family of sequences and its manifest");
  gen->add_option("--family", g.family, "legendre | inverse | ec | rudin-shapiro | thue-morse | periodic")
      ->check(CLI::IsMember(prs::family_names()));
  gen->add_option("--manifest", g.manifest, "Take every setting from this manifest")->check(CLI::ExistingFile);
  gen->add_option("--p", g.p, "Prime modulus");
  gen->add_option("--poly", g.poly, "Polynomial template in x (and y for ec); 'i' is the member index");
  gen->add_option("--half", g.half, "Inverse family: keep n = 0..(p-1)/2");
  gen->add_option("--curve-a", g.curve_a, "Curve coefficient A");
  gen->add_option("--curve-b", g.curve_b, "Curve coefficient B");
  gen->add_option("--gx", g.gx, "Generator x");
  gen->add_option("--gy", g.gy, "Generator y");
  gen->add_option("--order", g.order, "Generator order T");
  gen->add_option("--length", g.length, "Member length (rudin-shapiro, thue-morse, periodic)");
  gen->add_option("--pattern", g.pattern, "Periodic pattern as 0/1 digits");
  gen->add_option("--first", g.first, "First member index");
  gen->add_option("--count", g.count, "Number of members");
  gen->add_option("--format", g.format, "ascii | packed")->check(CLI::IsMember({"ascii", "packed"}));
  gen->add_option("--threads", g.threads, "Worker threads")->check(positive_threads);
  gen->add_option("--seed", g.seed, "Unused by generation; accepted for uniformity");
  gen->add_option("--out", g.out, "Output directory")->required();

  MeasureArgs m;
  auto* mea = app.add_subcommand("measure", "Compute W, C_k, Q_k, N_k with witnesses");
  mea->add_option("file", m.file, "Sequence file")->required();
  mea->add_option("-m,--measure", m.measures, "W, C<k>, Q<k> or N<k>; repeatable")->delimiter(',');
  mea->add_option("--format", m.format, "ascii | packed")->check(CLI::IsMember({"ascii", "packed"}));
  mea->add_option("--b-max", m.b_max, "Largest progression step")->check(CLI::PositiveNumber);
  mea->add_option("--d-max", m.d_max, "Largest lag");
  mea->add_option("--samples", m.samples, "Random lag tuples beyond --d-max");
  mea->add_option("--seed", m.seed, "Seed for lag sampling");
  mea->add_option("--threads", m.threads, "Worker threads")->check(positive_threads);
  mea->add_option("--out", m.out, "Write records to this file");

  TestArgs t;
  auto* tst = app.add_subcommand("test", "Run the five tests and aggregate a report");
  tst->add_option("files", t.files, "Sequence files");
  tst->add_option("--manifest", t.manifest, "Generate the family of this manifest and test it")
      ->check(CLI::ExistingFile);
  tst->add_option("--config", t.config, "Suite configuration (key=value lines)")->check(CLI::ExistingFile);
  tst->add_option("--format", t.format, "ascii | packed")->check(CLI::IsMember({"ascii", "packed"}));
  tst->add_option("--alpha", t.alpha, "Significance level");
  tst->add_option("--threads", t.threads, "Worker threads")->check(positive_threads);
  tst->add_option("--seed", t.seed, "Unused by the tests; accepted for uniformity");
  tst->add_option("--out", t.out, "Directory for results.txt, report.txt, report_rows.txt");

  VerifyArgs v;
  auto* ver = app.add_subcommand("verify", "Check the inequalities on fixed corpora");
  std::vector<std::string> targets = prs::verify_suite_names();
  targets.insert(targets.begin(), "all");
  ver->add_option("target", v.target, "all or one suite")->check(CLI::IsMember(targets));
  ver->add_option("--samples", v.samples, "Random sequences per suite (0: default)");
  ver->add_option("--b-max", v.b_max, "Step cap for experiment-scale searches")->check(CLI::PositiveNumber);
  ver->add_option("--d-max", v.d_max, "Lag cap for experiment-scale searches");
  ver->add_option("--seed", v.seed, "Seed for random corpora and lag sampling");
  ver->add_option("--threads", v.threads, "Worker threads")->check(positive_threads);
  ver->add_option("--out", v.out, "Write all check records to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(g);
    if (*mea) return cmd_measure(m);
    if (*tst) return cmd_test(t);
    if (*ver) return cmd_verify(v);
  } catch (const UsageError& e) {
    std::cerr << "prs: " << e.what() << "\n";
    return kExitUsage;
  } catch (const prs::TheoremViolation& e) {
    std::cerr << "prs: " << e.what() << "\n";
    return kExitFailure;
  } catch (const prs::Error& e) {
    std::cerr << "prs: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "prs: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
