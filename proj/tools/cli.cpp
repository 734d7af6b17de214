#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lacunary/classifier.hpp"
#include "lacunary/cofinite.hpp"
#include "lacunary/error.hpp"
#include "lacunary/oracle.hpp"
#include "lacunary/serialization.hpp"

namespace lacunary::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::optional<double> tol_rank, tol_contact, slack;
  std::optional<int> grid_log2;
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemFile load_problem(const std::string& path) { return parse_problem(parse_json_text(read_file(path))); }

// Flags beat the problem's options, which beat the defaults.
Tolerances tolerances(const ProblemFile& pf, const Flags& f) {
  Tolerances t;
  if (pf.tol_rank) t.tol_rank = *pf.tol_rank;
  if (pf.tol_contact) t.tol_contact = *pf.tol_contact;
  if (pf.slack) t.slack = *pf.slack;
  if (pf.grid_log2) t.grid_log2 = *pf.grid_log2;
  if (f.tol_rank) t.tol_rank = *f.tol_rank;
  if (f.tol_contact) t.tol_contact = *f.tol_contact;
  if (f.slack) t.slack = *f.slack;
  if (f.grid_log2) t.grid_log2 = *f.grid_log2;
  return t;
}

int exit_code(Verdict::Kind k) { return k == Verdict::Kind::Indeterminate ? 2 : 0; }

Verdict monomial_verdict(const ProblemFile& pf) {
  if (pf.poly.degree() > 0) {
    for (int k = 1; k <= pf.poly.degree(); ++k)
      if (pf.poly.coeff(k) != Complex(0.0))
        throw Error("spectrum violation at k=" + std::to_string(k + pf.spectrum.shift));
  }
  if (pf.poly.is_zero()) throw Error("zero polynomial");
  Verdict v;
  v.kind = Verdict::Kind::Monomial;
  v.scale = std::abs(pf.poly.coeff(0));
  v.p = pf.poly / v.scale;
  v.diagnostics.push_back("single-frequency spectrum");
  return v;
}

struct Outcome {
  Json json;
  int code = 0;
};

Outcome classify_problem(const ProblemFile& pf, const Tolerances& tol) {
  if (pf.spectrum.monomial()) {
    const auto v = monomial_verdict(pf);
    return {verdict_to_json(v, pf, tol), 0};
  }
  const auto& spectrum = *pf.spectrum.spectrum;
  if (spectrum.is_finite()) {
    const auto v = classify(pf.poly, spectrum, tol);
    return {verdict_to_json(v, pf, tol), exit_code(v.kind)};
  }
  const auto v = classify_cofinite(pf.boundary(tol.grid_log2), spectrum, pf.allow_unknown);
  return {verdict_to_json(v, pf, tol), exit_code(v.kind)};
}

void emit(const Json& j, const Flags& f, std::ostream& out) {
  if (f.out_path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(f.out_path);
  if (!file) throw Error("cannot write " + f.out_path);
  file << j.dump(2) << '\n';
}

int cmd_classify(const std::string& path, const Flags& f, std::ostream& out) {
  const auto pf = load_problem(path);
  auto r = classify_problem(pf, tolerances(pf, f));
  emit(r.json, f, out);
  return r.code;
}

int cmd_witness(const std::string& path, const Flags& f, std::ostream& out) {
  const auto pf = load_problem(path);
  const auto tol = tolerances(pf, f);
  auto r = classify_problem(pf, tol);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = r.json["verdict"];
  j["problem"] = pf.raw;
  for (const char* key : {"p", "shift", "scale", "witness", "epsilon", "certificate"})
    if (r.json.contains(key)) j[key] = r.json[key];
  if (!j.contains("witness")) j["witness"] = nullptr;
  j["tolerances"] = to_json(tol);
  emit(j, f, out);
  return r.code;
}

CirclePolynomial unshift(const std::vector<Complex>& coeffs, int shift) {
  return CirclePolynomial(coeffs).shifted(-shift);
}

// Re-checks a stored verdict or witness file against its embedded problem.
int cmd_verify(const std::string& path, const Flags& f, std::ostream& out) {
  const Json stored = parse_json_text(read_file(path));
  if (!stored.contains("problem") || !stored.contains("verdict"))
    throw Error("verify needs a file written by classify or witness");
  const auto pf = parse_problem(stored["problem"]);
  Tolerances tol = tolerances(pf, f);
  if (stored.contains("tolerances")) {
    const auto& t = stored["tolerances"];
    if (!f.tol_rank) tol.tol_rank = t.value("tol_rank", tol.tol_rank);
    if (!f.tol_contact) tol.tol_contact = t.value("tol_contact", tol.tol_contact);
    if (!f.slack) tol.slack = t.value("slack", tol.slack);
    if (!f.grid_log2) tol.grid_log2 = t.value("grid_log2", tol.grid_log2);
  }
  const std::string claimed = stored["verdict"].get<std::string>();

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["file"] = path;
  report["claimed"] = claimed;
  bool ok = true;
  std::string failure;

  const bool has_witness = stored.contains("witness") && !stored["witness"].is_null();
  if (claimed == "non_extreme") {
    if (!has_witness) throw Error("non_extreme verdict without a witness");
    const auto coeffs = coeffs_from_json(stored["witness"]["coeffs"]);
    if (pf.spectrum.monomial()) throw Error("monomial spectrum cannot carry a witness");
    const auto& spectrum = *pf.spectrum.spectrum;
    if (spectrum.is_finite()) {
      const auto p = normalize_to_unit(pf.poly);
      const auto q = unshift(coeffs, pf.spectrum.shift);
      VerifyOptions opts;
      opts.slack = tol.slack;
      const auto cert = check_witness(p, q, spectrum, opts);
      report["certificate"] = to_json(cert);
      ok = cert.passed;
      failure = cert.failure;
    } else {
      const int g = stored.contains("certificate") ? stored["certificate"].value("grid_log2", tol.grid_log2)
                                                   : tol.grid_log2;
      const auto cert = check_cofinite_witness(pf.boundary(g), spectrum.gaps(), coeffs);
      report["certificate"] = to_json(cert);
      ok = cert.passed;
      failure = cert.failure;
    }
  } else {
    // No witness to check: rerun the decision and compare.
    const auto r = classify_problem(pf, tol);
    const std::string now = r.json["verdict"].get<std::string>();
    report["recomputed"] = now;
    ok = now == claimed;
    if (!ok) failure = "verdict changed from " + claimed + " to " + now;
  }
  report["verified"] = ok;
  if (!ok) report["failure"] = failure;
  emit(report, f, out);
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& path, const Flags& f, int trials, std::uint64_t seed, std::ostream& out) {
  const auto pf = load_problem(path);
  if (pf.spectrum.monomial() || !pf.spectrum.spectrum->is_finite())
    throw Error("the oracle handles finite spectra with at least two frequencies");
  const auto tol = tolerances(pf, f);
  SearchConfig cfg;
  cfg.trials = trials > 0 ? trials : pf.trials.value_or(cfg.trials);
  cfg.seed = seed > 0 ? seed : pf.seed.value_or(cfg.seed);
  cfg.slack = tol.slack;
  const auto& spectrum = *pf.spectrum.spectrum;
  const auto res = perturbation_search(pf.poly, spectrum, cfg);

  std::ostream* dst = &out;
  std::ofstream file;
  if (!f.out_path.empty()) {
    file.open(f.out_path);
    if (!file) throw Error("cannot write " + f.out_path);
    dst = &file;
  }
  for (const auto& rec : res.transcript) *dst << to_json(rec).dump() << '\n';

  const auto v = classify(pf.poly, spectrum, tol);
  Json summary;
  summary["summary"] = true;
  summary["schema_version"] = kSchemaVersion;
  summary["seed"] = cfg.seed;
  summary["trials"] = cfg.trials;
  summary["found"] = res.q.has_value();
  summary["found_at"] = res.found_at;
  if (res.q) summary["q"] = coeffs_to_json(res.q->shifted(pf.spectrum.shift));
  summary["classifier"] = to_string(v.kind);
  // A perturbation found for an extreme point is a contradiction; missing one
  // for a non-extreme point only means the search was not lucky.
  const bool conflict = res.q.has_value() && v.extreme();
  summary["conflict"] = conflict;
  summary["tolerances"] = to_json(tol);
  *dst << summary.dump() << '\n';
  return conflict ? 1 : 0;
}

int cmd_scan(const std::string& dir, const Flags& f, std::ostream& out) {
  if (!fs::is_directory(dir)) throw Error(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<Json> rows(files.size());
  std::vector<int> codes(files.size(), 0);
  const auto work = [&](std::size_t i) {
    Json row;
    row["file"] = files[i].filename().string();
    try {
      const auto pf = load_problem(files[i].string());
      const auto r = classify_problem(pf, tolerances(pf, f));
      row["verdict"] = r.json["verdict"];
      codes[i] = r.code;
    } catch (const std::exception& e) {
      row["error"] = e.what();
      codes[i] = 1;
    }
    rows[i] = std::move(row);
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(files.size(), std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < files.size(); i = next++) work(i);
    });
  for (auto& t : pool) t.join();

  std::ostream* dst = &out;
  std::ofstream file;
  if (!f.out_path.empty()) {
    file.open(f.out_path);
    if (!file) throw Error("cannot write " + f.out_path);
    dst = &file;
  }
  for (const auto& row : rows) *dst << row.dump() << '\n';
  int code = 0;
  for (int c : codes) {
    if (c == 1) return 1;
    code = std::max(code, c);
  }
  return code;
}

int cmd_plot(const std::string& path, const Flags& f, std::ostream& out) {
  const auto pf = load_problem(path);
  const auto tol = tolerances(pf, f);
  std::vector<Complex> samples;
  if (pf.type == ProblemFile::FunctionType::Polynomial) {
    samples = normalize_to_unit(pf.poly).sample(1 << tol.grid_log2);
  } else {
    samples = pf.boundary(tol.grid_log2).samples();
  }
  const int n = static_cast<int>(samples.size());

  std::ostream* dst = &out;
  std::ofstream file;
  if (!f.out_path.empty()) {
    file.open(f.out_path);
    if (!file) throw Error("cannot write " + f.out_path);
    dst = &file;
  }
  *dst << "t,abs_p,tau\n";
  dst->precision(17);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    const double a = std::abs(samples[j]);
    *dst << t << ',' << a << ',' << 1.0 - a * a << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme points of the unit ball of lacunary H-infinity spaces", "lacunary"};
  app.require_subcommand(1);
  Flags flags;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol-rank", flags.tol_rank, "relative singular-value cutoff (default 1e-9)");
    sub->add_option("--tol-contact", flags.tol_contact, "contact detection tolerance (default 1e-8)");
    sub->add_option("--grid-log2", flags.grid_log2, "boundary grid size exponent (default 14)")
        ->check(CLI::Range(2, 24));
    sub->add_option("--slack", flags.slack, "norm slack for certificates (default 1e-9)");
    sub->add_option("--out", flags.out_path, "write output here instead of stdout");
  };

  std::string path;
  int trials = 0;
  std::uint64_t seed = 0;
  auto* classify_cmd = app.add_subcommand("classify", "decide extremality of a problem file");
  auto* witness_cmd = app.add_subcommand("witness", "emit the perturbation certificate");
  auto* verify_cmd = app.add_subcommand("verify", "re-check a stored verdict or certificate");
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force perturbation search (JSONL transcript)");
  auto* scan_cmd = app.add_subcommand("scan", "classify every .json file in a directory");
  auto* plot_cmd = app.add_subcommand("plot", "CSV of |p| and 1 - |p|^2 on the grid");
  for (auto* sub : {classify_cmd, witness_cmd, verify_cmd, oracle_cmd, plot_cmd}) {
    sub->add_option("file", path, "problem file")->required();
    add_common(sub);
  }
  scan_cmd->add_option("dir", path, "directory of problem files")->required();
  add_common(scan_cmd);
  oracle_cmd->add_option("--trials", trials, "number of random directions");
  oracle_cmd->add_option("--seed", seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(path, flags, out);
    if (witness_cmd->parsed()) return cmd_witness(path, flags, out);
    if (verify_cmd->parsed()) return cmd_verify(path, flags, out);
    if (oracle_cmd->parsed()) return cmd_oracle(path, flags, trials, seed, out);
    if (scan_cmd->parsed()) return cmd_scan(path, flags, out);
    if (plot_cmd->parsed()) return cmd_plot(path, flags, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lacunary::cli
