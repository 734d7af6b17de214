#include "lacunary/serialization.hpp"

#include <algorithm>
#include <set>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw Error("unknown field '" + key + "' in " + where);
  }
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(what + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

template <class T>
T number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw Error(what + " must be a number");
  return j.get<T>();
}

}  // namespace

Json to_json(const SpectrumSet& s) {
  Json j;
  if (s.is_finite()) {
    j["kind"] = "finite";
    j["n"] = s.n_max();
  } else {
    j["kind"] = "cofinite";
  }
  j["gaps"] = s.gaps();
  return j;
}

NormalizedSpectrum spectrum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error("lambda needs a string field 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "finite") {
    if (j.contains("members")) {
      reject_unknown(j, {"kind", "members"}, "lambda");
      const auto m = int_list(j["members"], "lambda.members");
      return normalize_finite(std::set<int>(m.begin(), m.end()));
    }
    reject_unknown(j, {"kind", "n", "gaps"}, "lambda");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw Error("finite lambda needs integer 'n'");
    const auto gaps = j.contains("gaps") ? int_list(j["gaps"], "lambda.gaps") : std::vector<int>{};
    return {SpectrumSet::finite(j["n"].get<int>(), gaps), 0};
  }
  if (kind == "cofinite") {
    reject_unknown(j, {"kind", "gaps"}, "lambda");
    const auto gaps = j.contains("gaps") ? int_list(j["gaps"], "lambda.gaps") : std::vector<int>{};
    return {SpectrumSet::cofinite(gaps), 0};
  }
  throw Error("lambda.kind must be 'finite' or 'cofinite'");
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json coeffs_to_json(const std::vector<Complex>& c) {
  Json arr = Json::array();
  for (const auto& x : c) arr.push_back({x.real(), x.imag()});
  return arr;
}

Json coeffs_to_json(const CirclePolynomial& p) { return coeffs_to_json(p.coeffs()); }

std::vector<Complex> coeffs_from_json(const Json& j) {
  if (!j.is_array()) throw Error("coefficients must be an array of [re, im] pairs");
  std::vector<Complex> out;
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

Json to_json(const ContactSet& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back({{"t", p.t}, {"mu", p.mu}});
  return {{"points", pts}, {"mu", c.mu}, {"gamma", c.gamma()}};
}

Json to_json(const RankInfo& r) {
  return {{"rank", r.rank}, {"sigma", r.sigma}, {"confidence", r.confidence}, {"borderline", r.borderline}};
}

Json to_json(const Certificate& c) {
  Json gaps = Json::array();
  for (const auto& [k, r] : c.gap_residuals) gaps.push_back({{"k", k}, {"residual", r}});
  return {{"norm_plus", c.norm_plus},     {"norm_minus", c.norm_minus},
          {"pointwise_slack", c.pointwise_slack}, {"gap_residuals", gaps},
          {"null_witness", c.null_witness}, {"passed", c.passed}};
}

Json to_json(const Tolerances& t) {
  return {{"tol_rank", t.tol_rank}, {"tol_contact", t.tol_contact}, {"slack", t.slack},
          {"grid_log2", t.grid_log2}};
}

Json to_json(const CofiniteCertificate& c) {
  Json gaps = Json::array();
  for (const auto& [k, r] : c.gap_residuals) gaps.push_back({{"k", k}, {"residual", r}});
  return {{"grid_log2", c.grid_log2},         {"gap_residuals", gaps},
          {"max_gap_residual", c.max_gap_residual}, {"sup_plus", c.sup_plus},
          {"sup_minus", c.sup_minus},         {"witness_norm", c.witness_norm},
          {"tail_energy", c.tail_energy},     {"modulus_error", c.modulus_error},
          {"clamped_points", c.clamped},      {"passed", c.passed}};
}

Json to_json(const TrialRecord& r) {
  return {{"trial", r.index},          {"phase", r.phase},
          {"direction_hash", r.direction_hash}, {"max_scale", r.max_scale},
          {"accepted", r.accepted}};
}

BoundaryFunction ProblemFile::boundary(int g) const {
  switch (type) {
    case FunctionType::Polynomial: return BoundaryFunction::polynomial(poly, g);
    case FunctionType::Blaschke: return BoundaryFunction::blaschke(zeros, constant, g);
    case FunctionType::Grid: return BoundaryFunction::grid(samples);
  }
  throw Error("unknown function type");
}

ProblemFile parse_problem(const Json& j) {
  reject_unknown(j, {"schema_version", "lambda", "function", "grid_log2", "options"}, "problem");
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
    throw Error("unsupported schema_version");
  if (!j.contains("lambda")) throw Error("problem needs 'lambda'");
  if (!j.contains("function")) throw Error("problem needs 'function'");

  ProblemFile pf;
  pf.raw = j;
  pf.spectrum = spectrum_from_json(j["lambda"]);

  const Json& f = j["function"];
  std::vector<Complex> coeffs;
  if (f.is_array()) {
    coeffs = coeffs_from_json(f);
  } else {
    if (!f.is_object() || !f.contains("type") || !f["type"].is_string())
      throw Error("function must be a coefficient array or an object with 'type'");
    const auto type = f["type"].get<std::string>();
    if (type == "polynomial") {
      reject_unknown(f, {"type", "coeffs"}, "function");
      coeffs = coeffs_from_json(f.value("coeffs", Json::array()));
    } else if (type == "blaschke") {
      reject_unknown(f, {"type", "zeros", "constant"}, "function");
      pf.type = ProblemFile::FunctionType::Blaschke;
      pf.zeros = coeffs_from_json(f.value("zeros", Json::array()));
      if (f.contains("constant")) pf.constant = complex_from_json(f["constant"]);
    } else if (type == "grid") {
      reject_unknown(f, {"type", "samples"}, "function");
      pf.type = ProblemFile::FunctionType::Grid;
      pf.samples = coeffs_from_json(f.value("samples", Json::array()));
    } else {
      throw Error("unknown function type '" + type + "'");
    }
  }
  if (pf.type == ProblemFile::FunctionType::Polynomial) {
    const int shift = pf.spectrum.shift;
    for (int k = 0; k < std::min<int>(shift, static_cast<int>(coeffs.size())); ++k)
      if (coeffs[k] != Complex(0.0)) throw Error("spectrum violation at k=" + std::to_string(k));
    if (shift > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + std::min<std::size_t>(shift, coeffs.size()));
    pf.poly = CirclePolynomial(std::move(coeffs));
  } else if (pf.spectrum.monomial() || pf.spectrum.spectrum->is_finite()) {
    throw Error("finite spectra take polynomial functions only");
  }

  if (j.contains("grid_log2")) pf.grid_log2 = number<int>(j["grid_log2"], "grid_log2");
  if (j.contains("options")) {
    const Json& o = j["options"];
    reject_unknown(o, {"tol_rank", "tol_contact", "slack", "grid_log2", "seed", "trials", "allow_unknown"},
                   "options");
    if (o.contains("tol_rank")) pf.tol_rank = number<double>(o["tol_rank"], "options.tol_rank");
    if (o.contains("tol_contact")) pf.tol_contact = number<double>(o["tol_contact"], "options.tol_contact");
    if (o.contains("slack")) pf.slack = number<double>(o["slack"], "options.slack");
    if (o.contains("grid_log2")) pf.grid_log2 = number<int>(o["grid_log2"], "options.grid_log2");
    if (o.contains("seed")) pf.seed = number<std::uint64_t>(o["seed"], "options.seed");
    if (o.contains("trials")) pf.trials = number<int>(o["trials"], "options.trials");
    if (o.contains("allow_unknown")) {
      if (!o["allow_unknown"].is_boolean()) throw Error("options.allow_unknown must be a boolean");
      pf.allow_unknown = o["allow_unknown"].get<bool>();
    }
  }
  return pf;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

Json verdict_to_json(const Verdict& v, const ProblemFile& problem, const Tolerances& tol) {
  const int shift = problem.spectrum.shift;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = to_string(v.kind);
  j["problem"] = problem.raw;
  j["scale"] = v.scale;
  j["shift"] = shift;
  if (!v.p.is_zero()) j["p"] = coeffs_to_json(v.p.shifted(shift));
  if (v.contacts) {
    Json c = to_json(*v.contacts);
    j["contacts"] = c;
  }
  if (v.restriction) {
    j["lambda_constant"] = {v.restriction->lambda.real(), v.restriction->lambda.imag()};
    j["restriction"] = coeffs_to_json(v.restriction->r);
  }
  if (v.matrix) {
    Json m = {{"rows", v.matrix->rows()}, {"cols", v.matrix->cols()}};
    if (v.rank) {
      m["rank"] = v.rank->rank;
      m["sigma"] = v.rank->sigma;
      m["confidence"] = v.rank->confidence;
      m["borderline"] = v.rank->borderline;
    }
    j["matrix"] = m;
  }
  if (v.kernel.size() > 0) j["kernel"] = std::vector<double>(v.kernel.data(), v.kernel.data() + v.kernel.size());
  if (v.witness) {
    j["witness"] = {{"coeffs", coeffs_to_json(v.witness->q.shifted(shift))}};
    j["epsilon"] = v.witness->epsilon;
  }
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  if (v.consistency) {
    const auto& c = *v.consistency;
    j["consistency"] = {{"mu", c.mu},
                        {"n", c.n_max},
                        {"even_orders", c.even_orders},
                        {"lambda_modulus_error", c.lambda_modulus_error},
                        {"rows", c.rows},
                        {"cols", c.cols},
                        {"ok", c.ok()}};
  }
  j["tolerances"] = to_json(tol);
  j["diagnostics"] = v.diagnostics;
  return j;
}

Json verdict_to_json(const CofiniteVerdict& v, const ProblemFile& problem, const Tolerances& tol) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = to_string(v.kind);
  j["problem"] = problem.raw;
  j["log_integral"] = {{"kind", to_string(v.log_integral.kind)},
                       {"estimate", v.log_integral.estimate},
                       {"divergence_suspected", v.log_integral.divergence_suspected}};
  if (v.witness) {
    j["witness"] = {{"coeffs", coeffs_to_json(v.witness->w_hat)}, {"p0", coeffs_to_json(v.witness->p0)}};
    j["certificate"] = to_json(v.witness->certificate);
  }
  j["tolerances"] = to_json(tol);
  j["diagnostics"] = v.diagnostics;
  return j;
}

}  // namespace lacunary
