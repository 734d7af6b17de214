#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacunary/classifier.hpp"
#include "lacunary/cofinite.hpp"
#include "lacunary/contact.hpp"
#include "lacunary/oracle.hpp"
#include "lacunary/spectrum.hpp"

namespace lacunary {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const SpectrumSet& s);
/// Accepts {"kind":"finite","n":N,"gaps":[...]}, {"kind":"finite","members":[...]}
/// (normalized on the fly) and {"kind":"cofinite","gaps":[...]}.
NormalizedSpectrum spectrum_from_json(const Json& j);

/// [[re, im], ...] in ascending degree, explicit zeros included.
Json coeffs_to_json(const std::vector<Complex>& c);
Json coeffs_to_json(const CirclePolynomial& p);
std::vector<Complex> coeffs_from_json(const Json& j);
Complex complex_from_json(const Json& j);

Json to_json(const ContactSet& c);
Json to_json(const RankInfo& r);
Json to_json(const Certificate& c);
Json to_json(const Tolerances& t);
Json to_json(const CofiniteCertificate& c);
Json to_json(const TrialRecord& r);

/// Problem description read by the command-line tool.
struct ProblemFile {
  enum class FunctionType { Polynomial, Blaschke, Grid };

  Json raw;
  NormalizedSpectrum spectrum;
  FunctionType type = FunctionType::Polynomial;
  /// Polynomial inputs, in the normalized frequencies (already divided by z^shift).
  CirclePolynomial poly;
  std::vector<Complex> zeros;
  Complex constant = 1.0;
  std::vector<Complex> samples;

  std::optional<int> grid_log2;
  std::optional<double> tol_rank, tol_contact, slack;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool allow_unknown = false;

  /// Function on the boundary grid for the cofinite pipeline.
  BoundaryFunction boundary(int grid_log2) const;
};

/// Validates the schema (unknown fields are rejected) and normalizes the
/// spectrum. Throws lacunary::Error.
ProblemFile parse_problem(const Json& j);

/// Parses text, reporting malformed JSON with line and column.
Json parse_json_text(const std::string& text);

/// Finite-spectrum verdict, coefficients reported in the original frequencies.
Json verdict_to_json(const Verdict& v, const ProblemFile& problem, const Tolerances& tol);
Json verdict_to_json(const CofiniteVerdict& v, const ProblemFile& problem, const Tolerances& tol);

}  // namespace lacunary
