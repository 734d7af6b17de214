#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/circle_poly.hpp"
#include "lacunary/spectrum.hpp"

namespace lacunary {

struct SearchConfig {
  std::uint64_t seed = 1;
  int trials = 500;
  /// Upper end of the scale bisection.
  double delta_max = 2.0;
  int circle_grid = 4096;
  double slack = 1e-9;
};

/// ||p + q|| <= 1 + slack and ||p - q|| <= 1 + slack with certified sup norms.
bool midpoint_check(const CirclePolynomial& p, const CirclePolynomial& q, double slack = 1e-9);

/// max over a uniform grid of 2|Re(conj(p) q)| + |q|^2 - (1 - |p|^2).
double quadratic_slack(const CirclePolynomial& p, const CirclePolynomial& q, int grid = 4096);

struct TrialRecord {
  int index = 0;
  /// "random" for unconstrained directions, "vanishing" for directions drawn
  /// from polynomials that vanish at the maxima of |p| to prescribed orders.
  std::string phase;
  std::uint64_t direction_hash = 0;
  double max_scale = 0.0;
  bool accepted = false;
};

struct SearchResult {
  std::optional<CirclePolynomial> q;  ///< scaled perturbation, if one was found
  int found_at = -1;
  std::vector<TrialRecord> transcript;
};

/// Seeded random search for q supported on the spectrum with p +- q in the
/// ball. Works on p / ||p||. A direction is accepted when its largest
/// feasible scale exceeds 1e-6 and does not collapse when the slack is
/// tightened by four orders of magnitude.
SearchResult perturbation_search(const CirclePolynomial& p, const SpectrumSet& spectrum,
                                 const SearchConfig& cfg = {});

}  // namespace lacunary
