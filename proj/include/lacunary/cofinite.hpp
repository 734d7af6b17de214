#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/circle_poly.hpp"
#include "lacunary/classifier.hpp"
#include "lacunary/spectrum.hpp"

namespace lacunary {

/// Boundary trace of a bounded analytic function, sampled on the uniform
/// grid t_k = 2 pi k / 2^G. Structured sources keep their closed form and
/// can be resampled at any grid size.
class BoundaryFunction {
 public:
  enum class Source { Polynomial, Blaschke, Grid };

  static BoundaryFunction polynomial(CirclePolynomial p, int grid_log2 = 14);
  /// constant * prod (z - a) / (1 - conj(a) z); |a| < 1, |constant| = 1.
  static BoundaryFunction blaschke(std::vector<Complex> zeros, Complex constant, int grid_log2 = 14);
  /// Sample count must be a power of two.
  static BoundaryFunction grid(std::vector<Complex> samples);

  Source source() const { return source_; }
  int grid_log2() const { return grid_log2_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<Complex>& samples() const { return samples_; }
  const CirclePolynomial& poly() const { return poly_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex constant() const { return constant_; }

  /// Same function on a 2^grid_log2 grid; Grid sources cannot be resampled.
  BoundaryFunction resampled(int grid_log2) const;
  /// DFT coefficient k of the samples (polynomials use the exact coefficient).
  Complex coefficient(int k) const;

 private:
  BoundaryFunction() = default;

  Source source_ = Source::Grid;
  int grid_log2_ = 0;
  std::vector<Complex> samples_;
  CirclePolynomial poly_;
  std::vector<Complex> zeros_;
  Complex constant_ = 1.0;
};

struct LogIntegral {
  enum class Kind { Diverges, Converges, Unknown };

  Kind kind = Kind::Unknown;
  /// Grid quadrature of the integral of log(1 - |f|) over the circle, with
  /// 1 - |f| clamped below at 1e-15.
  double estimate = 0.0;
  /// Grid inputs only: estimate < -50.
  bool divergence_suspected = false;
};

std::string to_string(LogIntegral::Kind kind);

/// Decides whether log(1 - |f|) fails to be integrable. Exact for polynomial
/// and Blaschke inputs; grid inputs only get an estimate. Throws "norm != 1".
LogIntegral log_integral_diverges(const BoundaryFunction& f);

struct OuterFunction {
  std::vector<Complex> g_hat;    ///< analytic coefficients, k = 0 .. n/2 - 1
  std::vector<Complex> samples;  ///< g on the grid
  /// Energy of the DFT coefficients with k >= n/2 (aliasing tail).
  double tail_energy = 0.0;
  /// max relative deviation of |g| from the prescribed modulus on unclamped points.
  double modulus_error = 0.0;
  /// Grid mean of the log-modulus.
  double log_mean = 0.0;
  int clamped = 0;
};

/// Outer function whose modulus on the grid is exp(modulus_log). Throws
/// "modulus check failed" when |g| misses the target by more than 2e-6.
OuterFunction outer_function(std::span<const double> modulus_log,
                             const std::vector<bool>& clamped = {});

/// log(max(1 - |f|, 1e-15)) on the sample grid; reports clamped points.
std::vector<double> clamped_log_defect(const BoundaryFunction& f, std::vector<bool>* clamped = nullptr);

/// Nonzero p0 of degree <= m with (g p0)^(k_nu) = 0 for every gap, rescaled to
/// sup norm one. Throws "kernel residual too large".
CirclePolynomial gap_kernel(std::span<const Complex> g_hat, const std::vector<int>& gaps);

struct CofiniteCertificate {
  int grid_log2 = 0;
  std::vector<std::pair<int, double>> gap_residuals;  ///< |w^(k)| at each gap
  double max_gap_residual = 0.0;
  double sup_plus = 0.0;   ///< grid max of |f + w|
  double sup_minus = 0.0;  ///< grid max of |f - w|
  double witness_norm = 0.0;
  double tail_energy = 0.0;
  double modulus_error = 0.0;
  int clamped = 0;
  bool passed = false;
  std::string failure;
};

struct CofiniteWitness {
  std::vector<Complex> w_hat;    ///< analytic coefficients of w = g p0
  std::vector<Complex> samples;  ///< w on the grid
  CirclePolynomial p0;
  OuterFunction outer;
  CofiniteCertificate certificate;
};

/// Re-checks analytic coefficients w_hat (k = 0, 1, ...) against f on f's grid:
/// gap residuals, grid sup of |f +- w|, norm of w and the aliasing tail.
CofiniteCertificate check_cofinite_witness(const BoundaryFunction& f, const std::vector<int>& gaps,
                                           const std::vector<Complex>& w_hat);

/// w = g p0 with |f +- w| <= 1 and w in H^inf(Lambda), built on a 2^G grid
/// (retried at G = 16 when the certificate fails). Refuses inputs whose log
/// integral diverges; grid inputs need allow_unknown.
CofiniteWitness cofinite_witness(const BoundaryFunction& f, const SpectrumSet& spectrum,
                                 bool allow_unknown = false);

/// The even-spectrum construction: g itself is the perturbation when f is even.
struct EvenSpectrumWitness {
  OuterFunction outer;
  double max_odd_coefficient = 0.0;
  double sup_plus = 0.0;
  double sup_minus = 0.0;
};

EvenSpectrumWitness even_spectrum_witness(const BoundaryFunction& f);

struct CofiniteVerdict {
  Verdict::Kind kind = Verdict::Kind::Indeterminate;
  LogIntegral log_integral;
  std::optional<CofiniteWitness> witness;
  std::vector<std::string> diagnostics;
};

/// Extreme iff the log integral diverges; otherwise a certified witness.
CofiniteVerdict classify_cofinite(const BoundaryFunction& f, const SpectrumSet& spectrum,
                                  bool allow_unknown = false);

}  // namespace lacunary
