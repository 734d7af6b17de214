#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lacunary/circle_poly.hpp"
#include "lacunary/contact.hpp"
#include "lacunary/error.hpp"
#include "lacunary/extremal_matrix.hpp"
#include "lacunary/spectrum.hpp"

namespace lacunary {

/// Every tolerance a verdict depends on. Serialized into each output.
struct Tolerances {
  double tol_rank = 1e-9;
  double tol_contact = 1e-8;
  double slack = 1e-9;
  int grid_log2 = 14;
};

struct RankInfo {
  int rank = 0;
  std::vector<double> sigma;  ///< singular values, decreasing
  /// Ratio between the last kept and the first dropped singular value (or
  /// the rank threshold when nothing is dropped).
  double confidence = 0.0;
  /// Some sigma_i / sigma_1 lies in [1e-11, 1e-7].
  bool borderline = false;
};

RankInfo numeric_rank(const Eigen::MatrixXd& m, double tol_rank = 1e-9);

/// Unit vector in the numerical kernel of m. Picks the normalized projection
/// of the coordinate axis with the largest kernel component (lowest index on
/// ties), then makes its first nonzero entry positive. Throws "full rank".
Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& m, double tol_rank = 1e-9);

/// Thrown by build_witness when no scale above 1e-10 keeps p +- eps q in the ball.
class VanishingEpsilon : public Error {
 public:
  using Error::Error;
};

struct Witness {
  CirclePolynomial q;   ///< already multiplied by epsilon
  double epsilon = 0.0;
  CirclePolynomial q0;  ///< cofactor with q / epsilon = q0 r
};

/// Turns a kernel vector (alpha_0..alpha_{N-mu}, beta_0..beta_{N-mu}) into the
/// perturbation q = q0 r with q0 = conj(lambda) sum (alpha_l + i beta_l) z^l,
/// scaled by the largest bisected epsilon in (0, 1].
Witness build_witness(const CirclePolynomial& p, const SpectrumSet& spectrum,
                      const ContactSet& contacts, const RestrictionData& restriction,
                      const Eigen::VectorXd& v);

struct Certificate {
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  /// max over the grid of 2|Re(conj(p) q)| + |q|^2 - (1 - |p|^2).
  double pointwise_slack = 0.0;
  /// |q^(k)| / ||q^|| at every excluded frequency k <= deg q.
  std::vector<std::pair<int, double>> gap_residuals;
  bool null_witness = false;
  bool passed = false;
  std::string failure;
};

struct VerifyOptions {
  int grid = 4096;
  double slack = 1e-9;
  double pointwise_tol = 1e-8;
  double gap_tol = 1e-9;
};

/// Computes the certificate without throwing.
Certificate check_witness(const CirclePolynomial& p, const CirclePolynomial& q,
                          const std::optional<SpectrumSet>& spectrum = std::nullopt,
                          const VerifyOptions& opts = {});

/// Same as check_witness; throws "certificate failure: ..." when it does not pass.
Certificate verify_witness(const CirclePolynomial& p, const CirclePolynomial& q,
                           const std::optional<SpectrumSet>& spectrum = std::nullopt,
                           const VerifyOptions& opts = {});

/// Structural facts recorded on every classification run.
struct ConsistencyReport {
  int mu = 0;
  int n_max = 0;
  bool even_orders = true;
  double lambda_modulus_error = 0.0;
  int rows = 0;
  int cols = 0;
  int expected_rows = 0;
  int expected_cols = 0;

  bool ok() const {
    return mu <= n_max && even_orders && lambda_modulus_error <= 1e-12 && rows == expected_rows &&
           cols == expected_cols;
  }
};

struct Verdict {
  enum class Kind { Extreme, NonExtreme, Monomial, Indeterminate };

  Kind kind = Kind::Indeterminate;
  CirclePolynomial p;  ///< unit-norm input actually analyzed
  double scale = 1.0;  ///< p = p_raw / scale
  std::optional<ContactSet> contacts;
  std::optional<RestrictionData> restriction;
  std::optional<ExtremalityMatrix> matrix;
  std::optional<RankInfo> rank;
  std::optional<ConsistencyReport> consistency;
  Eigen::VectorXd kernel;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
  std::vector<std::string> diagnostics;

  /// Monomials count as extreme.
  bool extreme() const { return kind == Kind::Extreme || kind == Kind::Monomial; }
};

std::string to_string(Verdict::Kind kind);

/// Rank test for a polynomial in a finite lacunary space. Throws on
/// "zero polynomial", "spectrum violation" and contact errors.
Verdict classify(const CirclePolynomial& p_raw, const SpectrumSet& spectrum,
                 const Tolerances& tol = {});

}  // namespace lacunary
