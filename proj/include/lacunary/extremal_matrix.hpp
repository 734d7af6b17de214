#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lacunary/circle_poly.hpp"
#include "lacunary/contact.hpp"
#include "lacunary/spectrum.hpp"

namespace lacunary {

/// r(z) = prod_j (z - zeta_j)^{mu_j} together with the unimodular constant
/// lambda = i^mu prod_j e^{i mu_j t_j / 2} for which
/// r(e^{it}) = lambda e^{i mu t / 2} prod_j (2 sin((t - t_j)/2))^{mu_j}.
struct RestrictionData {
  CirclePolynomial r;
  Complex lambda;
};

RestrictionData restriction_poly(const ContactSet& contacts);

/// mu_j x (N - mu + 1) matrix with entries d^s/dt^s { e^{-i(gamma + l)t} p } at t_j.
Eigen::MatrixXcd wronski_block(const CirclePolynomial& p, double t_j, int mu_j, double gamma,
                               int n_max, int mu);

/// M x (N - mu + 1) matrix with entries r^(k_nu - l), zero outside [0, mu].
Eigen::MatrixXcd gap_block(const CirclePolynomial& r, const std::vector<int>& gaps, int n_max,
                           int mu);

/// Real block matrix [A -B; B A; U_1 V_1; ...; U_n V_n].
struct ExtremalityMatrix {
  Eigen::MatrixXd A, B;
  std::vector<Eigen::MatrixXd> U, V;
  Eigen::MatrixXd assembled;
  /// Originating block of every assembled row ("A|-B", "B|A", "W1", ...).
  std::vector<std::string> row_labels;

  int rows() const { return static_cast<int>(assembled.rows()); }
  int cols() const { return static_cast<int>(assembled.cols()); }
};

/// Builds the matrix from an already computed contact set.
ExtremalityMatrix assemble(const CirclePolynomial& p, const SpectrumSet& spectrum,
                           const ContactSet& contacts, const RestrictionData& restriction);

/// Runs the contact analysis first; contact errors propagate as exceptions.
ExtremalityMatrix assemble(const CirclePolynomial& p, const SpectrumSet& spectrum);

/// Row-major CSV, first column names the originating block.
std::string to_csv(const ExtremalityMatrix& m);

}  // namespace lacunary
