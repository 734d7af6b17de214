#include "lacunary/extremal_matrix.hpp"

#include <cmath>
#include <sstream>

#include "lacunary/error.hpp"

namespace lacunary {

RestrictionData restriction_poly(const ContactSet& contacts) {
  if (contacts.points.empty()) throw Error("empty contact set");
  CirclePolynomial r({1.0});
  Complex lambda = std::pow(Complex(0.0, 1.0), contacts.mu);
  for (const auto& c : contacts.points) {
    const CirclePolynomial factor({-std::polar(1.0, c.t), 1.0});
    for (int k = 0; k < c.mu; ++k) r = r * factor;
    lambda *= std::polar(1.0, c.mu * c.t / 2.0);
  }
  return {std::move(r), lambda};
}

Eigen::MatrixXcd wronski_block(const CirclePolynomial& p, double t_j, int mu_j, double gamma,
                               int n_max, int mu) {
  const int cols = n_max - mu + 1;
  Eigen::MatrixXcd w(mu_j, cols);
  for (int s = 0; s < mu_j; ++s)
    for (int l = 0; l < cols; ++l) w(s, l) = weighted_derivative(p, gamma + l, t_j, s);
  return w;
}

Eigen::MatrixXcd gap_block(const CirclePolynomial& r, const std::vector<int>& gaps, int n_max,
                           int mu) {
  const int cols = n_max - mu + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(gaps.size()), cols);
  for (std::size_t nu = 0; nu < gaps.size(); ++nu)
    for (int l = 0; l < cols; ++l) {
      const int k = gaps[nu] - l;
      if (k >= 0 && k <= mu) m(static_cast<Eigen::Index>(nu), l) = r.coeff(k);
    }
  return m;
}

ExtremalityMatrix assemble(const CirclePolynomial& p, const SpectrumSet& spectrum,
                           const ContactSet& contacts, const RestrictionData& restriction) {
  const int n = spectrum.n_max();
  const int mu = contacts.mu;
  if (mu > n) throw Error("mu exceeds N");
  const int cols = n - mu + 1;
  const auto& gaps = spectrum.gaps();
  const int m = static_cast<int>(gaps.size());

  ExtremalityMatrix out;
  const Eigen::MatrixXcd r_mat = gap_block(restriction.r, gaps, n, mu);
  out.A = r_mat.real();
  out.B = r_mat.imag();

  out.assembled = Eigen::MatrixXd::Zero(2 * m + mu, 2 * cols);
  out.assembled.block(0, 0, m, cols) = out.A;
  out.assembled.block(0, cols, m, cols) = -out.B;
  out.assembled.block(m, 0, m, cols) = out.B;
  out.assembled.block(m, cols, m, cols) = out.A;
  for (int i = 0; i < m; ++i) out.row_labels.push_back("A|-B");
  for (int i = 0; i < m; ++i) out.row_labels.push_back("B|A");

  int row = 2 * m;
  for (std::size_t j = 0; j < contacts.points.size(); ++j) {
    const auto& c = contacts.points[j];
    const Eigen::MatrixXcd w = wronski_block(p, c.t, c.mu, contacts.gamma(), n, mu);
    out.U.push_back(w.real());
    out.V.push_back(w.imag());
    out.assembled.block(row, 0, c.mu, cols) = out.U.back();
    out.assembled.block(row, cols, c.mu, cols) = out.V.back();
    for (int s = 0; s < c.mu; ++s) out.row_labels.push_back("W" + std::to_string(j + 1));
    row += c.mu;
  }
  if (out.rows() != 2 * m + mu || out.cols() != 2 * (n - mu + 1))
    throw Error("extremality matrix has inconsistent dimensions");
  return out;
}

ExtremalityMatrix assemble(const CirclePolynomial& p, const SpectrumSet& spectrum) {
  const auto contacts = contact_set(p, spectrum.n_max());
  return assemble(p, spectrum, contacts, restriction_poly(contacts));
}

std::string to_csv(const ExtremalityMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  const int half = m.cols() / 2;
  os << "block";
  for (int l = 0; l < half; ++l) os << ",alpha" << l;
  for (int l = 0; l < half; ++l) os << ",beta" << l;
  os << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    os << m.row_labels[i];
    for (int j = 0; j < m.cols(); ++j) os << ',' << m.assembled(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace lacunary
