#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lacunary {

using Complex = std::complex<double>;

/// Maps an angle to the principal interval (-pi, pi].
double wrap_angle(double t);

/// Analytic polynomial sum_k c_k z^k viewed on the unit circle z = e^{it}.
/// Trailing exact zeros are dropped on construction; the zero polynomial has
/// degree -1.
class CirclePolynomial {
 public:
  CirclePolynomial() = default;
  explicit CirclePolynomial(std::vector<Complex> coeffs);

  static CirclePolynomial monomial(int k, Complex c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  double max_abs_coeff() const;
  /// Euclidean norm of the coefficient vector.
  double coeff_norm() const;

  /// Frequencies k with |c_k| > rel_tol * max|c|.
  std::vector<int> support(double rel_tol = 0.0) const;
  /// Zeroes coefficients with |c_k| <= rel_tol * max|c|.
  CirclePolynomial pruned(double rel_tol = 1e-14) const;

  Complex operator()(double t) const;
  /// Values at t_j = 2 pi j / n, j = 0..n-1.
  std::vector<Complex> sample(int n) const;

  /// z^d p(z).
  CirclePolynomial shifted(int d) const;
  /// p(sigma z).
  CirclePolynomial rotated(Complex sigma) const;

  CirclePolynomial operator+(const CirclePolynomial& o) const;
  CirclePolynomial operator-(const CirclePolynomial& o) const;
  CirclePolynomial operator*(const CirclePolynomial& o) const;
  CirclePolynomial operator*(Complex s) const;
  CirclePolynomial operator/(Complex s) const;

 private:
  std::vector<Complex> coeffs_;
};

inline CirclePolynomial operator*(Complex s, const CirclePolynomial& p) { return p * s; }

Complex eval(const CirclePolynomial& p, double t);

/// Coefficients of |p(e^{it})|^2 = sum_{|k|<=D} c_k e^{ikt}.
class Autocorrelation {
 public:
  Autocorrelation() = default;
  Autocorrelation(int degree, std::vector<Complex> c) : degree_(degree), c_(std::move(c)) {}

  int degree() const { return degree_; }
  Complex operator[](int k) const;
  /// 1 - |p|^2 at t.
  double tau(double t) const;
  /// Complex value of d^s/dt^s (1 - |p|^2); imaginary part is rounding noise.
  Complex tau_derivative_complex(double t, int s) const;
  /// sum_k |c_k| |k|^s, the natural magnitude of the s-th derivative.
  double derivative_scale(int s) const;

 private:
  int degree_ = -1;
  std::vector<Complex> c_;  // index k + degree_
};

Autocorrelation autocorrelation(const CirclePolynomial& p);

/// d^s/dt^s [1 - |p(e^{it})|^2], real part.
double tau_derivative(const Autocorrelation& ac, double t, int s);

/// d^s/dt^s { e^{-i alpha t} p(e^{it}) } at t.
Complex weighted_derivative(const CirclePolynomial& p, double alpha, double t, int s);

/// d^s/dt^s { sum_j c_j e^{i(j + lowest - alpha) t} } for a Laurent coefficient
/// block starting at exponent `lowest`.
Complex laurent_derivative(std::span<const Complex> coeffs, int lowest, double alpha, double t,
                           int s);

/// Critical points of |p|^2 on the circle, each refined to full precision.
/// Not deduplicated; includes minima.
std::vector<double> critical_points(const Autocorrelation& ac);

/// Moves a near-contact critical point onto the exact zero of tau by Newton
/// steps on successively higher odd derivatives. Leaves ordinary critical
/// points where plain Newton on tau' put them.
double refine_critical_point(const Autocorrelation& ac, double t, double rel_tol = 1e-8);

struct SupNorm {
  double value = 0.0;
  /// Angles attaining the maximum within 1e-12, in (-pi, pi], increasing.
  std::vector<double> argmax;
  /// |p| is constant on the circle (monomial); argmax is then empty.
  bool flat = false;
  /// Companion-matrix and grid searches disagreed by more than 1e-9.
  bool low_confidence = false;
};

SupNorm sup_norm(const CirclePolynomial& p);

/// p / ||p||_inf.
CirclePolynomial normalize_to_unit(const CirclePolynomial& p);

}  // namespace lacunary
