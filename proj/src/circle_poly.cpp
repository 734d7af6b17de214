#include "lacunary/circle_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// (i x)^s
Complex i_power(double x, int s) {
  static const Complex cycle[4] = {1.0, kI, -1.0, -kI};
  return cycle[s % 4] * std::pow(x, s);
}

}  // namespace

double wrap_angle(double t) {
  double r = std::remainder(t, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// ---------------------------------------------------------------------------
// CirclePolynomial

CirclePolynomial::CirclePolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

CirclePolynomial CirclePolynomial::monomial(int k, Complex c) {
  if (k < 0) throw Error("negative monomial degree");
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1, 0.0);
  v[k] = c;
  return CirclePolynomial(std::move(v));
}

Complex CirclePolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[k];
}

double CirclePolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double CirclePolynomial::coeff_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<int> CirclePolynomial::support(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<int> out;
  for (int k = 0; k <= degree(); ++k)
    if (std::abs(coeffs_[k]) > cut) out.push_back(k);
  return out;
}

CirclePolynomial CirclePolynomial::pruned(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  auto c = coeffs_;
  for (auto& x : c)
    if (std::abs(x) <= cut) x = 0.0;
  return CirclePolynomial(std::move(c));
}

Complex CirclePolynomial::operator()(double t) const {
  const Complex w = std::polar(1.0, t);
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

std::vector<Complex> CirclePolynomial::sample(int n) const {
  std::vector<Complex> out(n);
  for (int j = 0; j < n; ++j) out[j] = (*this)(2.0 * kPi * j / n);
  return out;
}

CirclePolynomial CirclePolynomial::shifted(int d) const {
  if (d < 0) {
    for (int k = 0; k < std::min(-d, degree() + 1); ++k)
      if (coeffs_[k] != Complex(0.0)) throw Error("shift would create negative frequencies");
    if (-d > degree()) return {};
    return CirclePolynomial(std::vector<Complex>(coeffs_.begin() - d, coeffs_.end()));
  }
  if (is_zero()) return {};
  std::vector<Complex> c(static_cast<std::size_t>(d), 0.0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::rotated(Complex sigma) const {
  auto c = coeffs_;
  Complex pw = 1.0;
  for (auto& x : c) {
    x *= pw;
    pw *= sigma;
  }
  return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::operator+(const CirclePolynomial& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::operator-(const CirclePolynomial& o) const {
  return *this + o * Complex(-1.0);
}

CirclePolynomial CirclePolynomial::operator*(const CirclePolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t a = 0; a < coeffs_.size(); ++a)
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) c[a + b] += coeffs_[a] * o.coeffs_[b];
  return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::operator*(Complex s) const {
  auto c = coeffs_;
  for (auto& x : c) x *= s;
  return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::operator/(Complex s) const { return *this * (1.0 / s); }

Complex eval(const CirclePolynomial& p, double t) { return p(t); }

// ---------------------------------------------------------------------------
// Autocorrelation and derivatives

Complex Autocorrelation::operator[](int k) const {
  if (k < -degree_ || k > degree_) return 0.0;
  return c_[k + degree_];
}

double Autocorrelation::tau(double t) const { return tau_derivative_complex(t, 0).real(); }

Complex Autocorrelation::tau_derivative_complex(double t, int s) const {
  Complex acc = 0.0;
  for (int k = -degree_; k <= degree_; ++k) {
    if (s > 0 && k == 0) continue;
    acc += i_power(k, s) * c_[k + degree_] * std::polar(1.0, k * t);
  }
  return s == 0 ? 1.0 - acc : -acc;
}

double Autocorrelation::derivative_scale(int s) const {
  double acc = 0.0;
  for (int k = -degree_; k <= degree_; ++k) acc += std::abs(c_[k + degree_]) * std::pow(std::abs(k), s);
  return acc;
}

Autocorrelation autocorrelation(const CirclePolynomial& p) {
  const int d = p.degree();
  if (d < 0) return Autocorrelation(0, {0.0});
  std::vector<Complex> c(2 * d + 1, 0.0);
  const auto& a = p.coeffs();
  for (int k = 0; k <= d; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j + k <= d; ++j) acc += a[j + k] * std::conj(a[j]);
    c[d + k] = acc;
    c[d - k] = std::conj(acc);
  }
  c[d] = c[d].real();
  return Autocorrelation(d, std::move(c));
}

double tau_derivative(const Autocorrelation& ac, double t, int s) {
  return ac.tau_derivative_complex(t, s).real();
}

Complex laurent_derivative(std::span<const Complex> coeffs, int lowest, double alpha, double t,
                           int s) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == Complex(0.0)) continue;
    const double freq = static_cast<double>(lowest) + static_cast<double>(j) - alpha;
    acc += coeffs[j] * i_power(freq, s) * std::polar(1.0, freq * t);
  }
  return acc;
}

Complex weighted_derivative(const CirclePolynomial& p, double alpha, double t, int s) {
  return laurent_derivative(p.coeffs(), 0, alpha, t, s);
}

// ---------------------------------------------------------------------------
// Critical points and the sup norm

namespace {

// Newton iteration for a root of tau^{(s)}.
double newton_on_derivative(const Autocorrelation& ac, double t, int s, int max_iter,
                            double max_step) {
  const double floor = 1e-15 * ac.derivative_scale(s);
  for (int it = 0; it < max_iter; ++it) {
    const double f = tau_derivative(ac, t, s);
    if (std::abs(f) <= floor) break;
    const double df = tau_derivative(ac, t, s + 1);
    if (df == 0.0) break;
    const double step = std::clamp(f / df, -max_step, max_step);
    t -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return wrap_angle(t);
}

struct Candidates {
  std::vector<double> companion;
  std::vector<double> grid;
};

Candidates critical_candidates(const Autocorrelation& ac) {
  Candidates out;
  const int d = ac.degree();
  if (d <= 0) return out;

  // w^D tau'(t) / (-1) as an algebraic polynomial in w = e^{it}.
  std::vector<Complex> a(2 * d + 1);
  double amax = 0.0;
  for (int j = 0; j <= 2 * d; ++j) {
    a[j] = Complex(0.0, j - d) * ac[j - d];
    amax = std::max(amax, std::abs(a[j]));
  }
  int lo = 0, hi = 2 * d;
  while (hi >= 0 && std::abs(a[hi]) <= 1e-14 * amax) --hi;
  while (lo < hi && std::abs(a[lo]) <= 1e-14 * amax) ++lo;
  const int deg = hi - lo;
  if (deg >= 1) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -a[lo + i] / a[hi];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() == Eigen::Success) {
      for (int i = 0; i < deg; ++i) {
        const Complex w = es.eigenvalues()(i);
        // Multiple roots scatter off the circle by roughly eps^(1/m).
        if (std::abs(std::abs(w) - 1.0) < 1e-3) out.companion.push_back(std::arg(w));
      }
    }
  }

  // Local minima of tau on a dense grid.
  const int n = std::max(64, 16 * d);
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = ac.tau(2.0 * kPi * j / n);
  for (int j = 0; j < n; ++j) {
    const double prev = vals[(j + n - 1) % n], next = vals[(j + 1) % n];
    if (vals[j] <= prev && vals[j] <= next) out.grid.push_back(2.0 * kPi * j / n);
  }

  for (auto* list : {&out.companion, &out.grid})
    for (auto& t : *list) t = refine_critical_point(ac, t);
  return out;
}

}  // namespace

double refine_critical_point(const Autocorrelation& ac, double t, double rel_tol) {
  const int d = std::max(ac.degree(), 1);
  t = newton_on_derivative(ac, t, 1, 100, kPi / (4.0 * d));
  for (int s = 2; s <= 2 * d + 2; s += 2) {
    if (std::abs(tau_derivative(ac, t, s)) > 10.0 * rel_tol * ac.derivative_scale(s)) break;
    const double next = newton_on_derivative(ac, t, s + 1, 60, 1e-2);
    if (std::abs(wrap_angle(next - t)) > 1e-3) break;
    t = next;
  }
  return t;
}

std::vector<double> critical_points(const Autocorrelation& ac) {
  auto c = critical_candidates(ac);
  c.companion.insert(c.companion.end(), c.grid.begin(), c.grid.end());
  return c.companion;
}

SupNorm sup_norm(const CirclePolynomial& p) {
  if (p.is_zero()) throw Error("zero polynomial");
  const auto ac = autocorrelation(p);
  SupNorm out;

  const double c0 = ac[0].real();
  double off = 0.0;
  for (int k = 1; k <= ac.degree(); ++k) off = std::max(off, std::abs(ac[k]));
  if (off <= 1e-14 * c0) {
    out.value = std::sqrt(c0);
    out.flat = true;
    return out;
  }

  const auto cand = critical_candidates(ac);
  auto best_of = [&](const std::vector<double>& ts) {
    double m = 0.0;
    for (double t : ts) m = std::max(m, std::abs(p(t)));
    return m;
  };
  const double from_companion = best_of(cand.companion);
  const double from_grid = best_of(cand.grid);
  out.value = std::max(from_companion, from_grid);
  out.low_confidence = std::abs(from_companion - from_grid) > 1e-9;

  std::vector<std::pair<double, double>> hits;  // (t, |p|)
  for (const auto* list : {&cand.companion, &cand.grid})
    for (double t : *list) {
      const double v = std::abs(p(t));
      if (v >= out.value - 1e-12) hits.emplace_back(wrap_angle(t), v);
    }
  std::sort(hits.begin(), hits.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& h : hits) {
    if (!merged.empty() && h.first - merged.back().first < 1e-6) {
      if (h.second > merged.back().second) merged.back() = h;
    } else {
      merged.push_back(h);
    }
  }
  if (merged.size() > 1 && merged.front().first + 2.0 * kPi - merged.back().first < 1e-6) {
    if (merged.front().second > merged.back().second) merged.back() = merged.front();
    merged.erase(merged.begin());
    std::sort(merged.begin(), merged.end());
  }
  for (const auto& m : merged) out.argmax.push_back(m.first);
  return out;
}

CirclePolynomial normalize_to_unit(const CirclePolynomial& p) {
  const auto n = sup_norm(p);
  return p / Complex(n.value);
}

}  // namespace lacunary
