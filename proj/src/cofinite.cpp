#include "lacunary/cofinite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefectFloor = 1e-15;

bool is_power_of_two(std::size_t n) { return n >= 4 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int g = 0;
  while ((std::size_t{1} << g) < n) ++g;
  return g;
}

// c_k = (1/n) sum_j x_j e^{-2 pi i jk/n}
std::vector<Complex> dft(const std::vector<Complex>& x) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, x);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (auto& c : out) c *= inv_n;
  return out;
}

// x_j = sum_k c_k e^{2 pi i jk/n}
std::vector<Complex> inverse_dft(const std::vector<Complex>& c) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, c);
  const double n = static_cast<double>(c.size());
  for (auto& x : out) x *= n;
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool is_monomial_modulus(const CirclePolynomial& p) {
  const auto ac = autocorrelation(p);
  double off = 0.0;
  for (int k = 1; k <= ac.degree(); ++k) off = std::max(off, std::abs(ac[k]));
  return off <= 1e-12 * ac[0].real();
}

void require_unit_norm(const BoundaryFunction& f) {
  double norm = 0.0;
  switch (f.source()) {
    case BoundaryFunction::Source::Polynomial: norm = sup_norm(f.poly()).value; break;
    case BoundaryFunction::Source::Blaschke: norm = std::abs(f.constant()); break;
    case BoundaryFunction::Source::Grid:
      for (const auto& s : f.samples()) norm = std::max(norm, std::abs(s));
      break;
  }
  if (std::abs(norm - 1.0) > 1e-10) throw Error("norm != 1 (got " + num(norm) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryFunction

BoundaryFunction BoundaryFunction::polynomial(CirclePolynomial p, int grid_log2) {
  if (grid_log2 < 2 || grid_log2 > 24) throw Error("grid_log2 out of range");
  BoundaryFunction f;
  f.source_ = Source::Polynomial;
  f.grid_log2_ = grid_log2;
  f.samples_ = p.sample(1 << grid_log2);
  f.poly_ = std::move(p);
  return f;
}

BoundaryFunction BoundaryFunction::blaschke(std::vector<Complex> zeros, Complex constant,
                                            int grid_log2) {
  if (grid_log2 < 2 || grid_log2 > 24) throw Error("grid_log2 out of range");
  for (const auto& a : zeros)
    if (std::abs(a) >= 1.0) throw Error("Blaschke zero outside the open disk");
  BoundaryFunction f;
  f.source_ = Source::Blaschke;
  f.grid_log2_ = grid_log2;
  const int n = 1 << grid_log2;
  f.samples_.resize(n);
  for (int j = 0; j < n; ++j) {
    const Complex z = std::polar(1.0, 2.0 * kPi * j / n);
    Complex v = constant;
    for (const auto& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    f.samples_[j] = v;
  }
  f.zeros_ = std::move(zeros);
  f.constant_ = constant;
  return f;
}

BoundaryFunction BoundaryFunction::grid(std::vector<Complex> samples) {
  if (!is_power_of_two(samples.size())) throw Error("grid sample count must be a power of two");
  BoundaryFunction f;
  f.source_ = Source::Grid;
  f.grid_log2_ = log2_exact(samples.size());
  f.samples_ = std::move(samples);
  return f;
}

BoundaryFunction BoundaryFunction::resampled(int grid_log2) const {
  switch (source_) {
    case Source::Polynomial: return polynomial(poly_, grid_log2);
    case Source::Blaschke: return blaschke(zeros_, constant_, grid_log2);
    case Source::Grid:
      if (grid_log2 == grid_log2_) return *this;
      break;
  }
  throw Error("grid input cannot be resampled");
}

Complex BoundaryFunction::coefficient(int k) const {
  if (source_ == Source::Polynomial) return poly_.coeff(k);
  const int n = size();
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) acc += samples_[j] * std::polar(1.0, -2.0 * kPi * j * k / n);
  return acc / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Log-integral classification

std::string to_string(LogIntegral::Kind kind) {
  switch (kind) {
    case LogIntegral::Kind::Diverges: return "diverges";
    case LogIntegral::Kind::Converges: return "converges";
    case LogIntegral::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<double> clamped_log_defect(const BoundaryFunction& f, std::vector<bool>* clamped) {
  const auto& s = f.samples();
  std::vector<double> u(s.size());
  if (clamped) clamped->assign(s.size(), false);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double defect = 1.0 - std::abs(s[j]);
    if (defect < kDefectFloor) {
      u[j] = std::log(kDefectFloor);
      if (clamped) (*clamped)[j] = true;
    } else {
      u[j] = std::log(defect);
    }
  }
  return u;
}

LogIntegral log_integral_diverges(const BoundaryFunction& f) {
  require_unit_norm(f);
  LogIntegral out;
  const auto u = clamped_log_defect(f);
  double mean = 0.0;
  for (double x : u) mean += x;
  mean /= static_cast<double>(u.size());
  out.estimate = 2.0 * kPi * mean;

  switch (f.source()) {
    case BoundaryFunction::Source::Polynomial:
      // 1 - |f| has finitely many zeros of finite order unless |f| is constant.
      out.kind = is_monomial_modulus(f.poly()) ? LogIntegral::Kind::Diverges
                                               : LogIntegral::Kind::Converges;
      break;
    case BoundaryFunction::Source::Blaschke: out.kind = LogIntegral::Kind::Diverges; break;
    case BoundaryFunction::Source::Grid:
      out.kind = LogIntegral::Kind::Unknown;
      out.divergence_suspected = out.estimate < -50.0;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Outer function

OuterFunction outer_function(std::span<const double> modulus_log, const std::vector<bool>& clamped) {
  const std::size_t n = modulus_log.size();
  if (!is_power_of_two(n)) throw Error("outer function needs a power-of-two grid");
  for (double x : modulus_log)
    if (!std::isfinite(x)) throw Error("log-modulus sample is not finite");

  OuterFunction out;
  const std::vector<Complex> u(modulus_log.begin(), modulus_log.end());
  const auto u_hat = dft(u);
  out.log_mean = u_hat[0].real();

  // Herglotz completion: keep the mean, double positive frequencies, drop
  // negative ones. The Nyquist term stays as is so that Re h = u on the grid.
  std::vector<Complex> h_hat(n, 0.0);
  h_hat[0] = u_hat[0].real();
  for (std::size_t k = 1; k < n / 2; ++k) h_hat[k] = 2.0 * u_hat[k];
  h_hat[n / 2] = u_hat[n / 2].real();
  const auto h = inverse_dft(h_hat);

  out.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.samples[j] = std::exp(h[j]);

  const auto g_hat = dft(out.samples);
  out.g_hat.assign(g_hat.begin(), g_hat.begin() + static_cast<std::ptrdiff_t>(n / 2));
  for (std::size_t k = n / 2; k < n; ++k) out.tail_energy += std::norm(g_hat[k]);

  for (std::size_t j = 0; j < n; ++j) {
    const bool skip = !clamped.empty() && clamped[j];
    if (skip) {
      ++out.clamped;
      continue;
    }
    const double target = std::exp(modulus_log[j]);
    out.modulus_error = std::max(out.modulus_error, std::abs(std::abs(out.samples[j]) - target) / target);
  }
  if (out.modulus_error > 2e-6) throw Error("modulus check failed: " + num(out.modulus_error));
  return out;
}

CirclePolynomial gap_kernel(std::span<const Complex> g_hat, const std::vector<int>& gaps) {
  const int m = static_cast<int>(gaps.size());
  if (m == 0) throw Error("gap kernel needs at least one gap");
  auto g_at = [&](int k) -> Complex {
    if (k < 0) return 0.0;
    if (k >= static_cast<int>(g_hat.size())) throw Error("gap beyond the resolved coefficient range");
    return g_hat[k];
  };
  Eigen::MatrixXcd t(m, m + 1);
  for (int nu = 0; nu < m; ++nu)
    for (int l = 0; l <= m; ++l) t(nu, l) = g_at(gaps[nu] - l);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-12 * std::max(s(0), 1e-300)) ++rank;
  const Eigen::MatrixXcd basis = rank == 0 ? Eigen::MatrixXcd::Identity(m + 1, m + 1)
                                           : Eigen::MatrixXcd(svd.matrixV().rightCols(m + 1 - rank));
  const Eigen::MatrixXcd proj = basis * basis.adjoint();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i <= m; ++i)
    if (proj(i, i).real() > proj(best, best).real() * (1.0 + 1e-9)) best = i;
  Eigen::VectorXcd v = proj.col(best) / std::sqrt(proj(best, best).real());
  for (Eigen::Index i = 0; i <= m; ++i)
    if (std::abs(v(i)) > 1e-12) {
      v *= std::abs(v(i)) / v(i);
      break;
    }

  CirclePolynomial p0(std::vector<Complex>(v.data(), v.data() + v.size()));
  p0 = normalize_to_unit(p0);
  for (int nu = 0; nu < m; ++nu) {
    Complex acc = 0.0;
    for (int l = 0; l <= std::min(m, p0.degree()); ++l) acc += g_at(gaps[nu] - l) * p0.coeff(l);
    if (std::abs(acc) > 1e-8) throw Error("kernel residual too large: " + num(std::abs(acc)));
  }
  return p0;
}

// ---------------------------------------------------------------------------
// Witness construction

CofiniteCertificate check_cofinite_witness(const BoundaryFunction& f, const std::vector<int>& gaps,
                                           const std::vector<Complex>& w_hat) {
  const int n = f.size();
  CofiniteCertificate cert;
  cert.grid_log2 = f.grid_log2();
  std::vector<Complex> full(n, 0.0);
  for (std::size_t k = 0; k < w_hat.size(); ++k) {
    if (static_cast<int>(k) < n) full[k] = w_hat[k];
    else cert.tail_energy += std::norm(w_hat[k]);
  }
  const auto w = inverse_dft(full);
  const auto spectrum = dft(w);
  for (int k = n / 2; k < n; ++k) cert.tail_energy += std::norm(spectrum[k]);
  for (int k : gaps) {
    const double r = k < n / 2 ? std::abs(spectrum[k]) : 1.0;
    cert.gap_residuals.emplace_back(k, r);
    cert.max_gap_residual = std::max(cert.max_gap_residual, r);
  }
  for (int j = 0; j < n; ++j) {
    cert.sup_plus = std::max(cert.sup_plus, std::abs(f.samples()[j] + w[j]));
    cert.sup_minus = std::max(cert.sup_minus, std::abs(f.samples()[j] - w[j]));
  }
  double e = 0.0;
  for (int k = 0; k < n / 2; ++k) e += std::norm(spectrum[k]);
  cert.witness_norm = std::sqrt(e);

  cert.passed = true;
  if (cert.max_gap_residual > 1e-7) {
    cert.passed = false;
    cert.failure = "gap residual " + num(cert.max_gap_residual);
  } else if (std::max(cert.sup_plus, cert.sup_minus) > 1.0 + 1e-7) {
    cert.passed = false;
    cert.failure = "grid sup of |f +- w| is " + num(std::max(cert.sup_plus, cert.sup_minus));
  } else if (cert.witness_norm <= 1e-12) {
    cert.passed = false;
    cert.failure = "null witness";
  } else if (cert.tail_energy >= 1e-8) {
    cert.passed = false;
    cert.failure = "aliasing tail energy " + num(cert.tail_energy);
  }
  return cert;
}

namespace {

CofiniteWitness witness_on_grid(const BoundaryFunction& f, const std::vector<int>& gaps) {
  CofiniteWitness out;
  std::vector<bool> clamped;
  const auto u = clamped_log_defect(f, &clamped);
  out.outer = outer_function(u, clamped);
  out.p0 = gaps.empty() ? CirclePolynomial({1.0}) : gap_kernel(out.outer.g_hat, gaps);

  const int n = f.size();
  const auto p0_samples = out.p0.sample(n);
  out.samples.resize(n);
  for (int j = 0; j < n; ++j) out.samples[j] = out.outer.samples[j] * p0_samples[j];
  const auto w_hat = dft(out.samples);
  out.w_hat.assign(w_hat.begin(), w_hat.begin() + n / 2);

  out.certificate = check_cofinite_witness(f, gaps, out.w_hat);
  out.certificate.clamped = out.outer.clamped;
  out.certificate.modulus_error = out.outer.modulus_error;
  // The stored coefficients drop the upper half of the DFT; its energy is
  // what the truncation threw away.
  for (int k = n / 2; k < n; ++k) out.certificate.tail_energy += std::norm(w_hat[k]);
  if (out.certificate.passed && out.certificate.tail_energy >= 1e-8) {
    out.certificate.passed = false;
    out.certificate.failure = "aliasing tail energy " + num(out.certificate.tail_energy);
  }
  return out;
}

}  // namespace

CofiniteWitness cofinite_witness(const BoundaryFunction& f, const SpectrumSet& spectrum,
                                 bool allow_unknown) {
  if (spectrum.is_finite()) throw Error("cofinite witness needs a cofinite spectrum");
  const auto li = log_integral_diverges(f);
  if (li.kind == LogIntegral::Kind::Diverges)
    throw Error("log integral diverges: f is extreme and admits no witness");
  if (li.kind == LogIntegral::Kind::Unknown && !allow_unknown)
    throw Error("log integrability of grid input is undecided; pass the override to proceed");
  for (int k : spectrum.gaps())
    if (std::abs(f.coefficient(k)) > 1e-10) throw Error("spectrum violation at k=" + std::to_string(k));

  std::vector<int> grids{f.grid_log2()};
  if (f.source() != BoundaryFunction::Source::Grid && f.grid_log2() < 16) grids.push_back(16);
  std::string last;
  for (int g : grids) {
    auto w = witness_on_grid(f.resampled(g), spectrum.gaps());
    if (w.certificate.passed) return w;
    last = w.certificate.failure;
  }
  throw Error("cofinite certificate failed: " + last);
}

EvenSpectrumWitness even_spectrum_witness(const BoundaryFunction& f) {
  const auto li = log_integral_diverges(f);
  if (li.kind == LogIntegral::Kind::Diverges)
    throw Error("log integral diverges: f is extreme and admits no witness");
  const int n = f.size();
  for (int k = 1; k < n / 2; k += 2)
    if (std::abs(f.coefficient(k)) > 1e-10) throw Error("input is not even");

  EvenSpectrumWitness out;
  std::vector<bool> clamped;
  const auto u = clamped_log_defect(f, &clamped);
  out.outer = outer_function(u, clamped);
  for (int k = 1; k < n / 2; k += 2)
    out.max_odd_coefficient = std::max(out.max_odd_coefficient, std::abs(out.outer.g_hat[k]));
  for (int j = 0; j < n; ++j) {
    out.sup_plus = std::max(out.sup_plus, std::abs(f.samples()[j] + out.outer.samples[j]));
    out.sup_minus = std::max(out.sup_minus, std::abs(f.samples()[j] - out.outer.samples[j]));
  }
  return out;
}

CofiniteVerdict classify_cofinite(const BoundaryFunction& f, const SpectrumSet& spectrum,
                                  bool allow_unknown) {
  CofiniteVerdict out;
  out.log_integral = log_integral_diverges(f);
  switch (out.log_integral.kind) {
    case LogIntegral::Kind::Diverges:
      out.kind = f.source() == BoundaryFunction::Source::Polynomial ? Verdict::Kind::Monomial
                                                                    : Verdict::Kind::Extreme;
      return out;
    case LogIntegral::Kind::Unknown:
      if (!allow_unknown) {
        out.kind = Verdict::Kind::Indeterminate;
        out.diagnostics.push_back("grid input: log integral estimate " + num(out.log_integral.estimate));
        if (out.log_integral.divergence_suspected) out.diagnostics.push_back("divergence suspected");
        return out;
      }
      break;
    case LogIntegral::Kind::Converges: break;
  }
  out.witness = cofinite_witness(f, spectrum, allow_unknown);
  out.kind = Verdict::Kind::NonExtreme;
  return out;
}

}  // namespace lacunary
