#include "lacunary/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lacunary {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double sup_or_zero(const CirclePolynomial& p) { return p.is_zero() ? 0.0 : sup_norm(p).value; }

}  // namespace

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Extreme: return "extreme";
    case Verdict::Kind::NonExtreme: return "non_extreme";
    case Verdict::Kind::Monomial: return "monomial";
    case Verdict::Kind::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

RankInfo numeric_rank(const Eigen::MatrixXd& m, double tol_rank) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  info.sigma.assign(s.data(), s.data() + s.size());
  const double s1 = info.sigma.empty() ? 0.0 : info.sigma.front();
  if (s1 == 0.0) return info;

  const double threshold = tol_rank * s1 * static_cast<double>(std::max(m.rows(), m.cols()));
  for (double x : info.sigma) {
    if (x > threshold) ++info.rank;
    const double rel = x / s1;
    if (rel >= 1e-11 && rel <= 1e-7) info.borderline = true;
  }
  const double kept = info.sigma[info.rank - 1];
  if (info.rank < static_cast<int>(info.sigma.size())) {
    const double dropped = info.sigma[info.rank];
    info.confidence = dropped > 0.0 ? kept / dropped : std::numeric_limits<double>::infinity();
  } else {
    info.confidence = kept / threshold;
  }
  return info;
}

Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& m, double tol_rank) {
  const auto n = m.cols();
  const auto info = numeric_rank(m, tol_rank);
  if (info.rank >= n) throw Error("full rank");

  Eigen::MatrixXd basis;
  if (info.rank == 0) {
    basis = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    basis = svd.matrixV().rightCols(n - info.rank);
  }
  // The orthogonal projector onto the kernel does not depend on which basis
  // the SVD happened to return.
  const Eigen::MatrixXd proj = basis * basis.transpose();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (proj(i, i) > proj(best, best) * (1.0 + 1e-9)) best = i;
  Eigen::VectorXd v = proj.col(best) / std::sqrt(proj(best, best));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  const double mnorm = m.norm();
  if (mnorm > 0.0 && (m * v).norm() > 1e-8 * mnorm) throw Error("kernel residual too large");
  return v;
}

Witness build_witness(const CirclePolynomial& p, const SpectrumSet& spectrum,
                      const ContactSet& contacts, const RestrictionData& restriction,
                      const Eigen::VectorXd& v) {
  const int cols = spectrum.n_max() - contacts.mu + 1;
  if (v.size() != 2 * cols) throw Error("kernel vector has wrong length");
  if (v.norm() == 0.0) throw Error("zero kernel vector");

  std::vector<Complex> s_coeffs(cols);
  for (int l = 0; l < cols; ++l) s_coeffs[l] = Complex(v(l), v(cols + l));
  const CirclePolynomial s_poly(s_coeffs);  // lambda q0
  const CirclePolynomial q0 = s_poly * std::conj(restriction.lambda);
  const CirclePolynomial q = q0 * restriction.r;
  if (q.is_zero()) throw Error("null witness");

  // q must live on the spectrum.
  const double qn = q.coeff_norm();
  for (int k = 0; k <= q.degree(); ++k)
    if (!spectrum.contains(k) && std::abs(q.coeff(k)) > 1e-9 * qn)
      throw Error("witness violates spectrum at k=" + std::to_string(k));

  // Re(lambda z^gamma conj(p) q0) vanishes to order mu_j at every contact.
  const int d = p.degree();
  std::vector<Complex> prod(d + cols, 0.0);  // exponents -d .. cols-1
  for (int j = 0; j <= d; ++j)
    for (int l = 0; l < cols; ++l) prod[l - j + d] += std::conj(p.coeff(j)) * s_poly.coeff(l);
  for (const auto& c : contacts.points) {
    for (int s = 0; s < c.mu; ++s) {
      const double val = laurent_derivative(prod, -d, -contacts.gamma(), c.t, s).real();
      double scale = 0.0;
      for (std::size_t e = 0; e < prod.size(); ++e)
        scale += std::abs(prod[e]) *
                 std::pow(std::abs(static_cast<double>(e) - d + contacts.gamma()), s);
      if (std::abs(val) > 1e-7 * std::max(scale, 1e-300))
        throw Error("witness fails the contact equations at t=" + num(c.t));
    }
  }

  auto feasible = [&](double eps) {
    return std::max(sup_or_zero(p + q * eps), sup_or_zero(p - q * eps)) <= 1.0 + 1e-12;
  };
  double eps = 1.0;
  if (!feasible(1.0)) {
    double lo = 0.5;
    while (!feasible(lo)) {
      lo *= 0.5;
      if (lo < 1e-10) throw VanishingEpsilon("vanishing epsilon");
    }
    double hi = std::min(2.0 * lo, 1.0);
    for (int it = 0; it < 24; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
    eps = lo;
  }
  return {q * eps, eps, q0};
}

Certificate check_witness(const CirclePolynomial& p, const CirclePolynomial& q,
                          const std::optional<SpectrumSet>& spectrum, const VerifyOptions& opts) {
  Certificate cert;
  cert.norm_plus = sup_or_zero(p + q);
  cert.norm_minus = sup_or_zero(p - q);
  cert.null_witness = q.is_zero() || q.coeff_norm() <= 1e-14 * std::max(1.0, p.coeff_norm());

  const auto ps = p.sample(opts.grid);
  const auto qs = q.sample(opts.grid);
  cert.pointwise_slack = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < opts.grid; ++j) {
    const double lhs = 2.0 * std::abs((std::conj(ps[j]) * qs[j]).real()) + std::norm(qs[j]);
    cert.pointwise_slack = std::max(cert.pointwise_slack, lhs - (1.0 - std::norm(ps[j])));
  }

  if (spectrum && !q.is_zero()) {
    const double qn = q.coeff_norm();
    for (int k = 0; k <= q.degree(); ++k)
      if (!spectrum->contains(k)) cert.gap_residuals.emplace_back(k, std::abs(q.coeff(k)) / qn);
  }

  cert.passed = true;
  if (cert.norm_plus > 1.0 + opts.slack) {
    cert.passed = false;
    cert.failure = "||p+q|| = " + num(cert.norm_plus) + " exceeds 1";
  } else if (cert.norm_minus > 1.0 + opts.slack) {
    cert.passed = false;
    cert.failure = "||p-q|| = " + num(cert.norm_minus) + " exceeds 1";
  } else if (cert.pointwise_slack > opts.pointwise_tol) {
    cert.passed = false;
    cert.failure = "2|Re(conj(p)q)| + |q|^2 exceeds 1-|p|^2 by " + num(cert.pointwise_slack);
  } else {
    for (const auto& [k, r] : cert.gap_residuals)
      if (r > opts.gap_tol) {
        cert.passed = false;
        cert.failure = "coefficient of q at excluded frequency " + std::to_string(k) + " is " + num(r);
        break;
      }
  }
  return cert;
}

Certificate verify_witness(const CirclePolynomial& p, const CirclePolynomial& q,
                           const std::optional<SpectrumSet>& spectrum, const VerifyOptions& opts) {
  auto cert = check_witness(p, q, spectrum, opts);
  if (!cert.passed) throw Error("certificate failure: " + cert.failure);
  return cert;
}

Verdict classify(const CirclePolynomial& p_raw, const SpectrumSet& spectrum, const Tolerances& tol) {
  if (!spectrum.is_finite()) throw Error("rank test needs a finite spectrum");
  if (p_raw.is_zero() || p_raw.max_abs_coeff() == 0.0) throw Error("zero polynomial");

  Verdict out;
  const double cmax = p_raw.max_abs_coeff();
  std::vector<Complex> cleaned = p_raw.coeffs();
  for (int k = 0; k <= p_raw.degree(); ++k) {
    if (spectrum.contains(k)) continue;
    if (std::abs(cleaned[k]) > 1e-12 * cmax) throw Error("spectrum violation at k=" + std::to_string(k));
    if (cleaned[k] != Complex(0.0)) {
      out.diagnostics.push_back("pruned negligible coefficient at k=" + std::to_string(k));
      cleaned[k] = 0.0;
    }
  }
  const CirclePolynomial raw(std::move(cleaned));
  out.scale = sup_norm(raw).value;
  out.p = raw / out.scale;

  if (out.p.support(1e-12).size() == 1) {
    out.kind = Verdict::Kind::Monomial;
    return out;
  }

  const int n = spectrum.n_max();
  const auto analysis = analyze_contacts(out.p, n, {.tol_contact = tol.tol_contact});
  if (analysis.status == ContactAnalysis::Status::Unimodular) {
    out.kind = Verdict::Kind::Monomial;
    out.diagnostics.push_back("unimodular modulus");
    return out;
  }
  if (analysis.status == ContactAnalysis::Status::Indeterminate) {
    out.kind = Verdict::Kind::Indeterminate;
    out.diagnostics.insert(out.diagnostics.end(), analysis.diagnostics.begin(),
                           analysis.diagnostics.end());
    return out;
  }
  out.contacts = analysis.contacts;
  out.restriction = restriction_poly(*out.contacts);
  out.matrix = assemble(out.p, spectrum, *out.contacts, *out.restriction);

  const int mu = out.contacts->mu;
  const int m = static_cast<int>(spectrum.gaps().size());
  ConsistencyReport rep;
  rep.mu = mu;
  rep.n_max = n;
  rep.lambda_modulus_error = std::abs(std::abs(out.restriction->lambda) - 1.0);
  rep.rows = out.matrix->rows();
  rep.cols = out.matrix->cols();
  rep.expected_rows = 2 * m + mu;
  rep.expected_cols = 2 * (n - mu + 1);
  out.consistency = rep;
  if (!rep.ok()) throw Error("consistency check failed");

  out.rank = numeric_rank(out.matrix->assembled, tol.tol_rank);
  if (out.rank->borderline) {
    out.kind = Verdict::Kind::Indeterminate;
    out.diagnostics.push_back("singular value in the borderline band");
    return out;
  }
  if (out.rank->rank == out.matrix->cols()) {
    out.kind = Verdict::Kind::Extreme;
    return out;
  }

  out.kernel = kernel_vector(out.matrix->assembled, tol.tol_rank);
  try {
    out.witness = build_witness(out.p, spectrum, *out.contacts, *out.restriction, out.kernel);
  } catch (const VanishingEpsilon& e) {
    out.kind = Verdict::Kind::Indeterminate;
    out.diagnostics.push_back(e.what());
    return out;
  }
  out.certificate = verify_witness(out.p, out.witness->q, spectrum, {.slack = tol.slack});
  out.kind = Verdict::Kind::NonExtreme;
  return out;
}

}  // namespace lacunary
