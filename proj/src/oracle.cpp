#include "lacunary/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

double sup_or_zero(const CirclePolynomial& p) { return p.is_zero() ? 0.0 : sup_norm(p).value; }

std::uint64_t fnv1a(const Eigen::VectorXd& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(v(i));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Real coordinates (Re c_k, Im c_k) over the members of the spectrum.
CirclePolynomial from_coordinates(const std::vector<int>& members, const Eigen::VectorXd& x) {
  std::vector<Complex> c(members.back() + 1, 0.0);
  for (std::size_t i = 0; i < members.size(); ++i) c[members[i]] = Complex(x(2 * i), x(2 * i + 1));
  return CirclePolynomial(std::move(c));
}

// Largest s in [0, delta_max] with p +- s q in the ball, or 0 below `floor`.
double max_feasible_scale(const CirclePolynomial& p, const CirclePolynomial& q, double slack,
                          double floor, double delta_max) {
  auto ok = [&](double s) { return midpoint_check(p, q * s, slack); };
  if (!ok(floor)) return 0.0;
  if (ok(delta_max)) return delta_max;
  double lo = floor, hi = delta_max;
  for (int it = 0; it < 40; ++it) {
    const double mid = std::sqrt(lo * hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Order assignments o_j >= 1 per maximum point with sum <= n_max.
void enumerate_orders(int points, int budget, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (static_cast<int>(cur.size()) == points) {
    out.push_back(cur);
    return;
  }
  const int remaining = points - static_cast<int>(cur.size()) - 1;
  for (int o = 1; o <= budget - remaining; ++o) {
    cur.push_back(o);
    enumerate_orders(points, budget - o, cur, out, limit);
    cur.pop_back();
  }
}

// Basis of the real coordinate vectors whose polynomial q vanishes to order
// o_j at t_j while Re(conj(p) q) vanishes to order 2 o_j there.
Eigen::MatrixXd vanishing_subspace(const CirclePolynomial& p, const std::vector<int>& members,
                                   const std::vector<double>& points, const std::vector<int>& orders) {
  const auto dim = static_cast<Eigen::Index>(2 * members.size());
  std::vector<Eigen::VectorXd> rows;
  const int d = p.degree();
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    x(b) = 1.0;
    const auto qb = from_coordinates(members, x);
    std::vector<Complex> prod(d + qb.degree() + 1, 0.0);  // exponents -d ..
    for (int j = 0; j <= d; ++j)
      for (int l = 0; l <= qb.degree(); ++l) prod[l - j + d] += std::conj(p.coeff(j)) * qb.coeff(l);

    std::size_t r = 0;
    auto put = [&](double v) {
      if (rows.size() <= r) rows.emplace_back(Eigen::VectorXd::Zero(dim));
      rows[r++](b) = v;
    };
    for (std::size_t j = 0; j < points.size(); ++j) {
      for (int s = 0; s < orders[j]; ++s) {
        const Complex v = weighted_derivative(qb, 0.0, points[j], s);
        put(v.real());
        put(v.imag());
      }
      for (int s = 0; s < 2 * orders[j]; ++s)
        put(laurent_derivative(prod, -d, 0.0, points[j], s).real());
    }
  }
  Eigen::MatrixXd c(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double n = rows[i].norm();
    c.row(static_cast<Eigen::Index>(i)) = n > 0 ? Eigen::VectorXd(rows[i] / n) : rows[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * std::max(s(0), 1e-300)) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

}  // namespace

bool midpoint_check(const CirclePolynomial& p, const CirclePolynomial& q, double slack) {
  return std::max(sup_or_zero(p + q), sup_or_zero(p - q)) <= 1.0 + slack;
}

double quadratic_slack(const CirclePolynomial& p, const CirclePolynomial& q, int grid) {
  const auto ps = p.sample(grid);
  const auto qs = q.sample(grid);
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const double lhs = 2.0 * std::abs((std::conj(ps[j]) * qs[j]).real()) + std::norm(qs[j]);
    worst = std::max(worst, lhs - (1.0 - std::norm(ps[j])));
  }
  return worst;
}

SearchResult perturbation_search(const CirclePolynomial& p_in, const SpectrumSet& spectrum,
                                 const SearchConfig& cfg) {
  if (!spectrum.is_finite()) throw Error("perturbation search needs a finite spectrum");
  if (p_in.is_zero()) throw Error("zero polynomial");
  const auto norm = sup_norm(p_in);
  const CirclePolynomial p = p_in / norm.value;
  const auto members = spectrum.members();
  const auto dim = static_cast<Eigen::Index>(2 * members.size());

  std::vector<Eigen::MatrixXd> subspaces;
  if (!norm.flat && !norm.argmax.empty()) {
    std::vector<std::vector<int>> orders;
    std::vector<int> cur;
    enumerate_orders(static_cast<int>(norm.argmax.size()), spectrum.n_max(), cur, orders, 64);
    for (const auto& o : orders) {
      auto basis = vanishing_subspace(p, members, norm.argmax, o);
      if (basis.cols() > 0) subspaces.push_back(std::move(basis));
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SearchResult out;
  for (int i = 0; i < cfg.trials; ++i) {
    TrialRecord rec;
    rec.index = i;
    Eigen::VectorXd x;
    if (i % 2 == 1 && !subspaces.empty()) {
      const auto& basis = subspaces[(i / 2) % subspaces.size()];
      Eigen::VectorXd y(basis.cols());
      for (auto& v : y) v = gauss(rng);
      x = basis * y;
      rec.phase = "vanishing";
    } else {
      x.resize(dim);
      for (auto& v : x) v = gauss(rng);
      rec.phase = "random";
    }
    x /= x.norm();
    rec.direction_hash = fnv1a(x);

    const auto q = from_coordinates(members, x);
    rec.max_scale = max_feasible_scale(p, q, cfg.slack, 1e-6, cfg.delta_max);
    double strict = 0.0;
    if (rec.max_scale > 1e-6) {
      strict = max_feasible_scale(p, q, cfg.slack * 1e-4, 1e-6, cfg.delta_max);
      rec.accepted = strict >= 0.5 * rec.max_scale;
    }
    out.transcript.push_back(rec);
    if (rec.accepted) {
      out.q = q * strict;
      out.found_at = i;
      break;
    }
  }
  return out;
}

}  // namespace lacunary
