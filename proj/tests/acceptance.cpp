// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lacunary/classifier.hpp"
#include "lacunary/cofinite.hpp"
#include "lacunary/oracle.hpp"
#include "oracles.hpp"

using namespace lacunary;
using std::numbers::pi;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const Complex kI(0, 1);

struct Check {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

// Every finite verdict produced below, for criterion 10.
struct Run {
  CirclePolynomial p;
  SpectrumSet spectrum;
  Verdict verdict;
};
std::vector<Run> g_runs;

Verdict run_classify(const CirclePolynomial& p, const SpectrumSet& s) {
  auto v = classify(p, s);
  g_runs.push_back({v.p, s, v});
  return v;
}

CirclePolynomial p_star() { return CirclePolynomial({(1 + kSqrt2) / 4, 0.5, (1 - kSqrt2) / 4}); }

Complex unimodular(std::mt19937_64& rng) {
  return std::polar(1.0, std::uniform_real_distribution<double>(-pi, pi)(rng));
}

CirclePolynomial random_on(std::mt19937_64& rng, const SpectrumSet& s) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(s.n_max() + 1, 0.0);
  for (int k : s.members()) c[k] = {g(rng), g(rng)};
  return CirclePolynomial(c);
}

double max_abs_on_grid(const std::vector<Complex>& c, int n) {
  double m = 0.0;
  for (int j = 0; j < n; ++j) m = std::max(m, std::abs(oracle::eval(c, 2 * pi * j / n)));
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int count_significant(const CirclePolynomial& p, double tol) {
  int n = 0;
  for (const auto& c : p.coeffs()) n += std::abs(c) > tol;
  return n;
}

// ---------------------------------------------------------------------------

Check monomials() {
  Check c;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int k = static_cast<int>(rng() % (n + 1));
    std::vector<int> gaps;
    for (int j = 1; j < n; ++j)
      if (j != k && rng() % 2) gaps.push_back(j);
    const auto s = SpectrumSet::finite(n, gaps);
    const auto v = run_classify(CirclePolynomial::monomial(k, unimodular(rng)), s);
    c.expect(v.kind == Verdict::Kind::Monomial && v.extreme(), "monomial not recognized");
  }
  return c;
}

Check golden_binomial() {
  Check c;
  const CirclePolynomial p({0.5, 0.5});
  const auto v = run_classify(p, SpectrumSet::full(1));
  c.expect(v.kind == Verdict::Kind::NonExtreme, "verdict");
  if (!v.witness) return c;
  const auto& q = v.witness->q;
  const auto plus = p + q, minus = p - q;
  const double np = oracle::sup_abs(plus.coeffs()), nm = oracle::sup_abs(minus.coeffs());
  c.expect(std::abs(np - 1.0) <= 1e-10 && std::abs(nm - 1.0) <= 1e-10, "||p +- q|| != 1");
  c.expect(count_significant(plus, 1e-10) == 1 && count_significant(minus, 1e-10) == 1, "p +- q not monomials");
  const auto deg = [](const CirclePolynomial& m) {
    for (int k = 0; k <= m.degree(); ++k)
      if (std::abs(std::abs(m.coeff(k)) - 1.0) <= 1e-10) return k;
    return -1;
  };
  const int a = deg(plus), b = deg(minus);
  c.expect((a == 0 && b == 1) || (a == 1 && b == 0), "p +- q != {1, z}");
  return c;
}

Check golden_gap() {
  Check c;
  const auto v = run_classify(CirclePolynomial({0.5, 0.0, 0.5}), SpectrumSet::finite(2, {1}));
  c.expect(v.kind == Verdict::Kind::NonExtreme, "verdict");
  if (!v.witness) return c;
  c.expect(std::abs(v.witness->q.coeff(1)) <= 1e-12, "gap residual");
  c.expect(std::abs(v.witness->epsilon - 0.5) <= 1e-6, "epsilon != 1/2");
  return c;
}

Check golden_extreme() {
  Check c;
  const auto p = p_star();
  // |p*|^2 = 1 - (1 - cos t)^2 / 4 = 5/8 + cos t / 2 - cos 2t / 8, from the pair sums.
  c.expect(std::abs(oracle::autocorr(p.coeffs(), 0) - 0.625) < 1e-15, "c0");
  c.expect(std::abs(oracle::autocorr(p.coeffs(), 1) - 0.25) < 1e-15, "c1");
  c.expect(std::abs(oracle::autocorr(p.coeffs(), 2) + 0.0625) < 1e-15, "c2");
  // Wronski column: h(t) = e^{-it} p(e^{it}) = 1/2 + cos t / 2 - i (sqrt2/2) sin t.
  const auto h = [&](double t) { return std::polar(1.0, -t) * oracle::eval(p.coeffs(), t); };
  c.expect(std::abs(oracle::derivative(h, 0.0, 0) - 1.0) < 1e-12, "h(0)");
  c.expect(std::abs(oracle::derivative(h, 0.0, 1) + kI * kSqrt2 / 2.0) < 1e-7, "h'(0)");

  const auto v = run_classify(p, SpectrumSet::full(2));
  c.expect(v.kind == Verdict::Kind::Extreme, "verdict");
  if (!v.matrix || !v.rank) return c;
  const auto& m = v.matrix->assembled;
  c.expect(m.rows() == 2 && m.cols() == 2, "shape");
  if (m.rows() != 2 || m.cols() != 2) return c;
  const double expect[2][2] = {{1.0, 0.0}, {0.0, -kSqrt2 / 2}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c.expect(std::abs(m(i, j) - expect[i][j]) <= 1e-9, "matrix entry");
  c.expect(v.rank->sigma.size() == 2 && std::abs(v.rank->sigma[0] - 1.0) <= 1e-9 &&
               std::abs(v.rank->sigma[1] - kSqrt2 / 2) <= 1e-9,
           "singular values");
  return c;
}

Check binomials() {
  Check c;
  std::mt19937_64 rng(103);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const CirclePolynomial p({Complex(g(rng), g(rng)), Complex(g(rng), g(rng))});
    const auto v = run_classify(p, SpectrumSet::full(1));
    c.expect(v.kind == Verdict::Kind::NonExtreme, "binomial not non-extreme");
    c.expect(v.matrix && v.matrix->rows() == 1 && v.matrix->cols() == 2, "matrix shape");
  }
  return c;
}

Check oracle_agreement(std::string& info) {
  Check c;
  std::mt19937_64 rng(107);
  int conflicts = 0, extreme = 0, extreme_found = 0, non_extreme = 0, found = 0, pairs = 0, disagree = 0;
  SearchConfig cfg;
  cfg.trials = 100;

  const auto check_pair = [&](const CirclePolynomial& p, const CirclePolynomial& q) {
    const double qs = quadratic_slack(p, q, cfg.circle_grid);
    // Same grid: |p +- q|^2 - 1 is exactly the quadratic slack pointwise.
    const auto pp = (p + q).sample(cfg.circle_grid), pm = (p - q).sample(cfg.circle_grid);
    double grid_max = 0.0;
    for (int j = 0; j < cfg.circle_grid; ++j) grid_max = std::max({grid_max, std::abs(pp[j]), std::abs(pm[j])});
    const bool grid_mid = grid_max <= 1.0 + cfg.slack;
    const bool quad = qs <= (1.0 + cfg.slack) * (1.0 + cfg.slack) - 1.0;
    ++pairs;
    if (grid_mid != quad) ++disagree;
  };

  for (int inst = 0; inst < 200; ++inst) {
    CirclePolynomial p;
    SpectrumSet s = SpectrumSet::full(1);
    if (inst % 10 == 9) {
      // The p* family: rotations and phases of an extreme point.
      s = SpectrumSet::full(2);
      p = unimodular(rng) * p_star().rotated(unimodular(rng));
    } else {
      const int size = 2 + static_cast<int>(rng() % 3);
      const int n = std::max(size - 1, 1 + static_cast<int>(rng() % 4));
      std::vector<int> inner;
      for (int k = 1; k < n; ++k) inner.push_back(k);
      std::shuffle(inner.begin(), inner.end(), rng);
      std::vector<int> keep(inner.begin(), inner.begin() + (size - 2));
      std::vector<int> gaps;
      for (int k = 1; k < n; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) gaps.push_back(k);
      s = SpectrumSet::finite(n, gaps);
      p = random_on(rng, s);
    }
    const auto v = run_classify(p, s);
    cfg.seed = 1000 + inst;
    const auto r = perturbation_search(v.p, s, cfg);
    if (r.q && v.kind == Verdict::Kind::Extreme) ++conflicts;
    found += r.q.has_value();
    if (v.kind == Verdict::Kind::Extreme) {
      ++extreme;
      if (r.q) ++extreme_found;
    }
    if (v.kind == Verdict::Kind::NonExtreme && v.witness) {
      ++non_extreme;
      c.expect(midpoint_check(v.p, v.witness->q, cfg.slack), "classifier witness fails midpoint_check");
      check_pair(v.p, v.witness->q);
    }
    if (r.q) check_pair(v.p, *r.q);
    // Random perturbations of both signs of the slack.
    std::normal_distribution<double> g;
    std::vector<Complex> d(s.n_max() + 1, 0.0);
    for (int k : s.members()) d[k] = {g(rng), g(rng)};
    check_pair(v.p, CirclePolynomial(d) * std::pow(10.0, -4.0 + 4.0 * (inst % 7) / 6.0));
  }
  c.expect(conflicts == 0, "oracle found q for an extreme verdict");
  c.expect(disagree == 0, "quadratic slack and midpoint check disagree");
  info = "extreme=" + std::to_string(extreme) + " (oracle hits " + std::to_string(extreme_found) +
         "), non_extreme=" + std::to_string(non_extreme) + " (oracle hits " + std::to_string(found) + ")" + ", pairs=" + std::to_string(pairs);
  return c;
}

Check invariance() {
  Check c;
  std::mt19937_64 rng(109);
  const std::vector<std::pair<CirclePolynomial, SpectrumSet>> bases{
      {p_star(), SpectrumSet::full(2)},
      {CirclePolynomial({0.5, 0.0, 0.5}), SpectrumSet::finite(2, {1})},
      {CirclePolynomial({0.25, 0.5, 0.25}), SpectrumSet::full(2)},
      {CirclePolynomial({0.5, 0.5}), SpectrumSet::full(1)},
      {CirclePolynomial({0.5, 0.0, 0.0, 0.5}), SpectrumSet::finite(3, {1, 2})},
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [p, s] = bases[trial % bases.size()];
    const auto base = run_classify(p, s);
    const Complex cc = unimodular(rng), sigma = unimodular(rng);
    const auto v = run_classify(cc * p.rotated(sigma), s);
    c.expect(v.kind == base.kind, "verdict kind changed");
    if (!base.contacts || !v.contacts) continue;
    c.expect(v.contacts->points.size() == base.contacts->points.size(), "contact count changed");
    for (const auto& bp : base.contacts->points) {
      bool hit = false;
      for (const auto& vp : v.contacts->points)
        hit = hit || (std::abs(wrap_angle(vp.t - (bp.t - std::arg(sigma)))) <= 1e-9 && vp.mu == bp.mu);
      c.expect(hit, "contact angle did not shift by -arg sigma");
    }
  }
  return c;
}

Check cofinite_golden(std::string& info) {
  Check c;
  const CirclePolynomial f({0.5, 0.5});
  const auto bf = BoundaryFunction::polynomial(f, 14);
  const auto w = cofinite_witness(bf, SpectrumSet::cofinite({3}));
  const auto& cert = w.certificate;
  c.expect(cert.passed, "certificate: " + cert.failure);
  c.expect(std::abs(w.w_hat[3]) <= 1e-7, "w(3) residual");
  double e = 0.0;
  for (const auto& x : w.w_hat) e += std::norm(x);
  c.expect(std::sqrt(e) >= 1e-4, "null witness");

  // Independent evaluation of f +- w on a subgrid, denser near the contact t = 0.
  std::vector<double> ts;
  for (int j = 0; j < 512; ++j) ts.push_back(2 * pi * j / 512);
  for (int j = -64; j <= 64; ++j) ts.push_back(1e-3 * j);
  double sup = 0.0;
  for (double t : ts) {
    Complex wt = 0.0;
    for (std::size_t k = 0; k < w.w_hat.size(); ++k) wt += w.w_hat[k] * std::polar(1.0, static_cast<double>(k) * t);
    const Complex ft = oracle::eval(f.coeffs(), t);
    sup = std::max({sup, std::abs(ft + wt), std::abs(ft - wt)});
  }
  c.expect(sup <= 1 + 1e-7, "sup |f +- w| off grid");
  c.expect(std::max(cert.sup_plus, cert.sup_minus) <= 1 + 1e-7, "grid sup |f +- w|");

  // |g| = 1 - |f| away from clamped points.
  const int n = static_cast<int>(w.outer.samples.size());
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double target = 1.0 - std::abs(oracle::eval(f.coeffs(), 2 * pi * j / n));
    if (target <= 1e-15) continue;
    worst = std::max(worst, std::abs(std::abs(w.outer.samples[j]) - target) / target);
  }
  c.expect(worst <= 2e-6, "|g| != 1 - |f|");
  info = "input G=14, certified at G=" + std::to_string(cert.grid_log2) + ", |w(3)|=" + fmt(std::abs(w.w_hat[3])) +
         ", sup-1=" + fmt(std::max(cert.sup_plus, cert.sup_minus) - 1.0) + ", |w|=" + fmt(std::sqrt(e)) +
         ", |g|/(1-|f|)-1 <= " + fmt(worst);
  return c;
}

Check even_spectrum() {
  Check c;
  const int G = 14;
  const auto w = even_spectrum_witness(BoundaryFunction::polynomial(CirclePolynomial({0.5, 0.0, 0.5}), G));
  double odd = 0.0;
  for (int k = 1; k < (1 << (G - 1)); k += 2) odd = std::max(odd, std::abs(w.outer.g_hat[k]));
  c.expect(odd <= 1e-8, "odd coefficients of g");
  c.expect(std::max(w.sup_plus, w.sup_minus) <= 1 + 1e-7, "||f +- g||");
  return c;
}

// Order of vanishing of tau at t from the growth ratio tau(t + 2h) / tau(t + h).
double vanishing_order(const CirclePolynomial& p, double t) {
  const auto tau = [&](double x) { return 1.0 - std::norm(oracle::eval(p.coeffs(), x)); };
  const double h = 0.02;
  return std::log2(tau(t + 2 * h) / tau(t + h));
}

Check consistency(std::string& info) {
  Check c;
  int checked = 0;
  for (const auto& r : g_runs) {
    const auto& v = r.verdict;
    if (!v.contacts || !v.restriction || !v.matrix) continue;
    ++checked;
    const int n = r.spectrum.n_max();
    const int m = static_cast<int>(r.spectrum.gaps().size());
    const int mu = v.contacts->mu;
    c.expect(mu <= n, "mu > N");
    c.expect(std::abs(std::abs(v.restriction->lambda) - 1.0) <= 1e-12, "|lambda| != 1");
    c.expect(v.matrix->rows() == 2 * m + mu && v.matrix->cols() == 2 * (n - mu + 1), "matrix dimensions");
    for (const auto& pt : v.contacts->points)
      c.expect(std::abs(vanishing_order(r.p, pt.t) - 2 * pt.mu) < 0.3, "contact order not 2 mu_j");
    c.expect(v.consistency && v.consistency->ok(), "consistency report");
  }
  c.expect(checked > 0, "no runs");
  info = std::to_string(checked) + " runs";
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const std::string& name, double limit_s, const std::function<Check(std::string&)>& fn) {
    std::string info;
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = fn(info);
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && dt >= limit_s) {
      if (c.ok) c.note = "runtime limit";
      c.ok = false;
    }
    failures += !c.ok;
    std::printf("%s criterion %2d: %-28s %8.3f s", c.ok ? "PASS" : "FAIL", id, name.c_str(), dt);
    if (!info.empty()) std::printf("  [%s]", info.c_str());
    if (!c.ok) std::printf("  -- %s", c.note.c_str());
    std::printf("\n");
  };
  const auto plain = [](Check (*f)()) { return [f](std::string&) { return f(); }; };

  report(1, "monomials", 1.0, plain(monomials));
  report(2, "golden (1+z)/2", 0.0, plain(golden_binomial));
  report(3, "golden (1+z^2)/2 on {0,2}", 0.0, plain(golden_gap));
  report(4, "golden extreme p*", 0.0, plain(golden_extreme));
  report(5, "binomials on {0,1}", 5.0, plain(binomials));
  report(6, "oracle agreement", 60.0, oracle_agreement);
  report(7, "rotation/phase invariance", 0.0, plain(invariance));
  report(8, "cofinite golden", 2.0, cofinite_golden);
  report(9, "even spectrum", 0.0, plain(even_spectrum));
  report(10, "consistency", 0.0, consistency);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
