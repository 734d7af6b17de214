#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lacunary/circle_poly.hpp"
#include "lacunary/contact.hpp"
#include "lacunary/extremal_matrix.hpp"
#include "oracles.hpp"

using namespace lacunary;
using std::numbers::pi;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const Complex kI(0, 1);

CirclePolynomial p_star() { return CirclePolynomial({(1 + kSqrt2) / 4, 0.5, (1 - kSqrt2) / 4}); }

ContactSet contacts(std::vector<ContactPoint> pts) {
  ContactSet c;
  c.points = std::move(pts);
  for (const auto& p : c.points) c.mu += p.mu;
  return c;
}

}  // namespace

TEST_CASE("restriction polynomials") {
  const auto a = restriction_poly(contacts({{0.0, 1}}));
  CHECK((a.r - CirclePolynomial({-1.0, 1.0})).max_abs_coeff() < 1e-15);
  CHECK(std::abs(a.lambda - kI) < 1e-15);

  const auto b = restriction_poly(contacts({{0.0, 1}, {pi, 1}}));
  CHECK((b.r - CirclePolynomial({-1.0, 0.0, 1.0})).max_abs_coeff() < 1e-15);
  CHECK(std::abs(b.lambda + kI) < 1e-15);

  const auto c = restriction_poly(contacts({{0.0, 2}}));
  CHECK((c.r - CirclePolynomial({1.0, -2.0, 1.0})).max_abs_coeff() < 1e-15);
  CHECK(std::abs(c.lambda + 1.0) < 1e-15);
}

TEST_CASE("restriction factorization on the circle") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cs = contacts({{u(rng), 1 + trial % 2}, {u(rng), 1}});
    const auto rd = restriction_poly(cs);
    CHECK(std::abs(std::abs(rd.lambda) - 1.0) < 1e-12);
    CHECK(rd.r.degree() == cs.mu);
    for (const auto& pt : cs.points) CHECK(std::abs(rd.r(pt.t)) < 1e-9);
    for (int j = 0; j < 64; ++j) {
      const double t = 2 * pi * j / 64;
      Complex rhs = rd.lambda * std::polar(1.0, cs.mu * t / 2);
      for (const auto& pt : cs.points) rhs *= std::pow(2 * std::sin((t - pt.t) / 2), pt.mu);
      CHECK(std::abs(rd.r(t) - rhs) < 1e-9);
    }
  }
}

TEST_CASE("Wronski blocks") {
  const auto a = wronski_block(CirclePolynomial({0.5, 0.5}), 0.0, 1, 0.5, 1, 1);
  REQUIRE(a.rows() == 1);
  REQUIRE(a.cols() == 1);
  CHECK(std::abs(a(0, 0) - 1.0) < 1e-15);

  const auto b = wronski_block(p_star(), 0.0, 2, 1.0, 2, 2);
  REQUIRE(b.rows() == 2);
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(b(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(b(1, 0) + kI * kSqrt2 / 2.0) < 1e-15);

  const auto c = wronski_block(CirclePolynomial({0.5, 0.0, 0.5}), pi, 1, 1.0, 2, 2);
  CHECK(std::abs(c(0, 0) + 1.0) < 1e-15);
}

TEST_CASE("Wronski entries against finite differences") {
  const CirclePolynomial p({0.3, Complex(0.2, 0.1), -0.4, 0.1});
  const double t = 0.8;
  const auto w = wronski_block(p, t, 3, 1.5, 3, 1);
  for (int l = 0; l < w.cols(); ++l) {
    const double alpha = 1.5 + l;
    const auto h = [&](double x) { return std::polar(1.0, -alpha * x) * oracle::eval(p.coeffs(), x); };
    for (int s = 0; s <= 2; ++s) CHECK(std::abs(w(s, l) - oracle::derivative(h, t, s)) < 1e-5);
  }
}

TEST_CASE("gap blocks") {
  const auto a = gap_block(CirclePolynomial({-1.0, 0.0, 1.0}), {1}, 2, 2);
  REQUIRE(a.rows() == 1);
  REQUIRE(a.cols() == 1);
  CHECK(std::abs(a(0, 0)) < 1e-15);

  const auto b = gap_block(CirclePolynomial({-1.0, 1.0}), {1}, 2, 1);
  REQUIRE(b.cols() == 2);
  CHECK(std::abs(b(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(b(0, 1) + 1.0) < 1e-15);

  const auto c = gap_block(CirclePolynomial({-1.0, 1.0}), {}, 3, 1);
  CHECK(c.rows() == 0);
  CHECK(c.cols() == 3);
}

TEST_CASE("gap block entries vanish outside [0, mu]") {
  const CirclePolynomial r({1.0, 2.0, 3.0});
  const auto m = gap_block(r, {1, 4, 5}, 6, 2);
  const std::vector<int> gaps{1, 4, 5};
  for (int nu = 0; nu < 3; ++nu)
    for (int l = 0; l < m.cols(); ++l) CHECK(m(nu, l) == r.coeff(gaps[nu] - l));
}

TEST_CASE("assembled matrices") {
  const auto a = assemble(CirclePolynomial({0.5, 0.5}), SpectrumSet::full(1));
  REQUIRE(a.rows() == 1);
  REQUIRE(a.cols() == 2);
  CHECK(std::abs(a.assembled(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(a.assembled(0, 1)) < 1e-15);

  const auto b = assemble(CirclePolynomial({0.5, 0.0, 0.5}), SpectrumSet::finite(2, {1}));
  REQUIRE(b.rows() == 4);
  REQUIRE(b.cols() == 2);
  Eigen::MatrixXd expect(4, 2);
  expect << 0, 0, 0, 0, 1, 0, -1, 0;
  CHECK((b.assembled - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(b.row_labels == std::vector<std::string>{"A|-B", "B|A", "W1", "W2"});

  const auto c = assemble(p_star(), SpectrumSet::full(2));
  REQUIRE(c.rows() == 2);
  REQUIRE(c.cols() == 2);
  Eigen::MatrixXd pe(2, 2);
  pe << 1, 0, 0, -kSqrt2 / 2;
  CHECK((c.assembled - pe).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dimensions and determinism") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const auto spectrum = SpectrumSet::finite(4, trial % 2 ? std::vector<int>{2} : std::vector<int>{1, 3});
    std::vector<Complex> c(5, 0.0);
    for (int k : spectrum.members()) c[k] = {g(rng), g(rng)};
    const auto p = normalize_to_unit(CirclePolynomial(c));
    const auto cs = contact_set(p, 4);
    const auto m1 = assemble(p, spectrum);
    const auto m2 = assemble(p, spectrum);
    const int gaps = static_cast<int>(spectrum.gaps().size());
    CHECK(m1.rows() == 2 * gaps + cs.mu);
    CHECK(m1.cols() == 2 * (4 - cs.mu + 1));
    CHECK(m1.assembled == m2.assembled);
    CHECK(m1.assembled.allFinite());
  }
}

TEST_CASE("full range uses only Wronski rows") {
  const auto m = assemble(CirclePolynomial({0.25, 0.5, 0.25}), SpectrumSet::full(2));
  CHECK(m.A.rows() == 0);
  for (const auto& label : m.row_labels) CHECK(label[0] == 'W');
}

TEST_CASE("csv dump") {
  const auto m = assemble(CirclePolynomial({0.5, 0.0, 0.5}), SpectrumSet::finite(2, {1}));
  const auto csv = to_csv(m);
  CHECK(csv.rfind("block,alpha0,beta0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
