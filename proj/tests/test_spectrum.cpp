#include <doctest.h>

#include "lacunary/error.hpp"
#include "lacunary/spectrum.hpp"

using namespace lacunary;

TEST_CASE("normalize_finite subtracts the minimum") {
  const auto ns = normalize_finite({2, 3, 5});
  REQUIRE(ns.spectrum);
  CHECK(ns.shift == 2);
  CHECK(ns.spectrum->n_max() == 3);
  CHECK(ns.spectrum->gaps() == std::vector<int>{2});
}

TEST_CASE("full range has no gaps") {
  const auto ns = normalize_finite({0, 1, 2, 3, 4});
  REQUIRE(ns.spectrum);
  CHECK(ns.shift == 0);
  CHECK(*ns.spectrum == SpectrumSet::full(4));
  CHECK(gap_list(*ns.spectrum).empty());
}

TEST_CASE("singleton is the monomial marker") {
  const auto ns = normalize_finite({7});
  CHECK(ns.monomial());
  CHECK(ns.shift == 7);
}

TEST_CASE("gap lists") {
  CHECK(gap_list(SpectrumSet::finite(3, {2})) == std::vector<int>{2});
  CHECK(gap_list(SpectrumSet::full(5)).empty());
  CHECK(gap_list(SpectrumSet::cofinite({3})) == std::vector<int>{3});
}

TEST_CASE("invalid spectra") {
  CHECK_THROWS_AS(SpectrumSet::finite(3, {0}), Error);
  CHECK_THROWS_AS(SpectrumSet::finite(3, {3}), Error);
  CHECK_THROWS_AS(SpectrumSet::finite(3, {1, 1}), Error);
  CHECK_THROWS_AS(SpectrumSet::finite(0, {}), Error);
  CHECK_THROWS_AS(normalize_finite({}), Error);
  CHECK_THROWS_AS(SpectrumSet::cofinite({2}).n_max(), Error);
}

TEST_CASE("membership follows the shift") {
  const std::set<int> raw{4, 6, 7, 11};
  const auto ns = normalize_finite(raw);
  REQUIRE(ns.spectrum);
  for (int k = -2; k < 20; ++k) CHECK(ns.spectrum->contains(k) == (raw.count(k + ns.shift) == 1));
  CHECK(ns.spectrum->members() == std::vector<int>{0, 2, 3, 7});
}

TEST_CASE("normalization is idempotent") {
  const auto once = normalize_finite({3, 5, 9});
  const auto members = once.spectrum->members();
  const auto twice = normalize_finite(std::set<int>(members.begin(), members.end()));
  CHECK(twice.shift == 0);
  CHECK(*twice.spectrum == *once.spectrum);
}

TEST_CASE("cofinite membership") {
  const auto s = SpectrumSet::cofinite({1, 4});
  CHECK_FALSE(s.is_finite());
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(4));
  CHECK(s.contains(1000));
  CHECK_FALSE(s.contains(-1));
}
