#pragma once

#include <string>
#include <vector>

#include "lacunary/circle_poly.hpp"

namespace lacunary {

struct ContactPoint {
  double t = 0.0;  ///< angle in (-pi, pi]
  int mu = 0;      ///< tau = 1 - |p|^2 vanishes to order exactly 2 mu at t
};

/// Points of the circle where a unit-norm polynomial has modulus one.
struct ContactSet {
  std::vector<ContactPoint> points;  ///< increasing angle
  int mu = 0;                        ///< sum of the multiplicities

  /// mu / 2; exact in binary floating point.
  double gamma() const { return mu / 2.0; }
};

struct ContactOptions {
  /// Relative threshold deciding whether tau^{(s)} vanishes at a contact.
  double tol_contact = 1e-8;
  /// Candidates with tau below this count as contact points.
  double tau_tol = 1e-10;
  /// Distinct contact points closer than this are reported as indeterminate.
  double min_separation = 1e-6;
};

struct ContactAnalysis {
  enum class Status { Ok, Unimodular, Indeterminate };

  Status status = Status::Ok;
  ContactSet contacts;
  std::vector<std::string> diagnostics;
};

/// Locates the contact points of p and their multiplicities.
///
/// Throws lacunary::Error on "odd-order vanishing" (the first nonvanishing
/// derivative of tau has odd order) and "mu exceeds N". Returns Unimodular
/// when |p| is constant and Indeterminate when a derivative lands in the dead
/// band [0.1 tol_s, 10 tol_s] or two contacts nearly coincide.
ContactAnalysis analyze_contacts(const CirclePolynomial& p, int n_max,
                                 const ContactOptions& opts = {});

/// Same as analyze_contacts but throws unless the status is Ok.
ContactSet contact_set(const CirclePolynomial& p, int n_max, const ContactOptions& opts = {});

}  // namespace lacunary
