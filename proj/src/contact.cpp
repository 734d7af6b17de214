#include "lacunary/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

std::string angle_str(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

}  // namespace

ContactAnalysis analyze_contacts(const CirclePolynomial& p, int n_max, const ContactOptions& opts) {
  if (p.is_zero()) throw Error("zero polynomial");
  ContactAnalysis out;
  const auto ac = autocorrelation(p);
  const int d = ac.degree();

  double off = 0.0;
  for (int k = 1; k <= d; ++k) off = std::max(off, std::abs(ac[k]));
  if (off <= 1e-12 * ac[0].real()) {
    out.status = ContactAnalysis::Status::Unimodular;
    out.diagnostics.push_back("unimodular modulus");
    return out;
  }

  struct Found {
    double t;
    int order;
  };
  std::vector<Found> found;
  for (double t : critical_points(ac)) {
    if (ac.tau(t) >= opts.tau_tol) continue;
    int order = 0;
    for (int s = 1; s <= 2 * d + 2; ++s) {
      const double tol = opts.tol_contact * ac.derivative_scale(s);
      const double v = std::abs(tau_derivative(ac, t, s));
      if (v >= 0.1 * tol && v <= 10.0 * tol) {
        out.status = ContactAnalysis::Status::Indeterminate;
        out.diagnostics.push_back("derivative of order " + std::to_string(s) +
                                  " in dead band at t=" + angle_str(t));
      }
      if (v > tol) {
        order = s;
        break;
      }
    }
    if (order == 0) {
      out.status = ContactAnalysis::Status::Indeterminate;
      out.diagnostics.push_back("no nonvanishing derivative at t=" + angle_str(t));
      continue;
    }
    found.push_back({wrap_angle(t), order});
  }
  if (out.status == ContactAnalysis::Status::Indeterminate) return out;

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.t < b.t; });
  std::vector<Found> uniq;
  auto same_point = [&](double gap) {
    if (gap < 1e-9) return true;
    if (gap < opts.min_separation) {
      out.status = ContactAnalysis::Status::Indeterminate;
      out.diagnostics.push_back("contact points separated by only " + angle_str(gap));
    }
    return false;
  };
  for (const auto& f : found) {
    if (!uniq.empty() && same_point(f.t - uniq.back().t)) {
      if (f.order != uniq.back().order) {
        out.status = ContactAnalysis::Status::Indeterminate;
        out.diagnostics.push_back("inconsistent vanishing order near t=" + angle_str(f.t));
      }
      continue;
    }
    uniq.push_back(f);
  }
  if (uniq.size() > 1 && same_point(uniq.front().t + 2.0 * std::numbers::pi - uniq.back().t)) {
    uniq.erase(uniq.begin());
  }
  if (uniq.empty()) {
    out.status = ContactAnalysis::Status::Indeterminate;
    out.diagnostics.push_back("no contact point found");
  }
  if (out.status == ContactAnalysis::Status::Indeterminate) return out;

  for (const auto& f : uniq) {
    if (f.order % 2 != 0)
      throw Error("odd-order vanishing: order " + std::to_string(f.order) + " at t=" + angle_str(f.t));
    out.contacts.points.push_back({f.t, f.order / 2});
    out.contacts.mu += f.order / 2;
  }
  if (out.contacts.mu > n_max)
    throw Error("mu exceeds N: mu=" + std::to_string(out.contacts.mu) + ", N=" + std::to_string(n_max));
  return out;
}

ContactSet contact_set(const CirclePolynomial& p, int n_max, const ContactOptions& opts) {
  auto a = analyze_contacts(p, n_max, opts);
  if (a.status == ContactAnalysis::Status::Unimodular) throw Error("unimodular modulus");
  if (a.status == ContactAnalysis::Status::Indeterminate) {
    std::string msg = "indeterminate contact set";
    for (const auto& d : a.diagnostics) msg += "; " + d;
    throw Error(msg);
  }
  return a.contacts;
}

}  // namespace lacunary
