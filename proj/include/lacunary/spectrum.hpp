#pragma once

#include <optional>
#include <set>
#include <vector>

namespace lacunary {

/// Admissible frequency set of a lacunary space.
///
/// Finite sets are stored in normal form {0,...,N} minus a sorted gap list
/// that excludes both 0 and N. Cofinite sets are the nonnegative integers
/// minus a finite gap list.
class SpectrumSet {
 public:
  enum class Kind { Finite, Cofinite };

  /// Throws lacunary::Error unless 0 < k < n_max for every gap and at least
  /// two frequencies remain.
  static SpectrumSet finite(int n_max, std::vector<int> gaps);
  static SpectrumSet cofinite(std::vector<int> gaps);
  /// {0, 1, ..., n}.
  static SpectrumSet full(int n) { return finite(n, {}); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Largest frequency N (finite sets only).
  int n_max() const;
  const std::vector<int>& gaps() const { return gaps_; }
  bool contains(int k) const;
  /// Member list in increasing order (finite sets only).
  std::vector<int> members() const;

  bool operator==(const SpectrumSet&) const = default;

 private:
  SpectrumSet(Kind kind, int n_max, std::vector<int> gaps)
      : kind_(kind), n_max_(n_max), gaps_(std::move(gaps)) {}

  Kind kind_;
  int n_max_;
  std::vector<int> gaps_;
};

struct NormalizedSpectrum {
  /// Empty when the input had a single member (monomial space).
  std::optional<SpectrumSet> spectrum;
  int shift = 0;

  bool monomial() const { return !spectrum.has_value(); }
};

/// Translates a raw finite frequency set so that its minimum becomes 0.
/// Multiplication by z^shift maps the normalized space isometrically onto
/// the original one.
NormalizedSpectrum normalize_finite(const std::set<int>& raw_members);

std::vector<int> gap_list(const SpectrumSet& spectrum);

}  // namespace lacunary
