#include "lacunary/spectrum.hpp"

#include <algorithm>

#include "lacunary/error.hpp"

namespace lacunary {

SpectrumSet SpectrumSet::finite(int n_max, std::vector<int> gaps) {
  if (n_max < 1) throw Error("finite spectrum needs N >= 1");
  std::sort(gaps.begin(), gaps.end());
  if (std::adjacent_find(gaps.begin(), gaps.end()) != gaps.end())
    throw Error("duplicate gap in spectrum");
  for (int k : gaps)
    if (k <= 0 || k >= n_max) throw Error("gap outside (0, N): " + std::to_string(k));
  if (n_max + 1 - static_cast<int>(gaps.size()) < 2) throw Error("spectrum has fewer than two members");
  return SpectrumSet(Kind::Finite, n_max, std::move(gaps));
}

SpectrumSet SpectrumSet::cofinite(std::vector<int> gaps) {
  std::sort(gaps.begin(), gaps.end());
  if (std::adjacent_find(gaps.begin(), gaps.end()) != gaps.end())
    throw Error("duplicate gap in spectrum");
  if (!gaps.empty() && gaps.front() < 0) throw Error("negative gap in cofinite spectrum");
  return SpectrumSet(Kind::Cofinite, -1, std::move(gaps));
}

int SpectrumSet::n_max() const {
  if (kind_ != Kind::Finite) throw Error("cofinite spectrum has no largest frequency");
  return n_max_;
}

bool SpectrumSet::contains(int k) const {
  if (k < 0) return false;
  if (kind_ == Kind::Finite && k > n_max_) return false;
  return !std::binary_search(gaps_.begin(), gaps_.end(), k);
}

std::vector<int> SpectrumSet::members() const {
  std::vector<int> out;
  for (int k = 0; k <= n_max(); ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

NormalizedSpectrum normalize_finite(const std::set<int>& raw_members) {
  if (raw_members.empty()) throw Error("empty spectrum");
  if (*raw_members.begin() < 0) throw Error("negative frequency in spectrum");
  const int shift = *raw_members.begin();
  if (raw_members.size() == 1) return {std::nullopt, shift};

  const int n = *raw_members.rbegin() - shift;
  std::vector<int> gaps;
  for (int k = 1; k < n; ++k)
    if (!raw_members.contains(k + shift)) gaps.push_back(k);
  return {SpectrumSet::finite(n, std::move(gaps)), shift};
}

std::vector<int> gap_list(const SpectrumSet& spectrum) { return spectrum.gaps(); }

}  // namespace lacunary
