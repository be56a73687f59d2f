#ifndef ELOP_SPECTRUM_HPP
#define ELOP_SPECTRUM_HPP

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tolerance.hpp"

namespace elop {

using cplx = std::complex<double>;

/// Finite multiset of complex eigenvalues. `provenance` records how the
/// values were obtained ("oracle" for an eigensolve, "formula" for a
/// closed-form spectral formula).
struct SpectrumSet {
  std::vector<cplx> values;
  Tolerance tol;
  std::string provenance = "oracle";

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double max_abs_imag() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
  }
  double min_real() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values) m = std::min(m, v.real());
    return m;
  }

  /// Scale used for relative checks: max(1, max |value|).
  double scale() const { return std::max(1.0, max_abs()); }

  bool is_real() const { return max_abs_imag() <= tol.bound(scale()); }
  bool is_nonneg() const { return is_real() && (empty() || min_real() >= -tol.bound(scale())); }

  /// Values sorted by (Re, Im); the canonical order used for output.
  std::vector<cplx> sorted() const {
    auto out = values;
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
  }
};

/// Distance from `z` to the nearest point of `set` (+inf for an empty set).
inline double distance_to(const cplx& z, const std::vector<cplx>& set) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& w : set) d = std::min(d, std::abs(z - w));
  return d;
}

/// One-sided Hausdorff excess sup_{a in A} dist(a, B).
inline double excess(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (const auto& z : a) d = std::max(d, distance_to(z, b));
  return d;
}

/// Hausdorff distance between the underlying point sets.
inline double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(excess(a, b), excess(b, a));
}

inline double hausdorff(const SpectrumSet& a, const SpectrumSet& b) {
  return hausdorff(a.values, b.values);
}

/// Every point of `a` lies within `eps` of some point of `b`.
inline bool contained_in(const std::vector<cplx>& a, const std::vector<cplx>& b, double eps) {
  return excess(a, b) <= eps;
}

namespace detail {

// Kuhn's augmenting-path bipartite matching on the graph |a_i - b_j| <= eps.
inline bool perfect_matching_within(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                    double eps) {
  const std::size_t n = a.size();
  std::vector<int> match_b(n, -1);
  std::vector<char> seen(n);
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || std::abs(a[i] - b[j]) > eps) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || self(self, static_cast<std::size_t>(match_b[j]))) {
        match_b[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

} // namespace detail

/// Bottleneck distance between multisets: the smallest eps for which a
/// bijection a -> b moves no point further than eps. +inf when the sizes
/// differ. Quadratic memory in the set size; intended for sets of a few
/// hundred points.
inline double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  std::vector<double> cand;
  cand.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) cand.push_back(std::abs(x - y));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (detail::perfect_matching_within(a, b, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

inline double multiset_distance(const SpectrumSet& a, const SpectrumSet& b) {
  return multiset_distance(a.values, b.values);
}

} // namespace elop

#endif // ELOP_SPECTRUM_HPP
