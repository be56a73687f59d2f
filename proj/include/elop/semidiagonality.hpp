#ifndef ELOP_SEMIDIAGONALITY_HPP
#define ELOP_SEMIDIAGONALITY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "random.hpp"

namespace elop {

/// Coordinate projections P_r onto the first r basis vectors, r over a
/// strictly increasing list of ranks r_1 < ... < r_L <= N.
class ProjectionLadder {
public:
  ProjectionLadder(Index ambient, std::vector<Index> ranks)
      : ambient_(ambient), ranks_(std::move(ranks)) {
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
      if (ranks_[i] < 0 || ranks_[i] > ambient_)
        throw DimensionError("projection ladder: rank " + std::to_string(ranks_[i]) +
                             " outside [0, " + std::to_string(ambient_) + "]");
      if (i > 0 && ranks_[i] <= ranks_[i - 1])
        throw DimensionError("projection ladder: ranks must be strictly increasing");
    }
  }

  /// Every rank 1..N-1.
  static ProjectionLadder full(Index ambient) {
    std::vector<Index> r;
    for (Index i = 1; i < ambient; ++i) r.push_back(i);
    return ProjectionLadder(ambient, std::move(r));
  }

  Index ambient() const { return ambient_; }
  const std::vector<Index>& ranks() const { return ranks_; }

private:
  Index ambient_;
  std::vector<Index> ranks_;
};

inline CMatrix coordinate_projection(Index ambient, Index rank) {
  CMatrix p = CMatrix::Zero(ambient, ambient);
  for (Index i = 0; i < rank; ++i) p(i, i) = 1.0;
  return p;
}

namespace detail {
inline void check_budget_args(const std::vector<CMatrix>& family, Index rank) {
  for (const auto& a : family) {
    require_square(a, "commutator_hs_budget");
    if (a.rows() != family.front().rows())
      throw DimensionError("commutator_hs_budget: family members differ in size");
  }
  const Index n = family.empty() ? 0 : family.front().rows();
  if (rank < 0 || rank > n)
    throw DimensionError("commutator_hs_budget: rank " + std::to_string(rank) + " outside [0, " +
                         std::to_string(n) + "]");
}
} // namespace detail

/// sum_j ||A_j P - P A_j||_2^2 (Hilbert-Schmidt) for the rank-r coordinate
/// projection P.
inline double commutator_hs_budget(const std::vector<CMatrix>& family, Index rank) {
  detail::check_budget_args(family, rank);
  if (family.empty()) return 0.0;
  const CMatrix p = coordinate_projection(family.front().rows(), rank);
  double s = 0.0;
  for (const auto& a : family) s += (a * p - p * a).squaredNorm();
  return s;
}

/// Same quantity as commutator_hs_budget, summed over the entries that cross
/// the cut: exactly one of row and column index below r.
inline double crossing_entry_budget(const std::vector<CMatrix>& family, Index rank) {
  detail::check_budget_args(family, rank);
  double s = 0.0;
  for (const auto& a : family)
    s += a.topRightCorner(rank, a.cols() - rank).squaredNorm() +
         a.bottomLeftCorner(a.rows() - rank, rank).squaredNorm();
  return s;
}

struct ProfilePoint {
  Index rank = 0;
  double budget = 0.0;
};

struct SemidiagProfile {
  Index ambient = 0;
  std::vector<ProfilePoint> points;
  double max_budget = 0.0;
  Index argmax_rank = 0;
  /// Slope of log s_n against log(r_n (N - r_n)) over rungs with s_n > 0;
  /// NaN with fewer than two such rungs.
  double growth_exponent = std::numeric_limits<double>::quiet_NaN();
};

inline SemidiagProfile semidiag_profile(const std::vector<CMatrix>& family,
                                        const ProjectionLadder& ladder) {
  SemidiagProfile prof;
  prof.ambient = ladder.ambient();
  std::vector<double> xs, ys;
  for (Index r : ladder.ranks()) {
    const double s = commutator_hs_budget(family, r);
    prof.points.push_back({r, s});
    if (s > prof.max_budget || prof.points.size() == 1) {
      prof.max_budget = s;
      prof.argmax_rank = r;
    }
    const double cut = static_cast<double>(r) * static_cast<double>(ladder.ambient() - r);
    if (s > 0 && cut > 0) {
      xs.push_back(std::log(cut));
      ys.push_back(std::log(s));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    prof.growth_exponent = sxx > 0 ? sxy / sxx : 0.0;
  }
  return prof;
}

/// J random N x N matrices supported on |i - k| <= b, entries uniform on the
/// unit disk (so |entry| <= 1 and E|entry|^2 = 1/2).
inline std::vector<CMatrix> band_family(Index ambient, Index bandwidth, std::size_t terms,
                                        std::uint64_t seed) {
  if (bandwidth < 0 || (ambient > 0 && bandwidth >= ambient))
    throw DimensionError("band_family: need 0 <= b < N, got b=" + std::to_string(bandwidth) +
                         ", N=" + std::to_string(ambient));
  Rng rng(seed);
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms; ++j) {
    CMatrix a = CMatrix::Zero(ambient, ambient);
    for (Index k = 0; k < ambient; ++k)
      for (Index i = 0; i < ambient; ++i)
        if (std::abs(i - k) <= bandwidth) a(i, k) = rng.unit_disk();
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<CMatrix> dense_family(Index ambient, std::size_t terms, std::uint64_t seed) {
  return band_family(ambient, ambient > 0 ? ambient - 1 : 0, terms, seed);
}

/// J * b(b+1) * c^2 with c the largest entry modulus: the bound every rung of
/// a bandwidth-b family obeys.
inline double band_bound(const std::vector<CMatrix>& family, Index bandwidth) {
  double c = 0.0;
  for (const auto& a : family)
    if (a.size() > 0) c = std::max(c, a.cwiseAbs().maxCoeff());
  return static_cast<double>(family.size()) * static_cast<double>(bandwidth * (bandwidth + 1)) * c * c;
}

/// Shift with ones on the subdiagonal: e_i -> e_{i+1}.
inline CMatrix shift_matrix(Index n) {
  CMatrix s = CMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

} // namespace elop

#endif // ELOP_SEMIDIAGONALITY_HPP
