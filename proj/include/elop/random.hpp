#ifndef ELOP_RANDOM_HPP
#define ELOP_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "matrix.hpp"

namespace elop {

/// Default seed of every reproducible run.
inline constexpr std::uint64_t default_seed = 0xE1E05ECull;

/// splitmix64 finalizer; derives independent per-instance streams from a
/// base seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(mix_seed(base) ^ (index * 0xD1B54A32D192ED03ull + 1));
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
  }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return uniform() < 0.5; }

  /// Standard complex Gaussian, E|z|^2 = 1.
  cplx cnormal() { return {normal() * std::numbers::sqrt2 / 2, normal() * std::numbers::sqrt2 / 2}; }

  /// Uniform on the closed unit disk, E|z|^2 = 1/2.
  cplx unit_disk() {
    const double r = std::sqrt(uniform());
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, t);
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Gaussian matrix; complex entries unless `real_only`.
inline CMatrix gaussian_matrix(Rng& rng, Index rows, Index cols, bool real_only = false) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = real_only ? cplx(rng.normal(), 0.0) : rng.cnormal();
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// R's diagonal folded into Q.
inline CMatrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

inline CMatrix random_hermitian(Rng& rng, Index n) {
  const CMatrix g = gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

/// C C* for a Gaussian C (n x n).
inline CMatrix random_psd(Rng& rng, Index n) {
  const CMatrix c = gaussian_matrix(rng, n, n);
  return c * c.adjoint();
}

/// U diag(d) U* with the given diagonal and a Haar unitary U.
inline CMatrix conjugate_diagonal(const CMatrix& u, const CVector& d) {
  return u * d.asDiagonal() * u.adjoint();
}

} // namespace elop

#endif // ELOP_RANDOM_HPP
