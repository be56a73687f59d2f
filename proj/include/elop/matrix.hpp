#ifndef ELOP_MATRIX_HPP
#define ELOP_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "error.hpp"
#include "spectrum.hpp"
#include "tolerance.hpp"

namespace elop {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest row or column count a Kronecker realization may have.
inline constexpr Index default_kron_cap = 4096;

inline std::string shape_str(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) throw PreconditionError(std::string(what) + ": matrix has non-finite entries");
}

inline void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": expected a square matrix, got " + shape_str(m));
}

// ---------------------------------------------------------------------------
// Norms

/// Largest singular value.
inline double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  if (m.rows() <= 16 && m.cols() <= 16) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

/// Smallest singular value (min(rows, cols) of them).
inline double min_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// ---------------------------------------------------------------------------
// Kronecker product and column-stacking vectorization

/// (A (x) B)[i*rows(B)+k, j*cols(B)+l] = A[i,j] * B[k,l]  (0-based).
inline CMatrix kron(const CMatrix& a, const CMatrix& b, Index cap = default_kron_cap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap)
    throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds cap " + std::to_string(cap));
  CMatrix out(rows, cols);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Column-stacking: column 0 first, then column 1, ...
inline CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

inline CMatrix unvec(const CVector& v, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols)
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

// ---------------------------------------------------------------------------
// Eigensolvers

/// All eigenvalues of a square matrix, with multiplicity. `max_iter_per_row`
/// bounds the QR iterations of the complex Schur reduction.
inline SpectrumSet eig(const CMatrix& m, Tolerance tol = {}, Index max_iter_per_row = 30) {
  require_square(m, "eig");
  require_finite(m, "eig");
  SpectrumSet out;
  out.tol = tol;
  out.provenance = "oracle";
  if (m.rows() == 0) return out;
  if (m.rows() == 1) {
    out.values.push_back(m(0, 0));
    return out;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver;
  solver.setMaxIterations(max_iter_per_row * m.rows());
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eig: complex Schur iteration did not converge on " + shape_str(m) +
                           " matrix within " + std::to_string(max_iter_per_row * m.rows()) +
                           " iterations");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  return out;
}

/// Hermitian eigendecomposition: ascending real eigenvalues and a unitary
/// whose columns are the matching eigenvectors.
struct HermEig {
  RVector values;
  CMatrix vectors;
};

/// Residual ||M - M*|| (spectral norm).
inline double hermitian_residual(const CMatrix& m) {
  require_square(m, "hermitian_residual");
  return op_norm(m - m.adjoint());
}

inline HermEig herm_eig(const CMatrix& m, Tolerance tol = {}) {
  require_square(m, "herm_eig");
  require_finite(m, "herm_eig");
  const double scale = op_norm(m);
  const double res = hermitian_residual(m);
  if (!tol.passes(res, scale))
    throw PreconditionError("herm_eig: matrix is not Hermitian (||M - M*|| = " +
                            std::to_string(res) + ")");
  HermEig out;
  if (m.rows() == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("herm_eig: tridiagonal QR did not converge on " + shape_str(m));
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

// ---------------------------------------------------------------------------
// Structural predicates. Each reports the residual it was decided on.

struct Check {
  bool ok = false;
  double residual = 0.0;
  explicit operator bool() const { return ok; }
};

inline Check is_hermitian(const CMatrix& m, Tolerance tol = {}) {
  const double r = hermitian_residual(m);
  return {tol.passes(r, op_norm(m)), r};
}

inline Check is_normal(const CMatrix& m, Tolerance tol = {}) {
  require_square(m, "is_normal");
  const double r = op_norm(m * m.adjoint() - m.adjoint() * m);
  const double s = op_norm(m);
  return {tol.passes(r, s * s), r};
}

/// Hermitian within tol and min eigenvalue >= -(abs + rel ||M||). The residual
/// is max(0, -min eigenvalue), or the Hermitian residual when that check fails.
inline Check is_psd(const CMatrix& m, Tolerance tol = {}) {
  const auto herm = is_hermitian(m, tol);
  if (!herm) return {false, herm.residual};
  if (m.rows() == 0) return {true, 0.0};
  const double scale = op_norm(m);
  const auto he = herm_eig(m, tol);
  const double lo = he.values(0);
  return {lo >= -tol.bound(scale), std::max(0.0, -lo)};
}

inline Check commute(const CMatrix& a, const CMatrix& b, Tolerance tol = {}) {
  require_square(a, "commute");
  require_square(b, "commute");
  if (a.rows() != b.rows())
    throw DimensionError("commute: size mismatch " + shape_str(a) + " vs " + shape_str(b));
  const double r = op_norm(a * b - b * a);
  return {tol.passes(r, op_norm(a) * op_norm(b)), r};
}

} // namespace elop

#endif // ELOP_MATRIX_HPP
