#ifndef ELOP_SPECTRAL_THEOREMS_HPP
#define ELOP_SPECTRAL_THEOREMS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "elementary_operator.hpp"
#include "random.hpp"

namespace elop {

// ---------------------------------------------------------------------------
// Joint spectrum of a commuting normal family

/// Simultaneous diagonalization U* A_j U = diag(vectors[0][j], ..., vectors[n-1][j]).
/// `vectors[p]` is the p-th joint eigenvalue vector, one entry per family member.
struct JointSpectrum {
  Index dim = 0;
  std::size_t terms = 0;
  std::vector<std::vector<cplx>> vectors;
  CMatrix unitary;
};

namespace detail {

inline bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
    if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
  }
  return false;
}

inline bool all_scalar_on(const std::vector<CMatrix>& family, const CMatrix& basis,
                          const std::vector<double>& norms, Tolerance tol) {
  const Index k = basis.cols();
  for (std::size_t j = 0; j < family.size(); ++j) {
    const CMatrix r = basis.adjoint() * family[j] * basis;
    const cplx mean = r.trace() / static_cast<double>(k);
    const CMatrix dev = r - mean * CMatrix::Identity(k, k);
    if (!tol.passes(dev.norm(), norms[j])) return false;
  }
  return true;
}

// Splits the invariant subspace spanned by the orthonormal columns of `basis`
// into joint eigenspaces. Each level diagonalizes a random Hermitian
// combination of the Hermitian and skew-Hermitian parts of the restricted
// family and recurses into clusters of (numerically) equal eigenvalues.
inline void split_joint(const std::vector<CMatrix>& family, const CMatrix& basis,
                        const std::vector<double>& norms, Tolerance tol, Rng& rng,
                        std::vector<CMatrix>& out, int depth) {
  const Index k = basis.cols();
  if (k == 1 || all_scalar_on(family, basis, norms, tol) || depth > 64) {
    out.push_back(basis);
    return;
  }
  for (int attempt = 0; attempt < 5; ++attempt) {
    CMatrix h = CMatrix::Zero(k, k);
    for (const auto& a : family) {
      const CMatrix r = basis.adjoint() * a * basis;
      const CMatrix re = 0.5 * (r + r.adjoint());
      const CMatrix im = cplx(0.0, -0.5) * (r - r.adjoint());
      h += rng.normal() * re + rng.normal() * im;
    }
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const RVector& w = es.eigenvalues();
    const double gap = 1e-8 * std::max(std::abs(w(0)), std::abs(w(k - 1))) + tol.abs;
    std::vector<std::pair<Index, Index>> clusters;
    Index start = 0;
    for (Index i = 1; i <= k; ++i) {
      if (i == k || w(i) - w(i - 1) > gap) {
        clusters.emplace_back(start, i - start);
        start = i;
      }
    }
    if (clusters.size() == 1) continue;  // no split; draw fresh coefficients
    for (const auto& [first, count] : clusters) {
      const CMatrix sub = basis * es.eigenvectors().middleCols(first, count);
      split_joint(family, sub, norms, tol, rng, out, depth + 1);
    }
    return;
  }
  out.push_back(basis);  // unsplittable within budget; caught by the residual check
}

} // namespace detail

/// Simultaneously diagonalizes a commuting family of normal matrices.
/// Joint eigenvalue vectors are ordered lexicographically by (Re, Im) of the
/// first member, then the second, ...
inline JointSpectrum joint_diagonalize(const std::vector<CMatrix>& family, Tolerance tol = {},
                                       std::uint64_t seed = default_seed) {
  if (family.empty()) throw DimensionError("joint_diagonalize: empty family");
  const Index n = family.front().rows();
  std::vector<double> norms;
  for (std::size_t j = 0; j < family.size(); ++j) {
    require_square(family[j], "joint_diagonalize");
    if (family[j].rows() != n)
      throw DimensionError("joint_diagonalize: member " + std::to_string(j) + " is " +
                           shape_str(family[j]) + ", expected " + std::to_string(n) + "x" +
                           std::to_string(n));
    require_finite(family[j], "joint_diagonalize");
    const auto nc = is_normal(family[j], tol);
    if (!nc)
      throw PreconditionError("joint_diagonalize: member " + std::to_string(j) +
                              " is not normal (||AA* - A*A|| = " + std::to_string(nc.residual) +
                              ")");
    norms.push_back(op_norm(family[j]));
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const auto cc = commute(family[i], family[j], tol);
      if (!cc)
        throw PreconditionError("joint_diagonalize: members " + std::to_string(i) + " and " +
                                std::to_string(j) + " do not commute (||AB - BA|| = " +
                                std::to_string(cc.residual) + ")");
    }

  JointSpectrum js;
  js.dim = n;
  js.terms = family.size();
  if (n == 0) {
    js.unitary = CMatrix(0, 0);
    return js;
  }
  const Tolerance accept = tol.scaled(10.0);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<CMatrix> blocks;
    detail::split_joint(family, CMatrix::Identity(n, n), norms, tol, rng, blocks, 0);
    CMatrix u(n, n);
    Index col = 0;
    for (const auto& b : blocks) {
      u.middleCols(col, b.cols()) = b;
      col += b.cols();
    }
    std::vector<std::vector<cplx>> vecs(static_cast<std::size_t>(n),
                                        std::vector<cplx>(family.size()));
    bool ok = true;
    for (std::size_t j = 0; j < family.size() && ok; ++j) {
      const CMatrix d = u.adjoint() * family[j] * u;
      for (Index p = 0; p < n; ++p) vecs[static_cast<std::size_t>(p)][j] = d(p, p);
      const CMatrix off = d - CMatrix(d.diagonal().asDiagonal());
      ok = accept.passes(op_norm(off), norms[j]);
    }
    if (!ok) continue;

    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return detail::lex_less(vecs[a], vecs[b]); });
    js.unitary.resize(n, n);
    js.vectors.clear();
    for (std::size_t p = 0; p < order.size(); ++p) {
      js.unitary.col(static_cast<Index>(p)) = u.col(static_cast<Index>(order[p]));
      js.vectors.push_back(vecs[order[p]]);
    }
    return js;
  }
  throw ConvergenceError("joint_diagonalize: residual above 10*tol after 5 randomized attempts");
}

// ---------------------------------------------------------------------------
// Spectral formulas

/// { lambda . mu } over all pairs of joint eigenvalue vectors, with the
/// bilinear (unconjugated) dot product.
inline SpectrumSet product_spectrum(const JointSpectrum& left, const JointSpectrum& right,
                                    Tolerance tol = {}) {
  if (left.terms != right.terms)
    throw DimensionError("product_spectrum: family sizes " + std::to_string(left.terms) +
                         " and " + std::to_string(right.terms) + " differ");
  SpectrumSet s;
  s.tol = tol;
  s.provenance = "formula";
  s.values.reserve(left.vectors.size() * right.vectors.size());
  for (const auto& lam : left.vectors)
    for (const auto& mu : right.vectors) {
      cplx dot = 0.0;
      for (std::size_t j = 0; j < lam.size(); ++j) dot += lam[j] * mu[j];
      s.values.push_back(dot);
    }
  return s;
}

/// Union over joint eigenvalues lambda of the left family of
/// eig(sum_j lambda_j B_j). Requires a commuting normal left family.
inline SpectrumSet fiber_spectrum(const ElementaryOperator& op, Tolerance tol = {},
                                  std::uint64_t seed = default_seed) {
  const auto& fam = op.family();
  const auto js = joint_diagonalize(fam.left(), tol, seed);
  SpectrumSet s;
  s.tol = tol;
  s.provenance = "formula";
  for (const auto& lam : js.vectors) {
    CMatrix fiber = CMatrix::Zero(fam.right_dim(), fam.right_dim());
    for (std::size_t j = 0; j < fam.size(); ++j) fiber += lam[j] * fam[j].b;
    const auto part = eig(fiber, tol);
    s.values.insert(s.values.end(), part.values.begin(), part.values.end());
  }
  return s;
}

// ---------------------------------------------------------------------------
// One-sided commutativity and positivity

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

struct LudersReport {
  bool hypotheses_met = false;
  SpectrumSet spectrum;
  double min_re = 0.0;
  double max_abs_im = 0.0;
  /// max(1, ||K||): the scale the spectrum checks are relative to.
  double scale = 1.0;
  Verdict verdict = Verdict::NotApplicable;
};

/// Evaluates the hypotheses (every A_j, B_j PSD; left family commuting) and,
/// when they hold, checks that the oracle spectrum lies in [0, inf).
inline LudersReport luders_check(const ElementaryOperator& op, Tolerance tol = {}) {
  LudersReport r;
  const auto& fam = op.family();
  bool ok = true;
  for (const auto& t : fam.terms()) {
    ok = ok && is_psd(t.a, tol).ok && is_psd(t.b, tol).ok;
    if (!ok) break;
  }
  for (std::size_t i = 0; ok && i < fam.size(); ++i)
    for (std::size_t j = i + 1; ok && j < fam.size(); ++j) ok = commute(fam[i].a, fam[j].a, tol).ok;
  r.hypotheses_met = ok;

  r.spectrum = spectrum(op, tol);
  r.min_re = r.spectrum.empty() ? 0.0 : r.spectrum.min_real();
  r.max_abs_im = r.spectrum.max_abs_imag();
  r.scale = std::max(1.0, op_norm(op.kron_matrix()));
  if (!ok) {
    r.verdict = Verdict::NotApplicable;
    return r;
  }
  const double bound = tol.bound(r.scale);
  r.verdict = (r.min_re >= -bound && r.max_abs_im <= bound) ? Verdict::Pass : Verdict::Fail;
  return r;
}

// ---------------------------------------------------------------------------
// Intertwining: Psi N = T Psi with N normal and Psi injective

struct IntertwinedInstance {
  CMatrix t;    ///< q x q
  CMatrix n;    ///< k x k, normal
  CMatrix psi;  ///< q x k, injective
  std::uint64_t seed = 0;
};

/// T = [[N, R], [0, M]], Psi = first k columns of the identity.
inline IntertwinedInstance make_intertwined_instance(const CMatrix& n, const CMatrix& r,
                                                     const CMatrix& m) {
  require_square(n, "make_intertwined_instance");
  require_square(m, "make_intertwined_instance");
  const Index k = n.rows(), rest = m.rows();
  if (r.rows() != k || r.cols() != rest)
    throw DimensionError("make_intertwined_instance: R is " + shape_str(r) + ", expected " +
                         std::to_string(k) + "x" + std::to_string(rest));
  IntertwinedInstance inst;
  const Index q = k + rest;
  inst.n = n;
  inst.t = CMatrix::Zero(q, q);
  inst.t.topLeftCorner(k, k) = n;
  inst.t.topRightCorner(k, rest) = r;
  inst.t.bottomRightCorner(rest, rest) = m;
  inst.psi = CMatrix::Identity(q, k);
  return inst;
}

/// Random instance: N = U diag(d) U* with Haar U and complex Gaussian d,
/// R and M complex Gaussian.
inline IntertwinedInstance make_intertwined_instance(Index k, Index q, std::uint64_t seed) {
  if (k < 1 || k > q)
    throw DimensionError("make_intertwined_instance: need 1 <= k <= q, got k=" +
                         std::to_string(k) + ", q=" + std::to_string(q));
  Rng rng(seed);
  const CMatrix u = random_unitary(rng, k);
  CVector d(k);
  for (Index i = 0; i < k; ++i) d(i) = rng.cnormal();
  const CMatrix n = conjugate_diagonal(u, d);
  const CMatrix r = gaussian_matrix(rng, k, q - k);
  const CMatrix m = gaussian_matrix(rng, q - k, q - k);
  auto inst = make_intertwined_instance(n, r, m);
  inst.seed = seed;
  return inst;
}

struct InclusionCheck {
  bool holds = false;
  /// sup over eig(N) of the distance to eig(T).
  double excess = 0.0;
  double intertwining_residual = 0.0;
  double psi_min_singular_value = 0.0;
  explicit operator bool() const { return holds; }
};

/// Every eigenvalue of N lies within tol of an eigenvalue of T. The
/// intertwining relation and injectivity of Psi are verified as part of the
/// check.
inline InclusionCheck check_inclusion(const IntertwinedInstance& inst, Tolerance tol = {}) {
  InclusionCheck c;
  c.intertwining_residual = op_norm(inst.psi * inst.n - inst.t * inst.psi);
  c.psi_min_singular_value = min_singular_value(inst.psi);
  const double scale = std::max(1.0, op_norm(inst.t));
  const auto sn = eig(inst.n, tol);
  const auto st = eig(inst.t, tol);
  c.excess = excess(sn.values, st.values);
  c.holds = tol.passes(c.intertwining_residual, scale) &&
            c.psi_min_singular_value > tol.abs && c.excess <= tol.bound(scale);
  return c;
}

// ---------------------------------------------------------------------------
// Eigenvalues through two independent assemblies

/// Matrix of Delta assembled column by column from Delta(E_ik) on matrix
/// units, E_ik sitting at column i + k m of the column-stacked basis.
inline CMatrix assemble_by_application(const ElementaryOperator& op) {
  const Index m = op.left_dim(), n = op.right_dim();
  CMatrix out(m * n, m * n);
  CMatrix unit = CMatrix::Zero(m, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < m; ++i) {
      unit(i, k) = 1.0;
      out.col(i + k * m) = vec(op.apply(unit));
      unit(i, k) = 0.0;
    }
  return out;
}

struct MembershipCheck {
  bool holds = false;
  double hausdorff = 0.0;
  explicit operator bool() const { return holds; }
};

inline MembershipCheck eigenvalue_membership(const ElementaryOperator& op, Tolerance tol = {},
                                             Index cap = default_kron_cap) {
  if (op.dim() > cap)
    throw CapacityError("eigenvalue_membership: size " + std::to_string(op.dim()) +
                        " exceeds cap " + std::to_string(cap));
  const auto by_apply = eig(assemble_by_application(op), tol);
  const auto by_kron = spectrum(op, tol, cap);
  MembershipCheck c;
  c.hausdorff = hausdorff(by_apply, by_kron);
  c.holds = c.hausdorff <= tol.bound(by_kron.scale());
  return c;
}

} // namespace elop

#endif // ELOP_SPECTRAL_THEOREMS_HPP
