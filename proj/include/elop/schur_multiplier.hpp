#ifndef ELOP_SCHUR_MULTIPLIER_HPP
#define ELOP_SCHUR_MULTIPLIER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "counterexample_search.hpp"
#include "elementary_operator.hpp"
#include "optimize.hpp"
#include "random.hpp"

namespace elop {

/// Symbol F of the Schur multiplier X -> F o X (entrywise product).
struct SchurSymbol {
  enum class Origin { FromFamily, Toeplitz, Explicit };
  CMatrix f;
  Origin origin = Origin::Explicit;
  /// Toeplitz only: g(-(N-1)), ..., g(N-1).
  std::vector<cplx> samples;

  Index rows() const { return f.rows(); }
  Index cols() const { return f.cols(); }
};

inline CMatrix schur_apply(const SchurSymbol& s, const CMatrix& x) {
  if (x.rows() != s.rows() || x.cols() != s.cols())
    throw DimensionError("schur_apply: X is " + shape_str(x) + ", symbol is " + shape_str(s.f));
  return s.f.cwiseProduct(x);
}

inline bool is_diagonal(const CMatrix& m, Tolerance tol) {
  CMatrix off = m;
  off.diagonal().setZero();
  return tol.passes(off.norm(), m.norm());
}

/// F[i,k] = sum_j A_j[i,i] B_j[k,k] for a family with diagonal coefficients;
/// Delta(X) = F o X.
inline SchurSymbol symbol_from_diagonal_family(const ElementaryOperator& op, Tolerance tol = {}) {
  const auto& fam = op.family();
  SchurSymbol s;
  s.origin = SchurSymbol::Origin::FromFamily;
  s.f = CMatrix::Zero(fam.left_dim(), fam.right_dim());
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const auto& t = fam[j];
    if (!is_diagonal(t.a, tol) || !is_diagonal(t.b, tol))
      throw PreconditionError("symbol_from_diagonal_family: term " + std::to_string(j) +
                              " has a non-diagonal coefficient");
    s.f.noalias() += t.a.diagonal() * t.b.diagonal().transpose();
  }
  return s;
}

/// Entry multiset of F: every matrix unit E_ik is an eigenvector with
/// eigenvalue F[i,k].
inline SpectrumSet schur_spectrum(const SchurSymbol& s, Tolerance tol = {}) {
  SpectrumSet out;
  out.tol = tol;
  out.provenance = "formula";
  out.values.reserve(static_cast<std::size_t>(s.f.size()));
  for (Index k = 0; k < s.cols(); ++k)
    for (Index i = 0; i < s.rows(); ++i) out.values.push_back(s.f(i, k));
  return out;
}

// ---------------------------------------------------------------------------
// Toeplitz symbols from point masses

/// Point mass c at frequency x; a finite atom list defines
/// g(t) = sum_m c_m exp(-i t x_m).
struct Atom {
  cplx c;
  double x = 0.0;
};

inline cplx trig_sum(const std::vector<Atom>& atoms, double t) {
  cplx s = 0.0;
  for (const auto& a : atoms) s += a.c * std::exp(cplx(0.0, -t * a.x));
  return s;
}

/// g at the integer offsets -(N-1), ..., N-1.
inline std::vector<cplx> sample_offsets(const std::vector<Atom>& atoms, Index n) {
  std::vector<cplx> out;
  for (Index t = -(n - 1); t <= n - 1; ++t) out.push_back(trig_sum(atoms, static_cast<double>(t)));
  return out;
}

/// F[i,k] = g(k - i) from samples of g at offsets -(N-1)..(N-1).
inline SchurSymbol toeplitz_symbol(const std::vector<cplx>& samples, Index n) {
  if (n < 1) throw DimensionError("toeplitz_symbol: N must be >= 1");
  const auto need = static_cast<std::size_t>(2 * n - 1);
  if (samples.size() < need)
    throw DimensionError("toeplitz_symbol: " + std::to_string(samples.size()) +
                         " samples cannot cover offsets -(N-1)..(N-1) for N=" + std::to_string(n));
  SchurSymbol s;
  s.origin = SchurSymbol::Origin::Toeplitz;
  s.samples.assign(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(need));
  s.f.resize(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) s.f(i, k) = s.samples[static_cast<std::size_t>(k - i + n - 1)];
  return s;
}

inline SchurSymbol toeplitz_symbol(const std::vector<Atom>& atoms, Index n) {
  return toeplitz_symbol(sample_offsets(atoms, n), n);
}

/// Entrywise reciprocal 1/F.
inline SchurSymbol reciprocal(const SchurSymbol& s) {
  const double floor = 1e-14 * std::max(1.0, s.f.cwiseAbs().maxCoeff());
  if (s.f.size() > 0 && s.f.cwiseAbs().minCoeff() <= floor)
    throw PreconditionError("reciprocal: symbol has a vanishing entry");
  SchurSymbol r = s;
  r.f = s.f.cwiseInverse();
  for (auto& v : r.samples) v = 1.0 / v;
  return r;
}

// ---------------------------------------------------------------------------
// Multiplier norm estimates
//
// Any exact factorization F[i,k] = <p_i, q_k> gives the upper bound
// max_i |p_i| max_k |q_k| on the multiplier norm, and the infimum over
// factorizations equals the norm. Fitting a factorization by alternating
// least squares fixes it only up to an invertible gauge G (P -> P G,
// Q -> Q G^{-*}), which the fit cannot see; the bound is therefore reduced
// by descending a smoothed version of it over G.
// TODO: an exact SDP solve would replace the gauge descent once a conic
// solver is linked.

struct SchurNormOptions {
  /// Factorization rank; 0 means min(m, n).
  Index rank = 0;
  /// ALS sweep cap, also the gauge-descent iteration budget per restart.
  int sweeps = 200;
  int restarts = 5;
  std::uint64_t seed = default_seed;
};

struct SchurUpperBound {
  /// +inf when no factorization reached the residual certificate.
  double value = std::numeric_limits<double>::infinity();
  bool certified = false;
  double factor_residual = std::numeric_limits<double>::infinity();
  CMatrix p;  ///< m x r, rows p_i (balanced)
  CMatrix q;  ///< n x r, rows q_k (balanced)
};

namespace detail {

// max |entry| of P Q* - F relative to max(1, max |F|)
inline double factor_residual(const CMatrix& p, const CMatrix& q, const CMatrix& f) {
  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  return (p * q.adjoint() - f).cwiseAbs().maxCoeff() / scale;
}

inline double bound_of(const CMatrix& p, const CMatrix& q) {
  return std::sqrt(p.rowwise().squaredNorm().maxCoeff() * q.rowwise().squaredNorm().maxCoeff());
}

// Smoothed log-bound L(G) = log ||a||_pw + log ||b||_pw with a_i = |(P0 G)_i|^2,
// b_k = |(Q0 G^{-*})_k|^2 and the power-mean smoothing ||.||_pw of the max.
struct GaugeObjective {
  const CMatrix& p0;
  const CMatrix& q0;
  double power;

  static double smooth_log_max(const RVector& v, RVector* weights, double pw) {
    const double vmax = v.maxCoeff();
    if (!(vmax > 0.0)) {
      if (weights) weights->setZero(v.size());
      return -std::numeric_limits<double>::infinity();
    }
    const RVector ratio = v / vmax;
    const RVector powered = ratio.array().pow(pw);
    const double sum = powered.sum();
    if (weights) *weights = (ratio.array().pow(pw - 1.0) / (vmax * sum)).matrix();
    return std::log(vmax) + std::log(sum) / pw;
  }

  double operator()(const Params& x, Params* grad) const {
    const Index r = p0.cols();
    const CMatrix g = unpack_factor(x, 0, r);
    Eigen::PartialPivLU<CMatrix> lu(g);
    const double det = std::abs(lu.determinant());
    if (!(det > 0.0) || !std::isfinite(det)) return std::numeric_limits<double>::infinity();
    const CMatrix h = lu.inverse().adjoint();  // G^{-*}
    const CMatrix p = p0 * g;
    const CMatrix q = q0 * h;
    const RVector a = p.rowwise().squaredNorm();
    const RVector b = q.rowwise().squaredNorm();
    RVector wa, wb;
    const double value = smooth_log_max(a, grad ? &wa : nullptr, power) +
                         smooth_log_max(b, grad ? &wb : nullptr, power);
    if (grad) {
      const CMatrix ga = 2.0 * p0.adjoint() * wa.cast<cplx>().asDiagonal() * p;
      const CMatrix gb = -2.0 * h * q.adjoint() * wb.cast<cplx>().asDiagonal() * q0 * h;
      grad->resize(x.size());
      pack_factor(ga + gb, *grad, 0);
    }
    return value;
  }
};

inline Index numerical_rank(const CMatrix& f) {
  if (f.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(f);
  const auto& s = svd.singularValues();
  const double cut = 1e-12 * s(0);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

// Rank-r fit F ~ P Q* by alternating least squares from a Gaussian start.
inline void als_fit(const CMatrix& f, Index r, int sweeps, Rng& rng, CMatrix& p, CMatrix& q) {
  p = gaussian_matrix(rng, f.rows(), r);
  CMatrix qh(r, f.cols());
  for (int s = 0; s < sweeps; ++s) {
    qh = p.colPivHouseholderQr().solve(f);
    p = qh.adjoint().colPivHouseholderQr().solve(f.adjoint()).adjoint();
    if (factor_residual(p, qh.adjoint(), f) <= 1e-13) break;
  }
  q = qh.adjoint();
  // one more right solve so that the pair is consistent with the last P
  q = p.colPivHouseholderQr().solve(f).adjoint();
}

// Lower the bound of the exact factorization (p0, q0) over the gauge group.
inline void gauge_descent(const CMatrix& f, CMatrix& p, CMatrix& q, int budget) {
  const Index r = p.cols();
  const CMatrix p0 = p, q0 = q;
  Params x(factor_param_count(r));
  pack_factor(CMatrix::Identity(r, r), x, 0);
  double best = bound_of(p, q);
  const double powers[] = {8.0, 32.0, 128.0, 512.0};
  const int per_stage = std::max(1, budget / 4);
  for (double pw : powers) {
    GaugeObjective obj{p0, q0, pw};
    DescentOptions opt;
    opt.max_iters = per_stage;
    opt.initial_step = 0.1;
    opt.target = -std::numeric_limits<double>::infinity();
    auto run = gradient_descent([&](const Params& v, Params& g) { return obj(v, &g); }, x, opt);
    x = run.x;
    const CMatrix g = unpack_factor(x, 0, r);
    Eigen::PartialPivLU<CMatrix> lu(g);
    const CMatrix cand_p = p0 * g;
    const CMatrix cand_q = q0 * lu.inverse().adjoint();
    const double b = bound_of(cand_p, cand_q);
    if (b < best && factor_residual(cand_p, cand_q, f) <= 1e-10) {
      best = b;
      p = cand_p;
      q = cand_q;
    }
  }
}

} // namespace detail

/// Certified upper bound on the Schur multiplier norm of F.
inline SchurUpperBound schur_norm_upper(const CMatrix& f, const SchurNormOptions& opt = {}) {
  if (opt.sweeps < 1 || opt.restarts < 1) throw ConfigError("schur_norm_upper: sweeps, restarts >= 1");
  SchurUpperBound out;
  if (f.size() == 0) {
    out.value = 0.0;
    out.certified = true;
    out.factor_residual = 0.0;
    return out;
  }
  const Index full = std::min(f.rows(), f.cols());
  const Index r = opt.rank > 0 ? opt.rank : full;
  if (r < 1) throw ConfigError("schur_norm_upper: rank must be >= 1");

  auto consider = [&](CMatrix p, CMatrix q) {
    if (detail::factor_residual(p, q, f) > 1e-10) return;
    detail::gauge_descent(f, p, q, opt.sweeps);
    const double res = detail::factor_residual(p, q, f);
    const double b = detail::bound_of(p, q);
    if (res <= 1e-10 && b < out.value) {
      out.value = b;
      out.certified = true;
      out.factor_residual = res;
      out.p = p;
      out.q = q;
    }
  };

  // Restart 0: truncated SVD at min(r, numerical rank), P = U S^1/2, Q = V S^1/2.
  {
    Eigen::BDCSVD<CMatrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index k = std::max<Index>(1, std::min(r, detail::numerical_rank(f)));
    const RVector root = svd.singularValues().head(k).cwiseSqrt();
    consider(svd.matrixU().leftCols(k) * root.cast<cplx>().asDiagonal(),
             svd.matrixV().leftCols(k) * root.cast<cplx>().asDiagonal());
  }
  for (int restart = 1; restart < opt.restarts; ++restart) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(restart)));
    CMatrix p, q;
    detail::als_fit(f, r, opt.sweeps, rng, p, q);
    consider(std::move(p), std::move(q));
  }
  if (!out.certified) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  // Balance: equal max row norms on both sides.
  const double mp = std::sqrt(out.p.rowwise().squaredNorm().maxCoeff());
  const double mq = std::sqrt(out.q.rowwise().squaredNorm().maxCoeff());
  if (mp > 0 && mq > 0) {
    const double c = std::sqrt(mq / mp);
    out.p *= c;
    out.q /= c;
  }
  out.value = detail::bound_of(out.p, out.q);
  return out;
}

inline SchurUpperBound schur_norm_upper(const SchurSymbol& s, const SchurNormOptions& opt = {}) {
  return schur_norm_upper(s.f, opt);
}

/// max(max |F[i,k]|, ||F o X|| / ||X|| over the all-ones X and `samples`
/// complex Gaussian X).
inline double schur_norm_lower(const CMatrix& f, int samples, std::uint64_t seed = default_seed) {
  if (f.size() == 0) return 0.0;
  double lo = f.cwiseAbs().maxCoeff();
  const CMatrix ones = CMatrix::Ones(f.rows(), f.cols());
  lo = std::max(lo, op_norm(f) / op_norm(ones));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CMatrix x = gaussian_matrix(rng, f.rows(), f.cols());
    const double nx = op_norm(x);
    if (nx > 0) lo = std::max(lo, op_norm(f.cwiseProduct(x)) / nx);
  }
  return lo;
}

inline double schur_norm_lower(const SchurSymbol& s, int samples, std::uint64_t seed = default_seed) {
  return schur_norm_lower(s.f, samples, seed);
}

// ---------------------------------------------------------------------------
// Reciprocal-norm growth probe

struct ProbeRow {
  Index n = 0;
  double inf_abs_f = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  /// Upper bounds of the reciprocal symbol are non-decreasing in N.
  bool monotone_growth = false;
};

inline ProbeReport wiener_pitt_probe(const std::vector<Atom>& atoms, const std::vector<Index>& sizes,
                                     const SchurNormOptions& opt = {}, int lower_samples = 20) {
  ProbeReport rep;
  for (Index n : sizes) {
    const auto sym = toeplitz_symbol(atoms, n);
    ProbeRow row;
    row.n = n;
    row.inf_abs_f = sym.f.cwiseAbs().minCoeff();
    if (!(row.inf_abs_f > 0.0))
      throw PreconditionError("wiener_pitt_probe: symbol vanishes at N=" + std::to_string(n) +
                              "; reciprocal undefined");
    const auto inv = reciprocal(sym);
    row.lower = schur_norm_lower(inv, lower_samples, derive_seed(opt.seed, static_cast<std::uint64_t>(n)));
    const auto up = schur_norm_upper(inv, opt);
    row.upper = up.value;
    row.certified = up.certified;
    rep.rows.push_back(row);
  }
  rep.monotone_growth = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].upper < rep.rows[i - 1].upper) rep.monotone_growth = false;
  return rep;
}

} // namespace elop

#endif // ELOP_SCHUR_MULTIPLIER_HPP
