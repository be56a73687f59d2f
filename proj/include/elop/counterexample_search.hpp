#ifndef ELOP_COUNTEREXAMPLE_SEARCH_HPP
#define ELOP_COUNTEREXAMPLE_SEARCH_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "elementary_operator.hpp"
#include "optimize.hpp"
#include "random.hpp"
#include "spectral_theorems.hpp"

namespace elop {

// ---------------------------------------------------------------------------
// Parametrization: complex d x d factors packed as reals. Each factor
// occupies 2 d^2 consecutive reals, real parts (column-major) then imaginary
// parts.

inline Index factor_param_count(Index d) { return 2 * d * d; }

inline CMatrix unpack_factor(const Params& p, Index offset, Index d) {
  CMatrix m(d, d);
  const Index nn = d * d;
  for (Index i = 0; i < nn; ++i) m.data()[i] = cplx(p(offset + i), p(offset + nn + i));
  return m;
}

inline void pack_factor(const CMatrix& m, Params& p, Index offset) {
  const Index nn = m.size();
  for (Index i = 0; i < nn; ++i) {
    p(offset + i) = m.data()[i].real();
    p(offset + nn + i) = m.data()[i].imag();
  }
}

/// Target lambda I = sum_j A_j B_j over PSD A_j = C_j C_j*, B_j = D_j D_j*.
struct FactorizationProblem {
  cplx lambda = 1.0;
  Index dim = 1;
  std::size_t terms = 1;

  Index param_count() const { return 2 * static_cast<Index>(terms) * factor_param_count(dim); }
  /// Parameters hold C_0, D_0, C_1, D_1, ...
  CMatrix c(const Params& p, std::size_t j) const {
    return unpack_factor(p, static_cast<Index>(2 * j) * factor_param_count(dim), dim);
  }
  CMatrix d(const Params& p, std::size_t j) const {
    return unpack_factor(p, static_cast<Index>(2 * j + 1) * factor_param_count(dim), dim);
  }
};

inline void validate(const FactorizationProblem& prob) {
  if (prob.dim < 1 || prob.terms < 1)
    throw ConfigError("factorization problem needs dim >= 1 and terms >= 1");
}

/// f = ||sum_j C_j C_j* D_j D_j* - lambda I||_F^2 and its gradient with
/// respect to the real and imaginary parts of every factor entry. With
/// R = sum_j A_j B_j - lambda I the complex gradients are
/// 2 (R B_j + B_j R*) C_j for C_j and 2 (A_j R + R* A_j) D_j for D_j.
inline double magajna_objective(const Params& p, const FactorizationProblem& prob, Params* grad) {
  const Index d = prob.dim;
  std::vector<CMatrix> c, dd, a, b;
  CMatrix r = -prob.lambda * CMatrix::Identity(d, d);
  for (std::size_t j = 0; j < prob.terms; ++j) {
    c.push_back(prob.c(p, j));
    dd.push_back(prob.d(p, j));
    a.push_back(c.back() * c.back().adjoint());
    b.push_back(dd.back() * dd.back().adjoint());
    r.noalias() += a.back() * b.back();
  }
  const double value = r.squaredNorm();
  if (grad) {
    grad->resize(prob.param_count());
    const CMatrix rh = r.adjoint();
    for (std::size_t j = 0; j < prob.terms; ++j) {
      const CMatrix gc = 2.0 * (r * b[j] + b[j] * rh) * c[j];
      const CMatrix gd = 2.0 * (a[j] * r + rh * a[j]) * dd[j];
      pack_factor(gc, *grad, static_cast<Index>(2 * j) * factor_param_count(d));
      pack_factor(gd, *grad, static_cast<Index>(2 * j + 1) * factor_param_count(d));
    }
  }
  return value;
}

// ---------------------------------------------------------------------------
// Search results

struct SearchConfig {
  int restarts = 10;
  /// Descent iterations (magajna) or objective evaluations (luders) per restart.
  int iters = 500;
  std::uint64_t seed = default_seed;
  double success_tol = 1e-8;
  double armijo = 1e-4;
};

inline void validate(const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw ConfigError("search: restarts must be >= 1");
  if (cfg.iters < 1) throw ConfigError("search: iters must be >= 1");
  if (!(cfg.success_tol > 0.0)) throw ConfigError("search: success_tol must be > 0");
  if (!(cfg.armijo > 0.0 && cfg.armijo < 1.0)) throw ConfigError("search: armijo must be in (0,1)");
}

struct Certificate {
  /// Minimum eigenvalue of every reported coefficient, A_0, B_0, A_1, B_1, ...
  std::vector<double> psd_mins;
  /// The objective re-evaluated through an independent assembly path.
  double residual_recheck = 0.0;
};

struct SearchResult {
  std::string kind;  ///< "magajna" or "luders"
  cplx lambda = 0.0;
  Index dim = 0;
  std::size_t terms = 0;
  Params best_params;
  std::vector<CMatrix> factors_c;
  std::vector<CMatrix> factors_d;
  std::vector<CMatrix> coeffs_a;
  std::vector<CMatrix> coeffs_b;
  /// magajna: ||sum A_j B_j - lambda I||_F. luders: max |Im eig K|.
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int restarts_used = 0;
  int best_restart = -1;
  bool success = false;
  std::vector<double> trace;  ///< objective trace of the best restart
  Certificate certificate;
  std::uint64_t seed = 0;
};

inline double min_eigenvalue(const CMatrix& h) {
  return herm_eig(h, Tolerance(1e-9, 1e-9)).values(0);
}

// ---------------------------------------------------------------------------
// Magajna-type factorization

/// Multi-start gradient descent for lambda I = sum_j A_j B_j over PSD
/// coefficients. Restart r starts from Gaussian factors drawn from
/// derive_seed(seed, r); the run with the smallest residual wins (ties by
/// restart index). Stops early once the residual is within success_tol.
inline SearchResult search_factorization(cplx lambda, Index dim, std::size_t terms,
                                         const SearchConfig& cfg) {
  validate(cfg);
  const FactorizationProblem prob{lambda, dim, terms};
  validate(prob);
  const double init_scale = std::pow(std::max(1.0, std::abs(lambda)), 0.25) /
                            std::sqrt(static_cast<double>(dim));

  SearchResult best;
  best.kind = "magajna";
  best.lambda = lambda;
  best.dim = dim;
  best.terms = terms;
  best.seed = cfg.seed;
  DescentOptions opt;
  opt.max_iters = cfg.iters;
  opt.armijo = cfg.armijo;
  opt.target = 0.25 * cfg.success_tol * cfg.success_tol;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    Params x0(prob.param_count());
    for (Index i = 0; i < x0.size(); ++i) x0(i) = init_scale * rng.normal() / std::numbers::sqrt2;
    auto run = gradient_descent(
        [&](const Params& x, Params& g) { return magajna_objective(x, prob, &g); }, x0, opt);
    ++best.restarts_used;
    const double res = std::sqrt(run.value);
    if (res < best.residual) {
      best.residual = res;
      best.best_params = run.x;
      best.iterations = run.iterations;
      best.best_restart = restart;
      best.trace = std::move(run.trace);
    }
    if (best.residual <= cfg.success_tol) break;
  }

  std::vector<Term> family;
  for (std::size_t j = 0; j < terms; ++j) {
    best.factors_c.push_back(prob.c(best.best_params, j));
    best.factors_d.push_back(prob.d(best.best_params, j));
    best.coeffs_a.push_back(best.factors_c.back() * best.factors_c.back().adjoint());
    best.coeffs_b.push_back(best.factors_d.back() * best.factors_d.back().adjoint());
    best.certificate.psd_mins.push_back(min_eigenvalue(best.coeffs_a.back()));
    best.certificate.psd_mins.push_back(min_eigenvalue(best.coeffs_b.back()));
    family.push_back({best.coeffs_a.back(), best.coeffs_b.back()});
  }
  // Recheck: Lambda(I) - lambda I through operator application.
  const ElementaryOperator op{CoefficientFamily(std::move(family))};
  best.certificate.residual_recheck =
      (op.apply(CMatrix::Identity(dim, dim)) - lambda * CMatrix::Identity(dim, dim)).norm();
  best.success = best.residual <= cfg.success_tol;
  return best;
}

// ---------------------------------------------------------------------------
// Formal positivity

struct WitnessReport {
  ElementaryOperator composed;  ///< formal_adjoint(Lambda) o Lambda
  double input_residual = 0.0;     ///< ||Lambda(I) - lambda I||
  double identity_residual = 0.0;  ///< ||Delta(I) - lambda^2 I||
  bool identity_ok = false;        ///< identity_residual within 10 tol
  SpectrumSet spectrum;
  double eigen_distance = 0.0;  ///< distance from lambda^2 to the spectrum
  bool lambda_sq_is_eigenvalue = false;
  bool c2_positive = false;
};

/// Forms Delta = formal_adjoint(Lambda) o Lambda for an operator with PSD
/// coefficients and Lambda(I) = lambda I, and reports Delta(I) = lambda^2 I,
/// whether lambda^2 is an eigenvalue of Delta, and C2-positivity of Delta.
inline WitnessReport formally_positive_witness(const ElementaryOperator& lambda_op, cplx lambda,
                                               Tolerance tol = {}) {
  const Index d = lambda_op.left_dim();
  if (lambda_op.right_dim() != d)
    throw DimensionError("formally_positive_witness: operator must act on square matrices");
  for (std::size_t j = 0; j < lambda_op.family().size(); ++j) {
    const auto& t = lambda_op.family()[j];
    if (!is_psd(t.a, tol) || !is_psd(t.b, tol))
      throw PreconditionError("formally_positive_witness: coefficient pair " + std::to_string(j) +
                              " is not PSD");
  }
  const CMatrix id = CMatrix::Identity(d, d);
  const double lam_scale = std::max(1.0, std::abs(lambda));
  const double input_residual = op_norm(lambda_op.apply(id) - lambda * id);
  if (!tol.passes(input_residual, lam_scale))
    throw PreconditionError("formally_positive_witness: ||Lambda(I) - lambda I|| = " +
                            std::to_string(input_residual) + " exceeds tolerance");

  WitnessReport rep{compose(formal_adjoint(lambda_op), lambda_op)};
  rep.input_residual = input_residual;
  const cplx lam2 = lambda * lambda;
  rep.identity_residual = op_norm(rep.composed.apply(id) - lam2 * id);
  rep.identity_ok = tol.scaled(10.0).passes(rep.identity_residual, lam_scale * lam_scale);
  rep.spectrum = spectrum(rep.composed, tol);
  rep.eigen_distance = distance_to(lam2, rep.spectrum.values);
  rep.lambda_sq_is_eigenvalue = rep.eigen_distance <= tol.bound(rep.spectrum.scale());
  rep.c2_positive = classify(rep.composed, tol).c2_positive;
  return rep;
}

// ---------------------------------------------------------------------------
// Lüders operators with non-real spectrum

/// A_j = C_j C_j* after normalizing sum_j ||C_j||_F^2 = 1.
inline std::vector<CMatrix> luders_coefficients(const Params& p, Index dim, std::size_t terms) {
  std::vector<CMatrix> cs;
  double mass = 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    cs.push_back(unpack_factor(p, static_cast<Index>(j) * factor_param_count(dim), dim));
    mass += cs.back().squaredNorm();
  }
  const double s = mass > 0 ? 1.0 / std::sqrt(mass) : 1.0;
  std::vector<CMatrix> out;
  for (auto& c : cs) {
    c *= s;
    out.push_back(c * c.adjoint());
  }
  return out;
}

/// g = max |Im eig(K)| for the Lüders operator with coefficients A_j.
inline double luders_imaginary_gap(const std::vector<CMatrix>& coeffs) {
  const ElementaryOperator op{CoefficientFamily::symmetric(coeffs)};
  return spectrum(op).max_abs_imag();
}

/// Derivative-free multi-start maximization of g over Lüders families.
/// `cfg.iters` is the objective-evaluation budget of each restart.
inline SearchResult luders_nonreal_search(Index dim, std::size_t terms, const SearchConfig& cfg) {
  validate(cfg);
  if (dim < 1 || terms < 1) throw ConfigError("luders search needs dim >= 1 and terms >= 1");
  const Index np = static_cast<Index>(terms) * factor_param_count(dim);
  SearchResult best;
  best.kind = "luders";
  best.dim = dim;
  best.terms = terms;
  best.seed = cfg.seed;
  best.residual = -1.0;

  NelderMeadOptions opt;
  opt.max_evals = cfg.iters;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    Params x0(np);
    for (Index i = 0; i < np; ++i) x0(i) = rng.normal();
    auto run = nelder_mead(
        [&](const Params& x) { return -luders_imaginary_gap(luders_coefficients(x, dim, terms)); },
        x0, opt);
    ++best.restarts_used;
    const double g = -run.value;
    if (g > best.residual) {
      best.residual = g;
      best.best_params = run.x;
      best.iterations = run.evaluations;
      best.best_restart = restart;
      best.trace = {g};
    }
  }

  best.coeffs_a = luders_coefficients(best.best_params, dim, terms);
  best.coeffs_b = best.coeffs_a;
  const double mass = [&] {
    double m = 0.0;
    for (std::size_t j = 0; j < terms; ++j)
      m += unpack_factor(best.best_params, static_cast<Index>(j) * factor_param_count(dim), dim)
               .squaredNorm();
    return m;
  }();
  for (std::size_t j = 0; j < terms; ++j) {
    CMatrix c = unpack_factor(best.best_params, static_cast<Index>(j) * factor_param_count(dim), dim);
    if (mass > 0) c /= std::sqrt(mass);
    best.factors_c.push_back(c);
    best.certificate.psd_mins.push_back(min_eigenvalue(best.coeffs_a[j]));
  }
  // Recheck from scratch through the application-assembled matrix.
  const ElementaryOperator op{CoefficientFamily::symmetric(best.coeffs_a)};
  best.certificate.residual_recheck = eig(assemble_by_application(op)).max_abs_imag();
  best.success = best.residual > cfg.success_tol;
  return best;
}

} // namespace elop

#endif // ELOP_COUNTEREXAMPLE_SEARCH_HPP
