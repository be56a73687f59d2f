#ifndef ELOP_ACCEPTANCE_HPP
#define ELOP_ACCEPTANCE_HPP

// Library-level acceptance criteria 1-10, shared by `elop selftest` and the
// acceptance test binary. Criteria 11 and 12 drive the CLI and live with the
// acceptance binary.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "counterexample_search.hpp"
#include "schur_multiplier.hpp"
#include "semidiagonality.hpp"
#include "verification.hpp"

namespace elop::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  ///< 0: no runtime limit
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

inline CriterionResult timed(int id, std::string name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CriterionResult r{id, std::move(name), o.pass, std::move(o.detail), sec, limit};
  if (limit > 0 && sec >= limit) {
    r.pass = false;
    r.detail += fmt("; runtime %.2fs over the %.0fs limit", sec, limit);
  }
  return r;
}

// 200 families, m,n <= 6, J <= 4, half real and half complex.
inline std::vector<ElementaryOperator> random_families(std::uint64_t seed) {
  std::vector<ElementaryOperator> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(derive_seed(seed, i));
    const Index m = rng.uniform_int(1, 6), n = rng.uniform_int(1, 6);
    const int terms = rng.uniform_int(1, 4);
    const bool real_only = i % 2 == 0;
    std::vector<Term> t;
    for (int j = 0; j < terms; ++j) {
      CMatrix a = gaussian_matrix(rng, m, m, real_only);
      CMatrix b = gaussian_matrix(rng, n, n, real_only);
      t.push_back({std::move(a), std::move(b)});
    }
    out.emplace_back(CoefficientFamily(std::move(t)));
  }
  return out;
}

inline Outcome harness(Theorem th, std::uint64_t seed, bool need_agreement = false) {
  const auto rep = verify(th, 100, seed);
  std::size_t disagree = 0;
  double worst_agreement = 0.0;
  if (need_agreement)
    for (const auto& r : rep.records)
      if (r.formula_agreement >= 0) {
        worst_agreement = std::max(worst_agreement, r.formula_agreement);
        if (r.formula_agreement > 1e-8) ++disagree;
      }
  Outcome o;
  o.pass = rep.all_pass() && disagree == 0;
  o.detail = fmt("100 instances, %.0f failures, max d_H/scale %.3g", static_cast<double>(rep.failures()),
                 rep.max_metric());
  if (need_agreement) o.detail += fmt(", fiber vs product max %.3g", worst_agreement);
  return o;
}

} // namespace detail

inline CriterionResult criterion_kronecker(std::uint64_t seed) {
  return detail::timed(1, "Kronecker realization", 2.0, [&] {
    double worst = 0.0;
    const auto ops = detail::random_families(seed);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& op = ops[i];
      Rng rng(derive_seed(seed, 500 + i));
      const CMatrix& k = op.kron_matrix();
      for (int s = 0; s < 5; ++s) {
        const CMatrix x = gaussian_matrix(rng, op.left_dim(), op.right_dim());
        const double err = (vec(op.apply(x)) - k * vec(x)).norm();
        worst = std::max(worst, err / (op.family().norm_product_sum() * x.norm()));
      }
    }
    return detail::Outcome{worst <= 1e-12, detail::fmt("200 families x 5 X, max relative error %.3g", worst)};
  });
}

inline CriterionResult criterion_adjoint(std::uint64_t seed) {
  return detail::timed(2, "Adjoint identity", 0.0, [&] {
    std::size_t mismatches = 0;
    for (const auto& op : detail::random_families(seed))
      if (formal_adjoint(op).kron_matrix() != CMatrix(op.kron_matrix().adjoint())) ++mismatches;
    return detail::Outcome{mismatches == 0,
                           detail::fmt("200 families, %.0f entrywise mismatches", static_cast<double>(mismatches))};
  });
}

inline CriterionResult criterion_comnor(std::uint64_t seed) {
  return detail::timed(3, "Commuting normal product spectrum", 5.0,
                       [&] { return detail::harness(Theorem::ComNor, seed); });
}

inline CriterionResult criterion_tens(std::uint64_t seed) {
  return detail::timed(4, "Fiber spectrum", 0.0, [&] { return detail::harness(Theorem::Tens, seed, true); });
}

inline CriterionResult criterion_luders(std::uint64_t seed) {
  return detail::timed(5, "Lueders spectrum in [0, inf)", 0.0,
                       [&] { return detail::harness(Theorem::Luders, seed); });
}

inline CriterionResult criterion_intertwine(std::uint64_t seed) {
  return detail::timed(6, "Intertwined spectrum inclusion", 0.0,
                       [&] { return detail::harness(Theorem::Intertwine, seed); });
}

inline CriterionResult criterion_semidiag(std::uint64_t seed) {
  return detail::timed(7, "Semidiagonality diagnostics", 0.0, [&] {
    double shift_err = 0.0;
    const auto shift = semidiag_profile({shift_matrix(16)}, ProjectionLadder::full(16));
    for (const auto& pt : shift.points) shift_err = std::max(shift_err, std::abs(pt.budget - 1.0));

    bool ones_exact = true;
    const auto ones = semidiag_profile({CMatrix::Ones(16, 16)}, ProjectionLadder::full(16));
    for (const auto& pt : ones.points)
      if (pt.budget != 2.0 * static_cast<double>(pt.rank * (16 - pt.rank))) ones_exact = false;

    double worst_ratio = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto fam = band_family(32, 1, 3, derive_seed(seed, s));
      double c = 0.0;
      for (const auto& a : fam) c = std::max(c, a.cwiseAbs().maxCoeff());
      const auto prof = semidiag_profile(fam, ProjectionLadder::full(32));
      worst_ratio = std::max(worst_ratio, prof.max_budget / (6.0 * c * c));
    }
    return detail::Outcome{shift_err <= 1e-12 && ones_exact && worst_ratio <= 1.0,
                           detail::fmt("shift max error %.3g, all-ones exact %.0f, tridiagonal max s/(6c^2) %.4f",
                                       shift_err, ones_exact ? 1.0 : 0.0, worst_ratio)};
  });
}

struct OptimizerEvidence {
  CriterionResult result;
  SearchResult witness;  ///< the lambda = 4 run, reused by criterion 9
};

inline OptimizerEvidence criterion_optimizer(std::uint64_t seed) {
  OptimizerEvidence ev;
  ev.result = detail::timed(8, "Optimizer soundness", 10.0, [&] {
    Rng rng(derive_seed(seed, 8));
    double worst_fd = 0.0;
    for (int k = 0; k < 50; ++k) {
      const FactorizationProblem prob{cplx(rng.normal(), rng.normal()), rng.uniform_int(1, 3),
                                      static_cast<std::size_t>(rng.uniform_int(1, 3))};
      Params x(prob.param_count());
      for (Index i = 0; i < x.size(); ++i) x(i) = 0.5 * rng.normal();
      Params v(x.size());
      for (Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
      v.normalize();
      Params g;
      magajna_objective(x, prob, &g);
      const double h = 1e-6;
      const double fd = (magajna_objective(x + h * v, prob, nullptr) - magajna_objective(x - h * v, prob, nullptr)) / (2 * h);
      const double an = g.dot(v);
      worst_fd = std::max(worst_fd, std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-12}));
    }

    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = 10;
    cfg.iters = 500;
    ev.witness = search_factorization(4.0, 3, 1, cfg);
    bool monotone = true;
    for (std::size_t i = 1; i < ev.witness.trace.size(); ++i)
      if (ev.witness.trace[i] > ev.witness.trace[i - 1]) monotone = false;
    // runs that cannot converge must be monotone too
    const FactorizationProblem neg{-1.0, 2, 2};
    for (int r = 0; r < 3; ++r) {
      Rng r0(derive_seed(seed, static_cast<std::uint64_t>(r) + 100));
      Params x0(neg.param_count());
      for (Index i = 0; i < x0.size(); ++i) x0(i) = r0.normal();
      DescentOptions opt;
      opt.max_iters = 100;
      const auto run = gradient_descent(
          [&](const Params& x, Params& g) { return magajna_objective(x, neg, &g); }, x0, opt);
      for (std::size_t i = 1; i < run.trace.size(); ++i)
        if (run.trace[i] > run.trace[i - 1]) monotone = false;
    }
    return detail::Outcome{worst_fd <= 1e-5 && monotone && ev.witness.residual <= 1e-6,
                           detail::fmt("gradient max relative error %.3g over 50 directions, monotone %.0f, "
                                       "lambda=4 residual %.3g",
                                       worst_fd, monotone ? 1.0 : 0.0, ev.witness.residual)};
  });
  return ev;
}

inline CriterionResult criterion_witness(const SearchResult& found) {
  return detail::timed(9, "Formal positivity construction", 0.0, [&] {
    std::vector<Term> t;
    for (std::size_t j = 0; j < found.terms; ++j) t.push_back({found.coeffs_a[j], found.coeffs_b[j]});
    const ElementaryOperator lam{CoefficientFamily(std::move(t))};
    const CMatrix id = CMatrix::Identity(found.dim, found.dim);
    const double input = op_norm(lam.apply(id) - found.lambda * id);
    if (input > 1e-8)
      return detail::Outcome{false, detail::fmt("hypothesis not met: ||Lambda(I) - lambda I|| = %.3g", input)};
    const auto rep = formally_positive_witness(lam, found.lambda, Tolerance(1e-8, 0.0));
    return detail::Outcome{rep.identity_residual <= 1e-6 && rep.eigen_distance <= 1e-6,
                           detail::fmt("||Lambda(I)-4I|| %.3g, ||Delta(I)-16I|| %.3g, dist(16, spec) %.3g", input,
                                       rep.identity_residual, rep.eigen_distance)};
  });
}

inline CriterionResult criterion_schur(std::uint64_t seed) {
  return detail::timed(10, "Schur multipliers", 0.0, [&] {
    double spec = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      Rng rng(derive_seed(seed, 1000 + i));
      const Index m = rng.uniform_int(1, 5), n = rng.uniform_int(1, 5);
      std::vector<Term> t;
      for (int j = rng.uniform_int(1, 3); j > 0; --j) {
        CVector a(m), b(n);
        for (Index k = 0; k < m; ++k) a(k) = rng.cnormal();
        for (Index k = 0; k < n; ++k) b(k) = rng.cnormal();
        t.push_back({a.asDiagonal(), b.asDiagonal()});
      }
      const ElementaryOperator op{CoefficientFamily(std::move(t))};
      spec = std::max(spec, multiset_distance(schur_spectrum(symbol_from_diagonal_family(op)).values,
                                              spectrum(op).values));
    }

    double rank_one = 0.0;
    for (std::uint64_t i = 0; i < 10; ++i) {
      Rng rng(derive_seed(seed, 2000 + i));
      const CVector u = gaussian_matrix(rng, rng.uniform_int(1, 6), 1);
      const CVector v = gaussian_matrix(rng, rng.uniform_int(1, 6), 1);
      const double exact = u.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff();
      const CMatrix f = u * v.adjoint();
      SchurNormOptions opt;
      opt.seed = derive_seed(seed, 2100 + i);
      const double up = schur_norm_upper(f, opt).value;
      const double lo = schur_norm_lower(f, 5, opt.seed);
      rank_one = std::max({rank_one, std::abs(up - exact), std::abs(lo - exact)});
    }

    double gap = -1e300;
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng(derive_seed(seed, 3000 + i));
      const CMatrix f = gaussian_matrix(rng, rng.uniform_int(1, 5), rng.uniform_int(1, 5));
      SchurNormOptions opt;
      opt.seed = derive_seed(seed, 3100 + i);
      opt.restarts = 2;
      gap = std::max(gap, schur_norm_lower(f, 5, opt.seed) - schur_norm_upper(f, opt).value);
    }
    return detail::Outcome{spec <= 1e-10 && rank_one <= 1e-6 && gap <= 1e-9,
                           detail::fmt("entry-multiset distance %.3g, rank-one bound error %.3g, "
                                       "max(lower - upper) %.3g",
                                       spec, rank_one, gap)};
  });
}

/// Criteria 1-10 in order.
inline std::vector<CriterionResult> run_library_criteria(std::uint64_t seed = default_seed) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_kronecker(seed));
  out.push_back(criterion_adjoint(seed));
  out.push_back(criterion_comnor(seed));
  out.push_back(criterion_tens(seed));
  out.push_back(criterion_luders(seed));
  out.push_back(criterion_intertwine(seed));
  out.push_back(criterion_semidiag(seed));
  auto opt = criterion_optimizer(seed);
  out.push_back(opt.result);
  out.push_back(criterion_witness(opt.witness));
  out.push_back(criterion_schur(seed));
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%s] %2d ", r.pass ? "PASS" : "FAIL", r.id);
  std::string line = buf + r.name + ": " + r.detail;
  std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
  return line + buf;
}

} // namespace elop::acceptance

#endif // ELOP_ACCEPTANCE_HPP
