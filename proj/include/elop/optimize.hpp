#ifndef ELOP_OPTIMIZE_HPP
#define ELOP_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace elop {

using Params = Eigen::VectorXd;

struct DescentOptions {
  int max_iters = 500;
  /// Sufficient-decrease constant c in f(x - t g) <= f(x) - c t |g|^2.
  double armijo = 1e-4;
  double initial_step = 1.0;
  double min_step = 1e-30;
  /// Stop as soon as f <= target.
  double target = 0.0;
};

struct DescentRun {
  Params x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// Objective after every accepted step, starting with f(x0).
  std::vector<double> trace;
  bool stalled = false;
};

/// Gradient descent with backtracking: the trial step is halved until the
/// Armijo condition holds; after an accepted step the next trial doubles.
/// `fg(x, grad)` returns f(x) and writes the gradient into `grad`.
/// The recorded objective sequence is non-increasing.
template <class ValueAndGradient>
DescentRun gradient_descent(ValueAndGradient&& fg, Params x, const DescentOptions& opt) {
  DescentRun run;
  Params g(x.size()), g_new(x.size());
  double f = fg(x, g);
  run.trace.push_back(f);
  double step = opt.initial_step;
  while (run.iterations < opt.max_iters && f > opt.target) {
    const double gg = g.squaredNorm();
    if (!(gg > 0.0)) break;
    bool accepted = false;
    while (step >= opt.min_step) {
      const Params trial = x - step * g;
      const double f_trial = fg(trial, g_new);
      if (std::isfinite(f_trial) && f_trial <= f - opt.armijo * step * gg) {
        x = trial;
        f = f_trial;
        g.swap(g_new);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++run.iterations;
    if (!accepted) {
      run.stalled = true;
      break;
    }
    run.trace.push_back(f);
    step *= 2.0;
  }
  run.x = std::move(x);
  run.value = f;
  return run;
}

struct NelderMeadOptions {
  /// Objective evaluation budget.
  int max_evals = 2000;
  double initial_step = 0.25;
  /// A simplex whose vertices lie within this distance of the best vertex
  /// counts as collapsed and is rebuilt around the best point.
  double collapse_tol = 1e-10;
};

struct NelderMeadRun {
  Params x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int rebuilds = 0;
};

/// Nelder-Mead minimization (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) with restart on simplex collapse.
template <class Objective>
NelderMeadRun nelder_mead(Objective&& f, const Params& x0, const NelderMeadOptions& opt) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw ConfigError("nelder_mead: empty parameter vector");
  NelderMeadRun run;
  auto eval = [&](const Params& x) {
    ++run.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<Params> simplex;
  std::vector<double> values;
  auto build = [&](const Params& center) {
    simplex.assign(1, center);
    values.assign(1, eval(center));
    for (Eigen::Index i = 0; i < n; ++i) {
      Params v = center;
      v(i) += opt.initial_step * std::max(1.0, std::abs(center(i)));
      simplex.push_back(v);
      values.push_back(eval(v));
    }
  };
  build(x0);

  std::vector<std::size_t> order(simplex.size());
  while (run.evaluations < opt.max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).norm());
    if (diameter < opt.collapse_tol) {
      const Params center = simplex[best];
      ++run.rebuilds;
      build(center);
      continue;
    }

    Params centroid = Params::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Params reflected = centroid + (centroid - simplex[worst]);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Params expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Params contracted = outside ? Params(centroid + 0.5 * (reflected - centroid))
                                      : Params(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  run.x = simplex[static_cast<std::size_t>(it - values.begin())];
  run.value = *it;
  return run;
}

} // namespace elop

#endif // ELOP_OPTIMIZE_HPP
