#ifndef ELOP_TOLERANCE_HPP
#define ELOP_TOLERANCE_HPP

#include <cmath>

#include "error.hpp"

namespace elop {

/// Mixed absolute/relative tolerance. A quantity q passes against scale s
/// iff |q| <= abs + rel * s.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;

  constexpr Tolerance() = default;
  Tolerance(double a, double r) : abs(a), rel(r) {
    if (!(a >= 0.0) || !(r >= 0.0))
      throw ConfigError("tolerance components must be non-negative");
  }

  double bound(double scale) const { return abs + rel * scale; }
  bool passes(double q, double scale) const { return std::abs(q) <= bound(scale); }

  /// Same tolerance with both components multiplied by `factor`.
  Tolerance scaled(double factor) const { return Tolerance(abs * factor, rel * factor); }
};

inline constexpr Tolerance default_tolerance{};

} // namespace elop

#endif // ELOP_TOLERANCE_HPP
