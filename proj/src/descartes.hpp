#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "randroots/polyalg.hpp"

namespace randroots::realroots::detail {

/// Midpoint-radius enclosure of a coefficient vector: the true coefficient
/// k lies in [mid[k] - rad[k], mid[k] + rad[k]].
struct BallPoly {
  std::vector<double> mid;
  std::vector<double> rad;

  std::size_t size() const { return mid.size(); }
};

/// Bernstein coefficients on [0, 1] of a monomial polynomial whose
/// coefficients carry the given radii (may be empty for exact input).
BallPoly monomial_to_bernstein_ball(std::span<const double> coeffs, std::span<const double> radii = {});

/// Exact Bernstein input.
BallPoly exact_ball(std::span<const double> coeffs);

/// de Casteljau split at t; left covers [0, t], right covers [t, 1].
void split(const BallPoly& b, double t, BallPoly& left, BallPoly& right);

/// Sign-variation bounds over every coefficient vector inside the ball.
struct VariationBounds {
  int min = 0;
  int max = 0;
};
VariationBounds variation_bounds(const BallPoly& b);

struct UnitTask {
  double lo = 0.0;
  double hi = 1.0;
  bool include_lo = true;
  bool include_hi = true;
  /// Called when the enclosure of an endpoint value contains zero; returns
  /// true if the polynomial is exactly zero there (argument: false = lo).
  std::function<bool(bool)> exact_zero_at_end;
};

struct UnitRoots {
  std::vector<std::pair<double, double>> isolating;  // open, one root each
  std::vector<double> endpoint_roots;                 // exact roots at included endpoints
  std::size_t count() const { return isolating.size() + endpoint_roots.size(); }
};

/// Descartes-rule bisection on the Bernstein enclosure b of q over [0, 1],
/// restricted to [task.lo, task.hi]. Throws PrecisionExhausted when a sign
/// cannot be certified before the width drops below kMinWidth.
UnitRoots isolate_unit(const BallPoly& b, const UnitTask& task);

inline constexpr double kMinWidth = 1e-13;

}  // namespace randroots::realroots::detail
