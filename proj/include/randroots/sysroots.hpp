#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "randroots/polyalg.hpp"

namespace randroots::sysroots {

using Point = std::vector<double>;

/// m equations in m unknowns.
class PolySystem {
 public:
  explicit PolySystem(std::vector<poly::MultiPoly> equations);

  int vars() const { return m_; }
  std::span<const poly::MultiPoly> equations() const { return equations_; }
  const poly::MultiPoly& operator[](std::size_t i) const { return equations_[i]; }
  std::vector<int> degrees() const;
  std::int64_t bezout() const;
  /// max_i |f_i(x)|.
  double residual(std::span<const double> x) const;

 private:
  int m_;
  std::vector<poly::MultiPoly> equations_;
};

struct SolutionSet {
  std::vector<Point> points;
  double residual_max = 0.0;
  std::int64_t bezout = 0;
  int dropped_candidates = 0;  // Newton runs that did not converge
};

/// Counting region for solutions: whole space, an axis box, or the simplex
/// {x_i >= 0, sum x_i <= 1}.
struct Region {
  enum class Kind { Full, Box, Simplex };
  Kind kind = Kind::Full;
  Point lo, hi;  // Box only

  static Region full() { return {}; }
  static Region box(Point lo, Point hi);
  static Region simplex() { return {Kind::Simplex, {}, {}}; }
  bool contains(std::span<const double> x) const;
  /// A box with some lo > hi holds nothing.
  bool empty() const;
};

/// Resultant elimination of y, isolation of the real x roots,
/// back-substitution into the y-slices, Newton polishing and deduplication.
/// Requires m = 2 and degrees <= 6. Errors: DegenerateResultant.
SolutionSet solve_bivariate(const PolySystem& sys);

/// Equations that each depend on one distinct variable, solved
/// coordinate-wise (any m). Throws InvalidArgument when not separable.
SolutionSet solve_separable(const PolySystem& sys);
bool is_separable(const PolySystem& sys);

/// m = 1 through realroots, separable systems coordinate-wise, m = 2
/// through solve_bivariate; m >= 3 non-separable is rejected.
SolutionSet solve_system(const PolySystem& sys);

int count_real_solutions(const PolySystem& sys, const Region& region = Region::full());

/// Resultant of f1, f2 with respect to y, as a polynomial in x of
/// structural degree d1 d2.
poly::MonomialPoly resultant_in_x(const poly::MultiPoly& f1, const poly::MultiPoly& f2);

/// (x_1^2 + ... + x_m^2)^(d/2) - r^d. Errors: OddDegree, InvalidArgument (r <= 0).
poly::MultiPoly signal_sphere(int d, double r, int m);

/// P_i(x) = T(x_i). Errors: NotFullySplit unless T has deg T distinct real roots.
PolySystem signal_product(const poly::MonomialPoly& t, int m);

struct FunctionalOptions {
  int min_grid_points = 10000;
  double max_radius = 1e3;
  int refine_steps = 80;
};

/// Grid-plus-refinement estimates of the sphere-normalized signal functionals.
struct SignalFunctionals {
  double h = 0.0;  // sup (1 + |x|) |grad g|
  double k = 0.0;  // sup (1 + |x|^2) |d g / d rho|
  std::vector<double> radii;
  std::vector<double> l;  // inf_{|x| >= r} g^2 for each radius
  int grid_points = 0;
  double radial_ratio = 0.0;  // spacing of the log-radial grid
};

/// g = P / (1 + |x|^2)^(d/2). Requires m <= 3.
SignalFunctionals functionals(const poly::MultiPoly& p, int d, std::span<const double> radii = {},
                              const FunctionalOptions& opts = {});
double signal_l(const poly::MultiPoly& p, int d, double r, const FunctionalOptions& opts = {});

struct HypothesisReport {
  double a_m = 0.0;  // (1/m) sum H^2(P_i) / i
  double b_m = 0.0;  // (1/m) sum K^2(P_i) / i
  std::vector<double> probe_radii;
  std::vector<double> min_l;  // min_i L(P_i, r) per probe radius
  bool h2 = false;            // min_l >= ell at every probe radius
};

/// Probe radii r0, 2 r0, 10 r0.
HypothesisReport hypothesis_check(std::span<const poly::MultiPoly> signals, std::span<const int> degrees,
                                  double r0, double ell, const FunctionalOptions& opts = {});

}  // namespace randroots::sysroots
