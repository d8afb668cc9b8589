#pragma once

#include <limits>
#include <string>
#include <vector>

#include "randroots/polyalg.hpp"

namespace randroots::realroots {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed real interval; either end may be infinite. Requires lo < hi.
class Interval {
 public:
  Interval(double lo, double hi);
  static Interval line() { return Interval(-kInf, kInf); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  double width() const { return hi_ - lo_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

enum class Method { SturmExact, DescartesBisect, CompanionFiltered };
std::string to_string(Method m);

/// Which counting path to run. Auto takes the exact Sturm path when the
/// degree and the rational bit budget allow it, else Descartes bisection.
enum class Strategy { Auto, SturmExact, DescartesBisect };

struct RootCount {
  int count = 0;
  Interval region = Interval::line();
  Method method = Method::SturmExact;
};

inline constexpr int kMaxSturmDegree = 64;
/// Largest chain coefficient, in bits, the exact path accepts.
inline constexpr std::size_t kSturmBitBudget = 1u << 16;

/// Distinct real roots in the closed interval I (endpoint roots count).
/// Errors: ZeroPolynomial; PrecisionExhausted from the bisection path;
/// DegreeTooLarge when SturmExact is forced above kMaxSturmDegree.
RootCount count_roots_interval(const poly::MonomialPoly& p, const Interval& interval,
                               Strategy strategy = Strategy::Auto);

/// 1 + max_k |a_k| / |a_d| for k < d.
double cauchy_bound(const poly::MonomialPoly& p);

/// Distinct real roots on the whole line, counted on [-B, B] with B the
/// Cauchy bound rounded up to a power of two. Requires |a_d| > 1e-300
/// (DegreeDrop otherwise) unless p is a nonzero constant.
RootCount count_roots_line(const poly::MonomialPoly& p, Strategy strategy = Strategy::Auto);

/// Roots of a Bernstein-form polynomial in I, working on the Bernstein
/// coefficients directly. Outside [0, 1] the projective charts
/// x = 1/(1-s) and x = -s/(1-s) are used so any interval is reachable.
RootCount count_roots_bernstein(const poly::BernsteinPoly& p, const Interval& interval);

/// Eigenvalues of the companion matrix with |Im| < 1e-8 (1 + |Re|).
RootCount count_roots_companion(const poly::MonomialPoly& p);

/// Disjoint closed intervals, one per distinct real root, in increasing
/// order, refined to width <= 1e-10 max(1, |x|) where signs can be certified.
std::vector<Interval> isolate_roots(const poly::MonomialPoly& p, Strategy strategy = Strategy::Auto);

}  // namespace randroots::realroots
