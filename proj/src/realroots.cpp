#include "randroots/realroots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "descartes.hpp"
#include "randroots/error.hpp"
#include "sturm.hpp"

namespace randroots::realroots {

using detail::ExactPoint;
using detail::SturmChain;

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

void require_nonzero(const poly::MonomialPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "polynomial vanishes identically");
}

// Smallest power of two >= x (x > 0 finite).
double pow2_ceil(double x) {
  int e;
  const double f = std::frexp(x, &e);
  return f == 0.5 ? x : std::ldexp(1.0, e);
}

// One of four charts covering the line with t in [0, 1]:
// 0: x = t, 1: x = -t, 2: x = 1/t, 3: x = -1/t.
struct ChartPiece {
  int chart;
  double t_lo, t_hi;
  bool inc_lo, inc_hi;
};

double chart_to_x(int chart, double t) {
  switch (chart) {
    case 0: return t;
    case 1: return -t;
    case 2: return t == 0.0 ? kInf : 1.0 / t;
    default: return t == 0.0 ? -kInf : -1.0 / t;
  }
}

bool chart_exact(int chart, double t, double x) {
  if (chart <= 1) return true;
  if (std::isinf(x) || t == 0.0) return false;
  const mpq_class prod = mpq_class(t) * mpq_class(x);
  return prod == (chart == 2 ? 1 : -1);
}

std::vector<ChartPiece> monomial_pieces(double a, double b) {
  std::vector<ChartPiece> out;
  auto add = [&](int chart, double lo, bool ilo, double hi, bool ihi) {
    if (lo < hi || (lo == hi && ilo && ihi)) out.push_back({chart, lo, hi, ilo, ihi});
  };
  // x in [0, 1]
  add(0, std::max(a, 0.0), true, std::min(b, 1.0), true);
  // x in [-1, 0): t = -x in (0, 1]
  if (a < 0.0) {
    const double lo = b >= 0.0 ? 0.0 : -b;
    add(1, lo, b < 0.0, std::min(-a, 1.0), true);
  }
  // x in (1, inf): t = 1/x in (0, 1)
  if (b > 1.0) {
    const double lo = std::isinf(b) ? 0.0 : 1.0 / b;
    const double hi = a <= 1.0 ? 1.0 : 1.0 / a;
    add(2, lo, !std::isinf(b), hi, a > 1.0);
  }
  // x in (-inf, -1): t = -1/x in (0, 1)
  if (a < -1.0) {
    const double lo = std::isinf(a) ? 0.0 : -1.0 / a;
    const double hi = b >= -1.0 ? 1.0 : -1.0 / b;
    add(3, lo, !std::isinf(a), hi, b < -1.0);
  }
  return out;
}

std::vector<double> chart_coeffs(const poly::MonomialPoly& p, int chart) {
  const int d = p.degree();
  std::vector<double> q(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    const double odd_k = (k % 2) ? -1.0 : 1.0;
    const double odd_dk = ((d - k) % 2) ? -1.0 : 1.0;
    switch (chart) {
      case 0: q[static_cast<std::size_t>(k)] = p[k]; break;
      case 1: q[static_cast<std::size_t>(k)] = odd_k * p[k]; break;
      case 2: q[static_cast<std::size_t>(k)] = p[d - k]; break;
      default: q[static_cast<std::size_t>(k)] = odd_dk * p[d - k]; break;
    }
  }
  return q;
}

struct XRoot {
  double lo, hi;  // isolating x-interval; lo == hi for an exact root
};

// Descartes path: isolating x-intervals in the closed interval [a, b].
std::vector<XRoot> descartes_roots(const poly::MonomialPoly& p, double a, double b) {
  const auto exact = detail::exact_integer_coeffs(p);
  auto exact_zero = [&](double x) {
    return !std::isinf(x) && detail::exact_sign(exact, mpq_class(x)) == 0;
  };
  std::vector<XRoot> roots;
  for (const ChartPiece& piece : monomial_pieces(a, b)) {
    if (piece.t_lo == piece.t_hi) {
      const double x = chart_to_x(piece.chart, piece.t_lo);
      if (exact_zero(x)) roots.push_back({x, x});
      continue;
    }
    const auto q = chart_coeffs(p, piece.chart);
    const auto ball = detail::monomial_to_bernstein_ball(q);
    detail::UnitTask task;
    task.lo = piece.t_lo;
    task.hi = piece.t_hi;
    task.include_lo = piece.inc_lo;
    task.include_hi = piece.inc_hi;
    task.exact_zero_at_end = [&](bool upper) {
      const double t = upper ? piece.t_hi : piece.t_lo;
      const double x = chart_to_x(piece.chart, t);
      return chart_exact(piece.chart, t, x) && exact_zero(x);
    };
    const auto found = detail::isolate_unit(ball, task);
    for (const auto& [ta, tb] : found.isolating) {
      double xa = chart_to_x(piece.chart, ta);
      double xb = chart_to_x(piece.chart, tb);
      if (xa > xb) std::swap(xa, xb);
      roots.push_back({xa, xb});
    }
    for (double t : found.endpoint_roots) {
      const double x = chart_to_x(piece.chart, t);
      roots.push_back({x, x});
    }
  }
  std::sort(roots.begin(), roots.end(), [](const XRoot& u, const XRoot& v) { return u.lo < v.lo; });
  return roots;
}

// Horner value with a running rounding-error bound.
std::pair<double, double> eval_with_bound(const poly::MonomialPoly& p, double x) {
  const auto c = p.coeffs();
  double acc = c.back();
  double mag = std::abs(c.back());
  const double ax = std::abs(x);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * x + c[k];
    mag = mag * ax + std::abs(c[k]);
  }
  const double gamma = (2.0 * static_cast<double>(c.size()) + 4.0) * kUnit;
  return {acc, gamma * mag + 1e-300};
}

int certified_sign(const poly::MonomialPoly& p, double x) {
  const auto [v, e] = eval_with_bound(p, x);
  if (v > e) return 1;
  if (v < -e) return -1;
  return 0;
}

double refine_tolerance(double lo, double hi) {
  return 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
}

bool use_sturm(const poly::MonomialPoly& p, Strategy s) {
  if (s == Strategy::DescartesBisect) return false;
  if (s == Strategy::SturmExact && p.degree() > kMaxSturmDegree)
    throw Error(ErrorCode::DegreeTooLarge, "exact path limited to degree " + std::to_string(kMaxSturmDegree));
  return p.degree() <= kMaxSturmDegree;
}

std::optional<SturmChain> chain_for(const poly::MonomialPoly& p, Strategy s) {
  auto chain = SturmChain::build(p, kSturmBitBudget);
  if (!chain && s == Strategy::SturmExact)
    throw Error(ErrorCode::PrecisionExhausted, "Sturm chain exceeds the rational bit budget");
  return chain;
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "interval requires lo < hi");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::SturmExact: return "SturmExact";
    case Method::DescartesBisect: return "DescartesBisect";
    case Method::CompanionFiltered: return "CompanionFiltered";
  }
  return "?";
}

RootCount count_roots_interval(const poly::MonomialPoly& p, const Interval& interval, Strategy strategy) {
  require_nonzero(p);
  if (use_sturm(p, strategy)) {
    if (auto chain = chain_for(p, strategy)) {
      const int n = chain->count_closed(ExactPoint::from_double(interval.lo()),
                                        ExactPoint::from_double(interval.hi()));
      return {n, interval, Method::SturmExact};
    }
  }
  const auto roots = descartes_roots(p, interval.lo(), interval.hi());
  return {static_cast<int>(roots.size()), interval, Method::DescartesBisect};
}

double cauchy_bound(const poly::MonomialPoly& p) {
  const int d = p.degree();
  const double lead = std::abs(p[d]);
  double worst = 0.0;
  for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(p[k]) / lead);
  return 1.0 + worst;
}

RootCount count_roots_line(const poly::MonomialPoly& p, Strategy strategy) {
  require_nonzero(p);
  if (p.degree() == 0) return {0, Interval::line(), Method::SturmExact};
  if (!(std::abs(p[p.degree()]) > 1e-300))
    throw Error(ErrorCode::DegreeDrop, "leading coefficient below 1e-300");
  const double bound = pow2_ceil(cauchy_bound(p) * (1.0 + 1e-9));
  if (!std::isfinite(bound)) throw Error(ErrorCode::DegreeDrop, "Cauchy bound overflows");
  RootCount rc = count_roots_interval(p, Interval(-bound, bound), strategy);
  rc.region = Interval::line();
  return rc;
}

namespace {

int bernstein_descartes_count(const poly::BernsteinPoly& p, double a, double b,
                              const std::function<bool(double)>& exact_zero);

mpz_class exact_binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

RootCount count_roots_bernstein(const poly::BernsteinPoly& p, const Interval& interval) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "polynomial vanishes identically");
  const int d = p.degree();
  const double a = interval.lo();
  const double b = interval.hi();

  // Exact value of the Bernstein form at a rational point.
  auto exact_zero = [&](double xd) {
    if (std::isinf(xd)) return false;
    const mpq_class x(xd);
    const mpq_class y = 1 - x;
    mpq_class acc = 0;
    for (int k = 0; k <= d; ++k) {
      mpq_class term(p[k]);
      term *= mpq_class(exact_binomial(d, k));
      for (int i = 0; i < k; ++i) term *= x;
      for (int i = k; i < d; ++i) term *= y;
      acc += term;
    }
    return acc == 0;
  };

  try {
    return {bernstein_descartes_count(p, a, b, exact_zero), interval, Method::DescartesBisect};
  } catch (const Error& err) {
    if (err.code() != ErrorCode::PrecisionExhausted || d > kMaxSturmDegree) throw;
  }
  // Multiple or endpoint-hugging roots: exact monomial image and a Sturm chain.
  std::vector<mpq_class> m(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    const mpq_class bi = mpq_class(p[i]) * mpq_class(exact_binomial(d, i));
    for (int k = i; k <= d; ++k) {
      const mpq_class term = bi * mpq_class(exact_binomial(d - i, k - i));
      if ((k - i) % 2) m[static_cast<std::size_t>(k)] -= term;
      else m[static_cast<std::size_t>(k)] += term;
    }
  }
  mpz_class den = 1;
  for (const auto& c : m) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : m) ints.push_back(mpz_class(c * den));
  const auto chain = SturmChain::build_exact(std::move(ints), kSturmBitBudget);
  if (!chain) throw Error(ErrorCode::PrecisionExhausted, "Sturm chain exceeds the rational bit budget");
  return {chain->count_closed(ExactPoint::from_double(a), ExactPoint::from_double(b)), interval, Method::SturmExact};
}

namespace {

int bernstein_descartes_count(const poly::BernsteinPoly& p, double a, double b,
                              const std::function<bool(double)>& exact_zero) {
  const int d = p.degree();
  int count = 0;
  // Chart A: x = t on [0, 1].
  const double alo = std::max(a, 0.0);
  const double ahi = std::min(b, 1.0);
  if (alo == ahi) {
    if (exact_zero(alo)) ++count;
  } else if (alo < ahi) {
    detail::UnitTask task;
    task.lo = alo;
    task.hi = ahi;
    task.exact_zero_at_end = [&](bool upper) { return exact_zero(upper ? ahi : alo); };
    count += static_cast<int>(detail::isolate_unit(detail::exact_ball(p.coeffs()), task).count());
  }

  // Homogeneous coefficients c_k = b_k C(d, k).
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = p[k] * poly::binomial(d, k);

  auto run_chart = [&](bool right_side, double s_lo, bool inc_lo, double s_hi, bool inc_hi, double x_lo,
                       double x_hi) {
    std::vector<double> q(c.size());
    std::vector<double> r(c.size());
    for (int i = 0; i <= d; ++i) {
      const double sign = (i % 2) ? -1.0 : 1.0;
      const double ci = right_side ? c[static_cast<std::size_t>(d - i)] : c[static_cast<std::size_t>(i)];
      q[static_cast<std::size_t>(i)] = sign * ci;
      r[static_cast<std::size_t>(i)] = 4.0 * kUnit * std::abs(ci);
    }
    detail::UnitTask task;
    task.lo = s_lo;
    task.hi = s_hi;
    task.include_lo = inc_lo;
    task.include_hi = inc_hi;
    task.exact_zero_at_end = [&](bool upper) {
      const double s = upper ? s_hi : s_lo;
      const double x = upper ? x_hi : x_lo;
      if (std::isinf(x)) return false;
      const mpq_class xs(x);
      const mpq_class mapped = right_side ? mpq_class(1 - 1 / xs) : mpq_class(xs / (xs - 1));
      return mapped == mpq_class(s) && exact_zero(x);
    };
    count += static_cast<int>(detail::isolate_unit(detail::monomial_to_bernstein_ball(q, r), task).count());
  };


  // Chart B: x = 1/(1 - s) covers (1, inf).
  if (b > 1.0) {
    const double x_lo = std::max(a, 1.0);
    const double s_lo = a > 1.0 ? 1.0 - 1.0 / a : 0.0;
    const double s_hi = std::isinf(b) ? 1.0 : 1.0 - 1.0 / b;
    if (s_lo < s_hi) run_chart(true, s_lo, a > 1.0, s_hi, !std::isinf(b), x_lo, b);
  }
  // Chart C: x = -s/(1 - s) covers (-inf, 0), decreasing in s.
  if (a < 0.0) {
    const double x_near = std::min(b, 0.0);
    const double s_lo = b < 0.0 ? b / (b - 1.0) : 0.0;
    const double s_hi = std::isinf(a) ? 1.0 : a / (a - 1.0);
    if (s_lo < s_hi) run_chart(false, s_lo, b < 0.0, s_hi, !std::isinf(a), x_near, a);
  }
  return count;
}

}  // namespace

RootCount count_roots_companion(const poly::MonomialPoly& p) {
  require_nonzero(p);
  int d = p.degree();
  while (d > 0 && p[d] == 0.0) --d;
  if (d == 0) return {0, Interval::line(), Method::CompanionFiltered};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  int n = 0;
  for (const auto& z : solver.eigenvalues())
    if (std::abs(z.imag()) < 1e-8 * (1.0 + std::abs(z.real()))) ++n;
  return {n, Interval::line(), Method::CompanionFiltered};
}

std::vector<Interval> isolate_roots(const poly::MonomialPoly& p, Strategy strategy) {
  require_nonzero(p);
  std::vector<Interval> out;
  if (p.degree() == 0) return out;
  if (!(std::abs(p[p.degree()]) > 1e-300))
    throw Error(ErrorCode::DegreeDrop, "leading coefficient below 1e-300");
  const double bound = pow2_ceil(cauchy_bound(p) * (1.0 + 1e-9));

  if (use_sturm(p, strategy)) {
    if (auto chain = chain_for(p, strategy)) {
      auto count = [&](double a, double b) {
        return chain->count_half_open(ExactPoint::from_double(a), ExactPoint::from_double(b));
      };
      struct Span {
        double a, b;
        int n;
      };
      std::vector<Span> work{{-bound, bound, count(-bound, bound)}};
      while (!work.empty()) {
        Span s = work.back();
        work.pop_back();
        if (s.n == 0) continue;
        const double m = 0.5 * (s.a + s.b);
        if (s.n == 1) {
          double a = s.a, b = s.b;
          while (b - a > refine_tolerance(a, b)) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (count(a, mid) == 1) b = mid; else a = mid;
          }
          out.emplace_back(a, b);
          continue;
        }
        if (m <= s.a || m >= s.b) throw Error(ErrorCode::PrecisionExhausted, "roots closer than double spacing");
        const int left = count(s.a, m);
        work.push_back({m, s.b, s.n - left});
        work.push_back({s.a, m, left});
      }
      std::sort(out.begin(), out.end(), [](const Interval& u, const Interval& v) { return u.lo() < v.lo(); });
      return out;
    }
  }

  for (XRoot r : descartes_roots(p, -bound, bound)) {
    if (r.lo == r.hi) {
      out.emplace_back(std::nextafter(r.lo, -kInf), std::nextafter(r.hi, kInf));
      continue;
    }
    double a = std::max(r.lo, -bound);
    double b = std::min(r.hi, bound);
    int sa = certified_sign(p, a);
    const int sb = certified_sign(p, b);
    if (sa != 0 && sb != 0 && sa != sb) {
      while (b - a > refine_tolerance(a, b)) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const int sm = certified_sign(p, mid);
        if (sm == 0) break;
        if (sm == sa) a = mid; else b = mid;
      }
    }
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace randroots::realroots
