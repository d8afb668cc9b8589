#include "randroots/sysroots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include <Eigen/Dense>

#include "randroots/complexsphere.hpp"
#include "randroots/error.hpp"
#include "randroots/realroots.hpp"

namespace randroots::sysroots {

using poly::MonomialPoly;
using poly::MultiIndex;
using poly::MultiPoly;

namespace {

constexpr int kMaxBivariateDegree = 6;
constexpr double kDedup = 1e-7;
constexpr double kResidualTol = 1e-9;

double coeff_norm_inf(const PolySystem& sys) {
  double c = 0.0;
  for (const auto& f : sys.equations())
    for (double a : f.coeffs()) c = std::max(c, std::abs(a));
  return c;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

MonomialPoly trim_zeros(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return MonomialPoly(std::move(c));
}

struct Polished {
  Point x;
  bool converged = false;
};

Polished newton_polish(const PolySystem& sys, Point x) {
  const int m = sys.vars();
  Eigen::MatrixXd jac(m, m);
  Eigen::VectorXd rhs(m);
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    for (int i = 0; i < m; ++i) {
      rhs(i) = poly::eval_multi(sys[static_cast<std::size_t>(i)], x);
      const auto g = poly::gradient(sys[static_cast<std::size_t>(i)], x);
      for (int j = 0; j < m; ++j) jac(i, j) = g[static_cast<std::size_t>(j)];
    }
    if (rhs.cwiseAbs().maxCoeff() == 0.0) {
      converged = true;
      break;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd step = lu.solve(rhs);
    if (!step.allFinite()) break;
    for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] -= step(j);
    if (step.norm() <= 1e-15 * (1.0 + norm2(x))) {
      converged = true;
      break;
    }
  }
  return {std::move(x), converged};
}

/// Accepts x when every residual is below tol, either plainly or after
/// weighting by the natural scale (1 + |x|^2)^(d_i / 2) of a degree-d_i
/// evaluation for converged far-out points.
bool accept(const PolySystem& sys, const Polished& p, double tol) {
  for (double v : p.x)
    if (!std::isfinite(v)) return false;
  const double scale2 = 1.0 + [&] {
    double s = 0.0;
    for (double v : p.x) s += v * v;
    return s;
  }();
  for (const auto& f : sys.equations()) {
    const double r = std::abs(poly::eval_multi(f, p.x));
    if (r <= tol) continue;
    if (!p.converged || r > tol * std::pow(scale2, 0.5 * f.degree())) return false;
  }
  return true;
}

SolutionSet finish(const PolySystem& sys, std::vector<Point> pts, int dropped) {
  std::sort(pts.begin(), pts.end());
  std::vector<Point> unique;
  for (auto& p : pts) {
    bool dup = false;
    for (const auto& q : unique) {
      double d = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) d = std::max(d, std::abs(p[k] - q[k]));
      if (d <= kDedup * std::max(1.0, norm2(q))) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(p));
  }
  SolutionSet out;
  out.bezout = sys.bezout();
  out.dropped_candidates = dropped;
  if (static_cast<std::int64_t>(unique.size()) > out.bezout)
    throw Error(ErrorCode::DegenerateResultant, "more real solutions than the Bezout bound");
  for (const auto& p : unique) out.residual_max = std::max(out.residual_max, sys.residual(p));
  out.points = std::move(unique);
  return out;
}

/// Coefficients of f as a polynomial in y with coefficients in x:
/// result[k][i] multiplies x^i y^k.
std::vector<std::vector<double>> y_coeffs(const MultiPoly& f) {
  const int d = f.degree();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(d) + 1, std::vector<double>(d + 1, 0.0));
  const auto idx = f.indices();
  const auto c = f.coeffs();
  int ydeg = 0;
  for (std::size_t p = 0; p < c.size(); ++p) {
    a[static_cast<std::size_t>(idx[p][1])][static_cast<std::size_t>(idx[p][0])] = c[p];
    if (c[p] != 0.0) ydeg = std::max(ydeg, idx[p][1]);
  }
  a.resize(static_cast<std::size_t>(ydeg) + 1);
  return a;
}

double horner(std::span<const double> c, double x) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

/// Sylvester matrix of two polynomials in y given by their coefficients
/// (constant term first), with leading coefficients in the first column.
Eigen::MatrixXd sylvester(const std::vector<double>& a, const std::vector<double>& b) {
  const int n1 = static_cast<int>(a.size()) - 1;
  const int n2 = static_cast<int>(b.size()) - 1;
  const int n = n1 + n2;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n2; ++i)
    for (int k = 0; k <= n1; ++k) s(i, i + n1 - k) = a[static_cast<std::size_t>(k)];
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k <= n2; ++k) s(n2 + i, i + n2 - k) = b[static_cast<std::size_t>(k)];
  return s;
}

/// Real roots of a univariate slice, or none if it is numerically constant.
std::vector<double> slice_real_roots(std::vector<double> c) {
  double cmax = 0.0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  if (cmax == 0.0) return {};
  while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * cmax) c.pop_back();
  if (c.size() == 1) return {};
  std::vector<std::complex<double>> cc(c.begin(), c.end());
  std::vector<double> out;
  try {
    for (const auto& z : sphere::roots_complex(poly::ComplexPoly(std::move(cc))))
      if (std::abs(z.imag()) <= 1e-4 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  } catch (const Error&) {
    // An unconverged slice contributes no candidates.
  }
  return out;
}

std::vector<double> real_roots_refined(const MonomialPoly& p) {
  std::vector<double> out;
  if (p.degree() == 0) return out;
  const MonomialPoly dp = poly::derivative(p);
  for (const auto& iv : realroots::isolate_roots(p)) {
    double x = iv.midpoint();
    for (int it = 0; it < 8; ++it) {
      const double d = poly::eval_monomial(dp, x);
      if (d == 0.0) break;
      const double nx = x - poly::eval_monomial(p, x) / d;
      if (!iv.contains(nx)) break;
      if (nx == x) break;
      x = nx;
    }
    out.push_back(x);
  }
  return out;
}

/// The variable f depends on, -1 for a constant, -2 for several.
int sole_variable(const MultiPoly& f) {
  int var = -1;
  const auto idx = f.indices();
  const auto c = f.coeffs();
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == 0.0) continue;
    for (int k = 0; k < f.vars(); ++k) {
      if (idx[p][static_cast<std::size_t>(k)] == 0) continue;
      if (var >= 0 && var != k) return -2;
      var = k;
    }
  }
  return var;
}

}  // namespace

PolySystem::PolySystem(std::vector<MultiPoly> equations) : m_(0), equations_(std::move(equations)) {
  if (equations_.empty()) throw Error(ErrorCode::InvalidArgument, "system needs at least one equation");
  m_ = equations_.front().vars();
  if (static_cast<int>(equations_.size()) != m_)
    throw Error(ErrorCode::DimensionMismatch, "system must have as many equations as variables");
  for (const auto& f : equations_)
    if (f.vars() != m_) throw Error(ErrorCode::DimensionMismatch, "equations disagree on the number of variables");
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  for (const auto& f : equations_) d.push_back(f.degree());
  return d;
}

std::int64_t PolySystem::bezout() const {
  std::int64_t b = 1;
  for (const auto& f : equations_) b *= f.degree();
  return b;
}

double PolySystem::residual(std::span<const double> x) const {
  double r = 0.0;
  for (const auto& f : equations_) r = std::max(r, std::abs(poly::eval_multi(f, x)));
  return r;
}

Region Region::box(Point lo, Point hi) {
  if (lo.size() != hi.size() || lo.empty()) throw Error(ErrorCode::DimensionMismatch, "box bounds disagree");
  return {Kind::Box, std::move(lo), std::move(hi)};
}

bool Region::empty() const {
  if (kind != Kind::Box) return false;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) return true;
  return false;
}

bool Region::contains(std::span<const double> x) const {
  switch (kind) {
    case Kind::Full:
      return true;
    case Kind::Box:
      if (x.size() != lo.size()) throw Error(ErrorCode::DimensionMismatch, "point and box dimensions differ");
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!(lo[i] <= x[i] && x[i] <= hi[i])) return false;
      return true;
    case Kind::Simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < 0.0) return false;
        s += v;
      }
      return s <= 1.0;
    }
  }
  return false;
}

MonomialPoly resultant_in_x(const MultiPoly& f1, const MultiPoly& f2) {
  if (f1.vars() != 2 || f2.vars() != 2) throw Error(ErrorCode::DimensionMismatch, "resultant needs m = 2");
  const auto a = y_coeffs(f1);
  const auto b = y_coeffs(f2);
  if (a.size() == 1 && b.size() == 1)
    throw Error(ErrorCode::DegenerateResultant, "neither equation involves y");
  const int deg = f1.degree() * f2.degree();
  const int nodes = 2 * deg + 1;

  std::vector<double> values(static_cast<std::size_t>(nodes));
  std::vector<double> xs(static_cast<std::size_t>(nodes));
  double value_max = 0.0;
  double hadamard_max = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double x = std::cos(std::numbers::pi * (k + 0.5) / nodes);
    std::vector<double> av, bv;
    for (const auto& c : a) av.push_back(horner(c, x));
    for (const auto& c : b) bv.push_back(horner(c, x));
    const Eigen::MatrixXd s = sylvester(av, bv);
    double det = 1.0;
    double had = 1.0;
    if (s.rows() > 0) {
      det = s.partialPivLu().determinant();
      for (int r = 0; r < s.rows(); ++r) had *= s.row(r).norm();
    }
    xs[static_cast<std::size_t>(k)] = x;
    values[static_cast<std::size_t>(k)] = det;
    value_max = std::max(value_max, std::abs(det));
    hadamard_max = std::max(hadamard_max, had);
  }
  if (!(value_max > 1e-12 * hadamard_max))
    throw Error(ErrorCode::DegenerateResultant, "resultant numerically zero");

  // Discrete Chebyshev transform, then expansion in monomials.
  std::vector<double> cheb(static_cast<std::size_t>(deg) + 1, 0.0);
  for (int j = 0; j <= deg; ++j) {
    double s = 0.0;
    for (int k = 0; k < nodes; ++k)
      s += values[static_cast<std::size_t>(k)] * std::cos(j * std::numbers::pi * (k + 0.5) / nodes);
    cheb[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * s / nodes;
  }
  std::vector<double> mono(static_cast<std::size_t>(deg) + 1, 0.0);
  std::vector<double> tprev(mono.size(), 0.0), tcur(mono.size(), 0.0);
  tprev[0] = 1.0;
  if (deg >= 1) tcur[1] = 1.0;
  for (int j = 0; j <= deg; ++j) {
    const auto& t = j == 0 ? tprev : tcur;
    for (std::size_t i = 0; i < mono.size(); ++i) mono[i] += cheb[static_cast<std::size_t>(j)] * t[i];
    if (j >= 1 && j < deg) {
      std::vector<double> tnext(mono.size(), 0.0);
      for (std::size_t i = 0; i + 1 < mono.size(); ++i) tnext[i + 1] = 2.0 * tcur[i];
      for (std::size_t i = 0; i < mono.size(); ++i) tnext[i] -= tprev[i];
      tprev = std::move(tcur);
      tcur = std::move(tnext);
    }
  }
  // Coefficients at interpolation noise level are structural zeros.
  while (mono.size() > 1 && std::abs(mono.back()) <= 1e-12 * value_max) mono.pop_back();
  return MonomialPoly(std::move(mono));
}

SolutionSet solve_bivariate(const PolySystem& sys) {
  if (sys.vars() != 2) throw Error(ErrorCode::DimensionMismatch, "solve_bivariate needs m = 2");
  for (int d : sys.degrees())
    if (d > kMaxBivariateDegree) throw Error(ErrorCode::DegreeTooLarge, "bivariate solver supports degree <= 6");
  const MonomialPoly res = resultant_in_x(sys[0], sys[1]);
  const double tol = kResidualTol * (1.0 + coeff_norm_inf(sys));
  const auto a = y_coeffs(sys[0]);
  const auto b = y_coeffs(sys[1]);

  std::vector<Point> pts;
  int dropped = 0;
  for (double x : real_roots_refined(res)) {
    std::vector<double> ya, yb;
    for (const auto& c : a) ya.push_back(horner(c, x));
    for (const auto& c : b) yb.push_back(horner(c, x));
    auto cand = slice_real_roots(ya);
    const auto cand2 = slice_real_roots(yb);
    cand.insert(cand.end(), cand2.begin(), cand2.end());
    for (double y : cand) {
      const Polished p = newton_polish(sys, {x, y});
      if (accept(sys, p, tol)) pts.push_back(p.x); else ++dropped;
    }
  }
  return finish(sys, std::move(pts), dropped);
}

bool is_separable(const PolySystem& sys) {
  std::vector<bool> used(static_cast<std::size_t>(sys.vars()), false);
  for (const auto& f : sys.equations()) {
    const int v = sole_variable(f);
    if (v == -2) return false;
    if (v >= 0) {
      if (used[static_cast<std::size_t>(v)]) return false;
      used[static_cast<std::size_t>(v)] = true;
    }
  }
  return true;
}

SolutionSet solve_separable(const PolySystem& sys) {
  if (!is_separable(sys)) throw Error(ErrorCode::InvalidArgument, "system is not separable");
  const int m = sys.vars();
  std::vector<std::vector<double>> coord(static_cast<std::size_t>(m));
  std::vector<bool> assigned(static_cast<std::size_t>(m), false);
  for (const auto& f : sys.equations()) {
    const int v = sole_variable(f);
    if (v < 0) {
      // A nonzero constant equation has no solutions; zero is degenerate.
      if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "equation vanishes identically");
      SolutionSet none;
      none.bezout = sys.bezout();
      return none;
    }
    std::vector<double> c(static_cast<std::size_t>(f.degree()) + 1, 0.0);
    const auto idx = f.indices();
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const int e = idx[p][static_cast<std::size_t>(v)];
      bool pure = true;
      for (int k = 0; k < m; ++k)
        if (k != v && idx[p][static_cast<std::size_t>(k)] != 0) pure = false;
      if (pure) c[static_cast<std::size_t>(e)] += f.coeffs()[p];
    }
    coord[static_cast<std::size_t>(v)] = real_roots_refined(trim_zeros(std::move(c)));
    assigned[static_cast<std::size_t>(v)] = true;
  }
  std::vector<Point> pts{Point{}};
  for (int k = 0; k < m; ++k) {
    std::vector<Point> next;
    for (const auto& p : pts)
      for (double r : coord[static_cast<std::size_t>(k)]) {
        Point q = p;
        q.push_back(r);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  SolutionSet out;
  out.bezout = sys.bezout();
  for (const auto& p : pts) out.residual_max = std::max(out.residual_max, sys.residual(p));
  out.points = std::move(pts);
  return out;
}

SolutionSet solve_system(const PolySystem& sys) {
  if (is_separable(sys)) return solve_separable(sys);
  if (sys.vars() == 2) return solve_bivariate(sys);
  throw Error(ErrorCode::InvalidArgument, "general systems are supported for m <= 2 only");
}

int count_real_solutions(const PolySystem& sys, const Region& region) {
  if (region.empty()) return 0;
  const SolutionSet s = solve_system(sys);
  return static_cast<int>(std::count_if(s.points.begin(), s.points.end(),
                                        [&](const Point& p) { return region.contains(p); }));
}

MultiPoly signal_sphere(int d, double r, int m) {
  if (d < 2 || d % 2 != 0) throw Error(ErrorCode::OddDegree, "sphere signal needs a positive even degree");
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  const int half = d / 2;
  std::map<MultiIndex, double> c;
  for (const auto& a : poly::multi_indices(m, half)) {
    int s = 0;
    for (int v : a) s += v;
    if (s != half) continue;
    MultiIndex j(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) j[k] = 2 * a[k];
    c[j] = poly::multinomial(half, a);
  }
  c[MultiIndex(static_cast<std::size_t>(m), 0)] -= std::pow(r, d);
  return MultiPoly(m, d, c);
}

PolySystem signal_product(const MonomialPoly& t, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  const int d = t.degree();
  if (d < 1 || t.is_zero() || realroots::count_roots_line(t).count != d)
    throw Error(ErrorCode::NotFullySplit, "T must have deg T distinct real roots");
  std::vector<MultiPoly> eqs;
  for (int i = 0; i < m; ++i) {
    std::map<MultiIndex, double> c;
    for (int k = 0; k <= d; ++k) {
      MultiIndex j(static_cast<std::size_t>(m), 0);
      j[static_cast<std::size_t>(i)] = k;
      c[j] = t[k];
    }
    eqs.emplace_back(m, d, c);
  }
  return PolySystem(std::move(eqs));
}

namespace {

struct FieldValue {
  double h = 0.0, k = 0.0, l = 0.0;
};

FieldValue field(const MultiPoly& p, int d, const Point& x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double w = std::pow(1.0 + r2, -0.5 * d);
  const double pv = poly::eval_multi(p, x);
  const auto gp = poly::gradient(p, x);
  double gn2 = 0.0, radial = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gi = w * (gp[i] - d * pv * x[i] / (1.0 + r2));
    gn2 += gi * gi;
    radial += gi * x[i];
  }
  const double r = std::sqrt(r2);
  FieldValue f;
  f.h = (1.0 + r) * std::sqrt(gn2);
  f.k = r > 0.0 ? (1.0 + r2) * std::abs(radial) / r : 0.0;
  f.l = pv * w * pv * w;
  return f;
}

std::vector<Point> directions(int m, int target) {
  std::vector<Point> out;
  if (m == 1) return {{1.0}, {-1.0}};
  if (m == 2) {
    const int n = std::max(8, target);
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * i / n;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  const int n = std::max(16, target);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double s = std::sqrt(1.0 - z * z);
    out.push_back({s * std::cos(golden * i), s * std::sin(golden * i), z});
  }
  return out;
}

std::vector<double> log_radii(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / std::max(1, n - 1));
  return r;
}

/// Coordinate pattern search maximizing score, keeping |x| >= rmin.
Point refine(const Point& start, double rmin, int steps, const std::function<double(const Point&)>& score) {
  Point x = start;
  double best = score(x);
  double step = 0.2 * std::max({norm2(x), rmin, 1e-3});
  for (int s = 0; s < steps && step > 1e-12 * std::max(1.0, norm2(x)); ++s) {
    bool improved = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (double sgn : {1.0, -1.0}) {
        Point y = x;
        y[k] += sgn * step;
        const double ny = norm2(y);
        if (ny < rmin) {
          if (ny == 0.0) continue;
          for (double& v : y) v *= rmin / ny;
        }
        const double v = score(y);
        if (v > best) {
          best = v;
          x = std::move(y);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

struct GridSpec {
  std::vector<Point> dirs;
  int n_radii = 0;
};

GridSpec grid_for(int m, const FunctionalOptions& opts) {
  GridSpec g;
  const int ndir_target = m == 2 ? 100 : 200;
  g.dirs = directions(m, ndir_target);
  const int nd = static_cast<int>(g.dirs.size());
  g.n_radii = std::max(2, (opts.min_grid_points + nd - 1) / nd);
  return g;
}

}  // namespace

double signal_l(const MultiPoly& p, int d, double r, const FunctionalOptions& opts) {
  if (p.vars() > 3) throw Error(ErrorCode::InvalidArgument, "functionals need m <= 3");
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const GridSpec g = grid_for(p.vars(), opts);
  const auto radii = log_radii(r, std::max(opts.max_radius, 100.0 * r), g.n_radii);
  double best = std::numeric_limits<double>::infinity();
  Point arg;
  for (double rad : radii)
    for (const auto& u : g.dirs) {
      Point x = u;
      for (double& v : x) v *= rad;
      const double l = field(p, d, x).l;
      if (l < best) {
        best = l;
        arg = x;
      }
    }
  const Point x = refine(arg, r, opts.refine_steps, [&](const Point& y) { return -field(p, d, y).l; });
  return std::min(best, field(p, d, x).l);
}

SignalFunctionals functionals(const MultiPoly& p, int d, std::span<const double> radii,
                              const FunctionalOptions& opts) {
  if (p.vars() > 3) throw Error(ErrorCode::InvalidArgument, "functionals need m <= 3");
  const GridSpec g = grid_for(p.vars(), opts);
  const auto rs = log_radii(1e-3, opts.max_radius, g.n_radii);
  SignalFunctionals out;
  Point arg_h(static_cast<std::size_t>(p.vars()), 0.0), arg_k = g.dirs.front();
  {
    const FieldValue f0 = field(p, d, arg_h);
    out.h = f0.h;
  }
  double kbest = -1.0;
  for (double rad : rs)
    for (const auto& u : g.dirs) {
      Point x = u;
      for (double& v : x) v *= rad;
      const FieldValue f = field(p, d, x);
      if (f.h > out.h) {
        out.h = f.h;
        arg_h = x;
      }
      if (f.k > kbest) {
        kbest = f.k;
        arg_k = x;
      }
    }
  out.grid_points = static_cast<int>(rs.size() * g.dirs.size()) + 1;
  out.radial_ratio = std::pow(opts.max_radius / 1e-3, 1.0 / std::max(1, g.n_radii - 1));
  out.h = std::max(out.h, field(p, d, refine(arg_h, 0.0, opts.refine_steps,
                                             [&](const Point& y) { return field(p, d, y).h; })).h);
  out.k = std::max(kbest, field(p, d, refine(arg_k, 0.0, opts.refine_steps,
                                             [&](const Point& y) { return field(p, d, y).k; })).k);
  for (double r : radii) {
    out.radii.push_back(r);
    out.l.push_back(signal_l(p, d, r, opts));
  }
  return out;
}

HypothesisReport hypothesis_check(std::span<const MultiPoly> signals, std::span<const int> degrees, double r0,
                                  double ell, const FunctionalOptions& opts) {
  if (signals.empty() || signals.size() != degrees.size())
    throw Error(ErrorCode::DimensionMismatch, "one degree per signal equation");
  HypothesisReport rep;
  rep.probe_radii = {r0, 2.0 * r0, 10.0 * r0};
  rep.min_l.assign(rep.probe_radii.size(), std::numeric_limits<double>::infinity());
  const double m = static_cast<double>(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto f = functionals(signals[i], degrees[i], rep.probe_radii, opts);
    rep.a_m += f.h * f.h / static_cast<double>(i + 1);
    rep.b_m += f.k * f.k / static_cast<double>(i + 1);
    for (std::size_t j = 0; j < rep.min_l.size(); ++j) rep.min_l[j] = std::min(rep.min_l[j], f.l[j]);
  }
  rep.a_m /= m;
  rep.b_m /= m;
  rep.h2 = std::all_of(rep.min_l.begin(), rep.min_l.end(), [&](double l) { return l >= ell; });
  return rep;
}

}  // namespace randroots::sysroots
