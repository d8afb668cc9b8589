#include "randroots/complexsphere.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "randroots/error.hpp"

namespace randroots::sphere {

using cplx = std::complex<double>;

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Newton {
  cplx ratio;     // p / p'
  double resid;   // |p(z)|
  double bound;   // rounding bound on |p(z)|
};

Newton newton_ratio(std::span<const cplx> a, cplx z) {
  const std::size_t n = a.size() - 1;
  const double r = std::abs(z);
  if (r <= 1.0) {
    cplx p = a[n], dp = 0.0;
    double mag = std::abs(a[n]);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      mag = mag * r + std::abs(a[k]);
    }
    return {p / dp, std::abs(p), 4.0 * (n + 1) * kUnit * mag};
  }
  // Reversed evaluation in w = 1/z keeps the Horner sums bounded.
  const cplx w = 1.0 / z;
  const double rw = 1.0 / r;
  cplx q = a[0], dq = 0.0;
  double mag = std::abs(a[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + a[k];
    mag = mag * rw + std::abs(a[k]);
  }
  // p(z) = z^n q(w), p'(z) = z^(n-1) (n q(w) - w q'(w)).
  const cplx ratio = z / (static_cast<double>(n) - w * dq / q);
  const double scale = std::pow(r, static_cast<double>(n));
  return {ratio, std::abs(q) * scale, 4.0 * (n + 1) * kUnit * mag * scale};
}

// Starting points on the circles of the Newton polygon of |a_k|.
std::vector<cplx> initial_guesses(std::span<const cplx> a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> pts;
  for (int k = 0; k <= n; ++k)
    if (a[static_cast<std::size_t>(k)] != 0.0) pts.push_back(k);
  auto lg = [&](int k) { return std::log(std::abs(a[static_cast<std::size_t>(k)])); };
  std::vector<int> hull;
  for (int k : pts) {
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      // Drop j when it lies on or below the chord i -> k.
      if ((lg(j) - lg(i)) * (k - i) <= (lg(k) - lg(i)) * (j - i)) hull.pop_back(); else break;
    }
    hull.push_back(k);
  }
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(n));
  const int zero_roots = hull.front();
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e], j = hull[e + 1];
    const double radius = std::exp((lg(i) - lg(j)) / (j - i));
    smallest = std::min(smallest, radius);
    const double offset = 0.4 + 1.7 * static_cast<double>(e);
    for (int l = 0; l < j - i; ++l) {
      const double jitter = 0.13 * std::sin(7.0 * l + 3.0 * e + 1.0);
      const double theta = 2.0 * std::numbers::pi * (l + 0.5 + jitter) / (j - i) + offset;
      z.push_back(std::polar(radius, theta));
    }
  }
  if (!std::isfinite(smallest)) smallest = 1.0;
  for (int l = 0; l < zero_roots; ++l)
    z.push_back(std::polar(0.01 * smallest, 2.0 * std::numbers::pi * (l + 0.3) / zero_roots));
  return z;
}

}  // namespace

double SpherePoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

Configuration::Configuration(std::vector<SpherePoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::InvalidArgument, "configuration needs at least two points");
  for (const auto& p : points_)
    if (!(std::abs(p.norm() - 1.0) <= 1e-12))
      throw Error(ErrorCode::InvalidArgument, "configuration point off the unit sphere");
}

std::vector<cplx> roots_complex(const poly::ComplexPoly& p, AberthOptions opts) {
  const auto a = p.coeffs();
  const int n = p.degree();
  if (n < 1) return {};
  double amax = 0.0;
  for (const auto& c : a) amax = std::max(amax, std::abs(c));
  if (!(std::abs(a.back()) > 1e-12 * amax))
    throw Error(ErrorCode::DegreeDrop, "leading coefficient numerically zero");

  std::vector<cplx> z = initial_guesses(a);
  std::vector<bool> done(z.size(), false);
  bool all_done = false;
  for (int sweep = 0; sweep < opts.max_sweeps && !all_done; ++sweep) {
    all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const Newton nw = newton_ratio(a, z[i]);
      if (nw.resid <= nw.bound) {
        done[i] = true;
        continue;
      }
      cplx repulse = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulse += 1.0 / (z[i] - z[j]);
      const cplx step = nw.ratio / (1.0 - nw.ratio * repulse);
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kUnit * std::abs(z[i])) done[i] = true; else all_done = false;
    }
  }
  if (!all_done) throw Error(ErrorCode::NonConvergence, "Aberth iteration hit the sweep cap");
  for (const auto& zi : z) {
    const Newton nw = newton_ratio(a, zi);
    const double allowed = 1e-10 * amax * std::pow(1.0 + std::abs(zi), n);
    if (!(nw.resid <= allowed) || !std::isfinite(zi.real()) || !std::isfinite(zi.imag()))
      throw Error(ErrorCode::NonConvergence, "root fails the residual check");
  }
  return z;
}

SpherePoint lift(cplx z) {
  const double r2 = std::norm(z);
  if (std::isinf(r2)) return {0.0, 0.0, -1.0};
  const double den = 1.0 + r2;
  SpherePoint p{2.0 * z.real() / den, 2.0 * z.imag() / den, (1.0 - r2) / den};
  return p;
}

EnergyValue log_energy_flagged(const Configuration& c) {
  CompensatedSum sum;
  const auto pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      const double dz = pts[i].z - pts[j].z;
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < 1e-28) return {std::numeric_limits<double>::infinity(), true};
      sum.add(-0.5 * std::log(d2));
    }
  }
  return {sum.value(), false};
}

double log_energy(const Configuration& c) { return log_energy_flagged(c).value; }

Configuration polynomial_to_config(const poly::ComplexPoly& p, AberthOptions opts) {
  std::vector<SpherePoint> pts;
  for (const auto& z : roots_complex(p, opts)) pts.push_back(lift(z));
  return Configuration(std::move(pts));
}

void write_config_csv(const Configuration& c, std::ostream& out) {
  out << "x,y,z\n" << std::setprecision(17);
  for (const auto& p : c.points()) out << p.x << ',' << p.y << ',' << p.z << '\n';
}

void write_config_csv(const Configuration& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  write_config_csv(c, out);
}

Configuration read_config_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,z") throw Error(ErrorCode::ParseError, "line 1: expected header x,y,z");
  std::vector<SpherePoint> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    SpherePoint p;
    char c1 = 0, c2 = 0;
    if (!(ss >> p.x >> c1 >> p.y >> c2 >> p.z) || c1 != ',' || c2 != ',')
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected three numbers");
    pts.push_back(p);
  }
  return Configuration(std::move(pts));
}

}  // namespace randroots::sphere
