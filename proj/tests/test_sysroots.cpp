#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randroots/ensembles.hpp"
#include "randroots/error.hpp"
#include "randroots/sysroots.hpp"

using namespace randroots;
using namespace randroots::sysroots;
using poly::MultiPoly;

namespace {

MultiPoly biv(int d, const std::map<poly::MultiIndex, double>& c) { return MultiPoly(2, d, c); }

double coeff_inf(const PolySystem& s) {
  double m = 0.0;
  for (const auto& f : s.equations())
    for (double c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// q(x, y) = a x^2 + b xy + c y^2 + e composed with a rotation by theta.
MultiPoly rotated_quadratic(double a, double b, double c, double e, double theta) {
  const double co = std::cos(theta), si = std::sin(theta);
  const double u2 = a * co * co + b * co * si + c * si * si;
  const double uv = -2 * a * co * si + b * (co * co - si * si) + 2 * c * co * si;
  const double v2 = a * si * si - b * co * si + c * co * co;
  return biv(2, {{{2, 0}, u2}, {{1, 1}, uv}, {{0, 2}, v2}, {{0, 0}, e}});
}

std::int64_t sorted_match(const SolutionSet& a, const SolutionSet& b, double tol) {
  if (a.points.size() != b.points.size()) return -1;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t k = 0; k < a.points[i].size(); ++k)
      if (std::abs(a.points[i][k] - b.points[i][k]) > tol * (1.0 + std::abs(a.points[i][k]))) return -1;
  return static_cast<std::int64_t>(a.points.size());
}

}  // namespace

TEST_CASE("circle meets line in two points") {
  const PolySystem sys({biv(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}}), biv(1, {{{1, 0}, 1}, {{0, 1}, -1}})});
  const auto sol = solve_system(sys);
  REQUIRE(sol.points.size() == 2);
  const double h = std::sqrt(0.5);
  CHECK(sol.points[0][0] == doctest::Approx(-h).epsilon(1e-10));
  CHECK(sol.points[0][1] == doctest::Approx(-h).epsilon(1e-10));
  CHECK(sol.points[1][0] == doctest::Approx(h).epsilon(1e-10));
  CHECK(sol.bezout == 2);
  CHECK(count_real_solutions(sys, Region::simplex()) == 0);
  CHECK(count_real_solutions(sys, Region::box({0, 0}, {1, 1})) == 1);
}

TEST_CASE("systems without real solutions and hyperbola") {
  const PolySystem none({biv(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, 1}}), biv(1, {{{1, 0}, 1}, {{0, 1}, -1}})});
  CHECK(count_real_solutions(none) == 0);
  const PolySystem hyp({biv(2, {{{1, 1}, 1}, {{0, 0}, -1}}), biv(1, {{{1, 0}, 1}, {{0, 1}, -1}})});
  const auto sol = solve_system(hyp);
  REQUIRE(sol.points.size() == 2);
  CHECK(sol.points[0][0] == doctest::Approx(-1.0));
  CHECK(sol.points[1][1] == doctest::Approx(1.0));
}

TEST_CASE("empty box and region checks") {
  const PolySystem sys({biv(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}}), biv(1, {{{1, 0}, 1}, {{0, 1}, -1}})});
  CHECK(count_real_solutions(sys, Region::box({1, 0}, {0, 1})) == 0);
  CHECK(Region::box({1, 0}, {0, 1}).empty());
  CHECK_THROWS_AS(Region::box({0}, {1, 1}), Error);
  CHECK(Region::simplex().contains(std::vector<double>{0.2, 0.3}));
  CHECK_FALSE(Region::simplex().contains(std::vector<double>{0.7, 0.4}));
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(PolySystem({biv(2, {{{2, 0}, 1}})}), Error);
  CHECK_THROWS_AS(PolySystem({MultiPoly(1, 2), MultiPoly(2, 2)}), Error);
}

TEST_CASE("resultant of circle and line") {
  // Res_y(x^2 + y^2 - 1, x - y) = 2 x^2 - 1 up to sign.
  const auto r = resultant_in_x(biv(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}}), biv(1, {{{1, 0}, 1}, {{0, 1}, -1}}));
  const auto c = r.coeffs();
  const double s = c[2] / 2.0;
  CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c[0] / s == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(c[1] / s) < 1e-10);
}

TEST_CASE("random systems: symmetry, residual and bezout invariants") {
  const std::vector<int> degrees{2, 3};
  int mismatches = 0;
  int compared = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng({51, t});
    auto eqs = ensembles::sample_shub_smale(degrees, 2, rng);
    SolutionSet a, b;
    try {
      a = solve_system(PolySystem(eqs));
      b = solve_system(PolySystem({eqs[1], eqs[0]}));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateResultant);
      continue;
    }
    ++compared;
    const PolySystem sys(eqs);
    CHECK(static_cast<std::int64_t>(a.points.size()) <= sys.bezout());
    const double tol = 1e-9 * (1.0 + coeff_inf(sys));
    for (const auto& p : a.points) {
      const double n2 = p[0] * p[0] + p[1] * p[1];
      CHECK(sys.residual(p) <= tol * std::pow(1.0 + n2, 1.5));
    }
    if (sorted_match(a, b, 1e-8) < 0) ++mismatches;
  }
  CHECK(compared >= 190);
  CHECK(mismatches == 0);
}

TEST_CASE("separable systems") {
  const auto prod = signal_product(poly::MonomialPoly({0.0, -1.0, 0.0, 1.0}), 3);
  CHECK(is_separable(prod));
  CHECK(count_real_solutions(prod) == 27);
  CHECK(count_real_solutions(prod, Region::box({-0.5, -2, -2}, {2, 2, 2})) == 18);
  const auto p2 = signal_product(poly::MonomialPoly({0.0, -1.0, 0.0, 1.0}), 2);
  CHECK(count_real_solutions(p2) == 9);
  const PolySystem as_biv(std::vector<MultiPoly>(p2.equations().begin(), p2.equations().end()));
  CHECK(solve_bivariate(as_biv).points.size() == 9);
  CHECK_THROWS_AS(signal_product(poly::MonomialPoly({1.0, 0.0, 1.0}), 2), Error);
  try {
    signal_product(poly::MonomialPoly({1.0, 0.0, 1.0}), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFullySplit);
  }
}

TEST_CASE("sphere signal") {
  const auto s = signal_sphere(2, 1.0, 2);
  CHECK(s.coeff({2, 0}) == 1.0);
  CHECK(s.coeff({0, 0}) == -1.0);
  const auto s4 = signal_sphere(4, 2.0, 2);
  CHECK(s4.coeff({2, 2}) == 2.0);
  CHECK(s4.coeff({0, 0}) == -16.0);
  try {
    signal_sphere(3, 1.0, 2);
    FAIL("expected OddDegree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDegree);
  }
  CHECK_THROWS_AS(signal_sphere(2, 0.0, 2), Error);
  // g = (rho^2 - 1) / (1 + rho^2) increases, so L(2) = (3/5)^2.
  CHECK(signal_l(s, 2, 2.0) == doctest::Approx(9.0 / 25.0).epsilon(0.01));
}

TEST_CASE("functionals of P = x") {
  const MultiPoly p(1, 1, {{{1}, 1.0}});
  const std::vector<double> radii{0.5, 1.0, 2.0, 10.0};
  const auto f = functionals(p, 1, radii);
  // Dense oracle for sup (1 + |x|) (1 + x^2)^(-3/2).
  double h = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double x = i * 1e-6;
    h = std::max(h, (1 + x) * std::pow(1 + x * x, -1.5));
  }
  CHECK(f.h == doctest::Approx(h).epsilon(1e-4));
  CHECK(f.h == doctest::Approx(1.1431).epsilon(1e-3));
  CHECK(f.k == doctest::Approx(1.0).epsilon(1e-4));
  REQUIRE(f.l.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    CHECK(f.l[i] == doctest::Approx(r * r / (1 + r * r)).epsilon(0.01));
  }
  CHECK(f.grid_points >= 10000);
}

TEST_CASE("zero signal has vanishing functionals") {
  const MultiPoly zero(2, 2);
  const auto f = functionals(zero, 2, std::vector<double>{1.0});
  CHECK(f.h == 0.0);
  CHECK(f.k == 0.0);
  CHECK(f.l[0] == 0.0);
}

TEST_CASE("functionals are rotation invariant") {
  const double a = 1.0, b = 0.3, c = 2.0, e = -1.0;
  const auto f0 = functionals(rotated_quadratic(a, b, c, e, 0.0), 2, std::vector<double>{1.0, 3.0});
  for (double theta : {0.4, 1.1, 2.5}) {
    const auto f = functionals(rotated_quadratic(a, b, c, e, theta), 2, std::vector<double>{1.0, 3.0});
    CHECK(f.h == doctest::Approx(f0.h).epsilon(0.02));
    CHECK(f.k == doctest::Approx(f0.k).epsilon(0.02));
    CHECK(f.l[0] == doctest::Approx(f0.l[0]).epsilon(0.02));
    CHECK(f.l[1] == doctest::Approx(f0.l[1]).epsilon(0.02));
  }
}

TEST_CASE("hypothesis check for one variable") {
  const MultiPoly p(1, 1, {{{1}, 1.0}});
  const std::vector<MultiPoly> sig{p};
  const std::vector<int> deg{1};
  const auto rep = hypothesis_check(sig, deg, 2.0, 0.1);
  const auto f = functionals(p, 1);
  CHECK(rep.a_m == doctest::Approx(f.h * f.h).epsilon(1e-9));
  CHECK(rep.b_m == doctest::Approx(f.k * f.k).epsilon(1e-9));
  REQUIRE(rep.probe_radii == std::vector<double>{2.0, 4.0, 20.0});
  CHECK(rep.min_l[0] == doctest::Approx(0.8).epsilon(0.01));
  CHECK(rep.h2);
}
