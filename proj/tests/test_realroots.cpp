#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iostream>

#include "randroots/ensembles.hpp"
#include "randroots/error.hpp"
#include "randroots/realroots.hpp"
#include "sturm.hpp"

using namespace randroots;
using namespace randroots::realroots;
using poly::BernsteinPoly;
using poly::MonomialPoly;

namespace {

/// (x - r_0)(x - r_1)...
MonomialPoly from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> n(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= r * c[k];
    }
    c = n;
  }
  return MonomialPoly(c);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("interval counting examples") {
  const MonomialPoly p({-1.0, 0.0, 1.0});
  CHECK(count_roots_interval(p, Interval(0.0, 2.0)).count == 1);
  CHECK(count_roots_interval(from_roots({1, 2, 3}), Interval::line()).count == 3);
  CHECK(count_roots_interval(MonomialPoly({1.0, 0.0, 1.0}), Interval::line()).count == 0);
  // Endpoint roots count as inside.
  CHECK(count_roots_interval(p, Interval(1.0, 2.0)).count == 1);
  CHECK(count_roots_interval(p, Interval(-1.0, 1.0)).count == 2);
  CHECK(count_roots_interval(p, Interval(1.0, 2.0), Strategy::DescartesBisect).count == 1);
  CHECK(count_roots_interval(p, Interval(-1.0, 1.0), Strategy::DescartesBisect).count == 2);
  CHECK_THROWS_AS(Interval(1.0, 1.0), Error);
  CHECK(code_of([] { count_roots_interval(MonomialPoly({0.0, 0.0}), Interval::line()); }) == ErrorCode::ZeroPolynomial);
}

TEST_CASE("whole-line counting examples") {
  CHECK(count_roots_line(MonomialPoly({0.0, -1.0, 0.0, 1.0})).count == 3);
  CHECK(count_roots_line(MonomialPoly({5.0})).count == 0);
  CHECK(count_roots_line(MonomialPoly({0.0, 0.0, 1.0})).count == 1);  // distinct roots
  CHECK(count_roots_line(MonomialPoly({0.0, 0.0, 1.0}), Strategy::SturmExact).count == 1);
  CHECK(code_of([] { count_roots_line(MonomialPoly({1.0, 1e-310})); }) == ErrorCode::DegreeDrop);
  CHECK(cauchy_bound(MonomialPoly({-6.0, 1.0, 1.0})) == 7.0);
}

TEST_CASE("sturm path is exact on clustered roots") {
  const auto p = from_roots({1.0, 1.0 + 1e-9, 2.0});
  CHECK(count_roots_line(p, Strategy::SturmExact).count == 3);
  CHECK(count_roots_interval(p, Interval(0.5, 1.0 + 5e-10), Strategy::SturmExact).count == 1);
  CHECK(code_of([] {
          count_roots_interval(MonomialPoly(std::vector<double>(kMaxSturmDegree + 2, 1.0)), Interval::line(),
                               Strategy::SturmExact);
        }) == ErrorCode::DegreeTooLarge);
}

TEST_CASE("exact sign and sturm chain internals") {
  using namespace randroots::realroots::detail;
  const auto c = exact_integer_coeffs(MonomialPoly({-0.5, 0.0, 2.0}));  // 2x^2 - 1/2, roots +-1/2
  CHECK(exact_sign(c, mpq_class(1, 2)) == 0);
  CHECK(exact_sign(c, mpq_class(0)) < 0);
  CHECK(exact_sign(c, mpq_class(1)) > 0);
  auto chain = SturmChain::build(MonomialPoly({-0.5, 0.0, 2.0}), kSturmBitBudget);
  REQUIRE(chain);
  CHECK(chain->count_half_open(ExactPoint::from_double(-0.5), ExactPoint::from_double(0.5)) == 1);
  CHECK(chain->count_closed(ExactPoint::from_double(-0.5), ExactPoint::from_double(0.5)) == 2);
  ExactPoint minf, pinf;
  minf.infinity = -1;
  pinf.infinity = 1;
  CHECK(chain->count_half_open(minf, pinf) == 2);
}

TEST_CASE("bernstein counting examples") {
  CHECK(count_roots_bernstein(BernsteinPoly({-1.0, 1.0}), Interval(0.0, 1.0)).count == 1);
  CHECK(count_roots_bernstein(BernsteinPoly({1.0, 2.0, 0.5, 3.0}), Interval(0.0, 1.0)).count == 0);
  CHECK(count_roots_bernstein(BernsteinPoly({1.0, 2.0, 0.5, 3.0}), Interval(0.2, 0.7)).count == 0);
  // [1, -1, 1] is 1 - 4x + 4x^2 = (2x - 1)^2: zero discriminant, one distinct root.
  const auto m = poly::bernstein_to_monomial(BernsteinPoly({1.0, -1.0, 1.0}));
  const double disc = m[1] * m[1] - 4.0 * m[2] * m[0];
  CHECK(disc == 0.0);
  CHECK(count_roots_bernstein(BernsteinPoly({1.0, -1.0, 1.0}), Interval(0.0, 1.0)).count == 1);
  // Outside [0, 1] through the projective charts.
  const BernsteinPoly q = poly::monomial_to_bernstein(from_roots({-3.0, 0.25, 4.0}));
  CHECK(count_roots_bernstein(q, Interval::line()).count == 3);
  CHECK(count_roots_bernstein(q, Interval(-realroots::kInf, 0.0)).count == 1);
  CHECK(count_roots_bernstein(q, Interval(1.0, 10.0)).count == 1);
  CHECK(count_roots_bernstein(q, Interval(3.5, 10.0)).count == 1);
  CHECK(count_roots_bernstein(q, Interval(-3.5, 0.3)).count == 2);
  // Exact roots on endpoints: 2(1 - x) + x vanishes at x = 2, -(1 - x) + x at 1/2.
  CHECK(count_roots_bernstein(BernsteinPoly({2.0, 1.0}), Interval(2.0, 10.0)).count == 1);
  CHECK(count_roots_bernstein(BernsteinPoly({2.0, 1.0}), Interval(2.5, 10.0)).count == 0);
  CHECK(count_roots_bernstein(BernsteinPoly({2.0, 1.0}), Interval(-1.0, 2.0)).count == 1);
  CHECK(count_roots_bernstein(BernsteinPoly({-1.0, 1.0}), Interval(0.5, 3.0)).count == 1);
  // A triple root at 1/2 inside the interval.
  const auto cube = poly::monomial_to_bernstein(from_roots({0.5, 0.5, 0.5}));
  CHECK(count_roots_bernstein(cube, Interval(0.0, 1.0)).count == 1);
}

TEST_CASE("isolation examples") {
  const auto a = isolate_roots(MonomialPoly({-2.0, 0.0, 1.0}));
  REQUIRE(a.size() == 2);
  CHECK(a[0].contains(-std::sqrt(2.0)));
  CHECK(a[1].contains(std::sqrt(2.0)));
  CHECK(a[1].width() <= 1e-10 * std::sqrt(2.0) * 1.01);
  CHECK(isolate_roots(MonomialPoly({1.0, 0.0, 1.0})).empty());
  const auto b = isolate_roots(from_roots({-1.0, 0.0, 1.0}));
  REQUIRE(b.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(b[i].contains(static_cast<double>(i) - 1.0));
  CHECK(b[0].hi() < b[1].lo());
  CHECK(b[1].hi() < b[2].lo());
  const auto c = isolate_roots(from_roots({-1.0, 0.5, 2.0}), Strategy::DescartesBisect);
  REQUIRE(c.size() == 3);
  CHECK(c[1].contains(0.5));
}

TEST_CASE("isolation count equals line count on random polynomials") {
  for (int i = 0; i < 200; ++i) {
    Rng rng({21, static_cast<std::uint64_t>(i)});
    const auto p = ensembles::sample_kac(2 + i % 20, rng);
    const auto iv = isolate_roots(p);
    CHECK(static_cast<int>(iv.size()) == count_roots_line(p).count);
    for (std::size_t k = 1; k < iv.size(); ++k) CHECK(iv[k - 1].hi() < iv[k].lo());
  }
}

TEST_CASE("sturm and descartes agree on 1000 kac polynomials") {
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng({22, static_cast<std::uint64_t>(i)});
    const auto p = ensembles::sample_kac(1 + i % 30, rng);
    const int a = count_roots_line(p, Strategy::SturmExact).count;
    const int b = count_roots_line(p, Strategy::DescartesBisect).count;
    agree += a == b;
    if (a != b) std::cerr << "disagreement at trial " << i << ": " << a << " vs " << b << '\n';
  }
  CHECK(agree == 1000);
}

TEST_CASE("companion eigenvalues agree on 500 kostlan polynomials") {
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    Rng rng({23, static_cast<std::uint64_t>(i)});
    const auto p = ensembles::sample_shub_smale_univariate(1 + i % 20, rng);
    const int a = count_roots_line(p).count;
    const int b = count_roots_companion(p).count;
    agree += a == b;
    if (a != b) std::cerr << "companion disagreement at trial " << i << ": " << a << " vs " << b << '\n';
  }
  CHECK(agree >= 495);
}

TEST_CASE("additivity over adjacent intervals") {
  for (int i = 0; i < 300; ++i) {
    Rng rng({24, static_cast<std::uint64_t>(i)});
    const auto p = ensembles::sample_kac(3 + i % 15, rng);
    const double split = rng.normal();
    if (poly::eval_monomial(p, split) == 0.0) continue;
    for (auto s : {Strategy::SturmExact, Strategy::DescartesBisect}) {
      const int left = count_roots_interval(p, Interval(-realroots::kInf, split), s).count;
      const int right = count_roots_interval(p, Interval(split, realroots::kInf), s).count;
      CHECK(left + right == count_roots_line(p, s).count);
    }
  }
}

TEST_CASE("bernstein counting matches monomial counting") {
  for (int i = 0; i < 300; ++i) {
    Rng rng({25, static_cast<std::uint64_t>(i)});
    const auto b = ensembles::sample_bernstein_univariate(1 + i % 12, rng);
    const auto m = poly::bernstein_to_monomial(b);
    CHECK(count_roots_bernstein(b, Interval::line()).count == count_roots_line(m, Strategy::SturmExact).count);
    CHECK(count_roots_bernstein(b, Interval(0.0, 1.0)).count ==
          count_roots_interval(m, Interval(0.0, 1.0), Strategy::SturmExact).count);
    CHECK(count_roots_bernstein(b, Interval(-2.0, 0.5)).count ==
          count_roots_interval(m, Interval(-2.0, 0.5), Strategy::SturmExact).count);
  }
}

TEST_CASE("high degree descartes path") {
  Rng rng({26, 0});
  const auto p = ensembles::sample_kac(1000, rng);
  const auto c = count_roots_line(p);
  CHECK(c.method == Method::DescartesBisect);
  CHECK(c.count >= 0);
  CHECK(c.count <= 1000);
  CHECK(c.count % 2 == 0);  // even degree, real coefficients
}
