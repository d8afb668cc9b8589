#include "descartes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "randroots/error.hpp"

namespace randroots::realroots::detail {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;
constexpr double kTiny = 1e-300;

enum class Sign { Neg, Zero, Pos, Unknown };

Sign classify(double mid, double rad) {
  if (rad == 0.0 && mid == 0.0) return Sign::Zero;
  if (mid - rad > 0.0) return Sign::Pos;
  if (mid + rad < 0.0) return Sign::Neg;
  return Sign::Unknown;
}

[[noreturn]] void exhausted(const std::string& why) { throw Error(ErrorCode::PrecisionExhausted, why); }

}  // namespace

BallPoly exact_ball(std::span<const double> coeffs) {
  BallPoly b;
  b.mid.assign(coeffs.begin(), coeffs.end());
  b.rad.assign(coeffs.size(), 0.0);
  return b;
}

BallPoly monomial_to_bernstein_ball(std::span<const double> a, std::span<const double> radii) {
  const int d = static_cast<int>(a.size()) - 1;
  BallPoly b;
  b.mid.assign(a.size(), 0.0);
  b.rad.assign(a.size(), 0.0);
  std::vector<double> magnitude(a.size(), 0.0);
  for (int k = 0; k <= d; ++k) {
    double w = 1.0 / poly::binomial(d, k);
    const double ak = a[static_cast<std::size_t>(k)];
    const double rk = radii.empty() ? 0.0 : radii[static_cast<std::size_t>(k)];
    for (int i = k; i <= d; ++i) {
      if (i > k) w *= static_cast<double>(i) / (i - k);
      const double term = w * ak;
      b.mid[static_cast<std::size_t>(i)] += term;
      magnitude[static_cast<std::size_t>(i)] += std::abs(term);
      b.rad[static_cast<std::size_t>(i)] += w * rk;
    }
  }
  // Weights carry O(d) relative rounding, the sums another O(d).
  const double gamma = (4.0 * d + 16.0) * kUnit;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = b.rad[i] * (1.0 + gamma) + gamma * magnitude[i];
    b.rad[i] = r > 0.0 ? r + kTiny : 0.0;
  }
  return b;
}

void split(const BallPoly& b, double t, BallPoly& left, BallPoly& right) {
  const std::size_t n = b.size();
  std::vector<double> mid = b.mid;
  std::vector<double> rad = b.rad;
  left.mid.resize(n);
  left.rad.resize(n);
  right.mid.resize(n);
  right.rad.resize(n);
  const double s = 1.0 - t;
  const double grow = 1.0 + 8.0 * kUnit;
  left.mid[0] = mid[0];
  left.rad[0] = rad[0];
  right.mid[n - 1] = mid[n - 1];
  right.rad[n - 1] = rad[n - 1];
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t k = 0; k + level < n; ++k) {
      const double pa = s * mid[k];
      const double pb = t * mid[k + 1];
      const double r = s * rad[k] + t * rad[k + 1];
      const double err = 4.0 * kUnit * (std::abs(pa) + std::abs(pb));
      mid[k] = pa + pb;
      const double total = (r + err) * grow;
      rad[k] = total > 0.0 ? total + kTiny : 0.0;
    }
    left.mid[level] = mid[0];
    left.rad[level] = rad[0];
    right.mid[n - 1 - level] = mid[n - 1 - level];
    right.rad[n - 1 - level] = rad[n - 1 - level];
  }
}

VariationBounds variation_bounds(const BallPoly& b) {
  // Dynamic program over the last nonzero sign: 0 none, 1 negative, 2 positive.
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::array<int, 3> lo{0, kInf, kInf};
  std::array<int, 3> hi{0, -kInf, -kInf};
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Sign s = classify(b.mid[k], b.rad[k]);
    const bool can_zero = s == Sign::Zero || s == Sign::Unknown;
    const bool can_neg = s == Sign::Neg || s == Sign::Unknown;
    const bool can_pos = s == Sign::Pos || s == Sign::Unknown;
    std::array<int, 3> nlo{kInf, kInf, kInf};
    std::array<int, 3> nhi{-kInf, -kInf, -kInf};
    for (int state = 0; state < 3; ++state) {
      if (lo[state] >= kInf) continue;
      auto relax = [&](int next, int cost) {
        nlo[next] = std::min(nlo[next], lo[state] + cost);
        nhi[next] = std::max(nhi[next], hi[state] + cost);
      };
      if (can_zero) relax(state, 0);
      if (can_neg) relax(1, state == 2 ? 1 : 0);
      if (can_pos) relax(2, state == 1 ? 1 : 0);
    }
    lo = nlo;
    hi = nhi;
  }
  return {*std::min_element(lo.begin(), lo.end()), *std::max_element(hi.begin(), hi.end())};
}

UnitRoots isolate_unit(const BallPoly& full, const UnitTask& task) {
  if (!(task.lo < task.hi)) exhausted("degenerate unit subinterval");
  BallPoly b = full;
  BallPoly left, right;
  double lo = task.lo;
  double hi = task.hi;
  if (hi < 1.0) {
    split(b, hi, left, right);
    b = left;
  }
  if (lo > 0.0) {
    split(b, lo / hi, left, right);
    b = right;
  }

  UnitRoots out;
  const std::size_t last = b.size() - 1;
  for (bool upper : {false, true}) {
    const std::size_t k = upper ? last : 0;
    Sign s = classify(b.mid[k], b.rad[k]);
    if (s == Sign::Unknown) {
      if (task.exact_zero_at_end && task.exact_zero_at_end(upper)) {
        b.mid[k] = 0.0;
        b.rad[k] = 0.0;
        s = Sign::Zero;
      } else {
        exhausted("endpoint value straddles zero");
      }
    }
    if (s == Sign::Zero && (upper ? task.include_hi : task.include_lo))
      out.endpoint_roots.push_back(upper ? hi : lo);
  }
  if (b.size() == 1) {
    if (b.mid[0] == 0.0 && b.rad[0] == 0.0)
      throw Error(ErrorCode::ZeroPolynomial, "polynomial vanishes identically");
    return out;
  }

  struct Node {
    BallPoly coeffs;
    double a, b;
  };
  static constexpr std::array<double, 9> kSplits = {0.5,    0.4375, 0.5625, 0.375, 0.625,
                                                    0.3125, 0.6875, 0.25,   0.75};
  constexpr std::size_t kMaxNodes = 200000;
  std::vector<Node> stack;
  stack.push_back({std::move(b), lo, hi});
  std::size_t visited = 0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++visited > kMaxNodes) exhausted("bisection node budget exceeded");
    const VariationBounds v = variation_bounds(node.coeffs);
    if (v.max == 0) continue;
    const std::size_t n = node.coeffs.size() - 1;
    const Sign sa = classify(node.coeffs.mid[0], node.coeffs.rad[0]);
    const Sign sb = classify(node.coeffs.mid[n], node.coeffs.rad[n]);
    const bool ends_certified = (sa == Sign::Pos || sa == Sign::Neg) && (sb == Sign::Pos || sb == Sign::Neg);
    if (v.max == 1 && ends_certified) {
      // Root count has the parity of the variation count.
      if (sa != sb) out.isolating.emplace_back(node.a, node.b);
      continue;
    }
    if (v.min == 1 && v.max == 1) {
      out.isolating.emplace_back(node.a, node.b);
      continue;
    }
    if (node.b - node.a < kMinWidth) exhausted("isolation width below tolerance");
    bool done = false;
    for (double f : kSplits) {
      split(node.coeffs, f, left, right);
      if (classify(left.mid[n], left.rad[n]) == Sign::Unknown) continue;
      const double m = node.a + f * (node.b - node.a);
      // Left first on the stack top keeps output ordered.
      stack.push_back({right, m, node.b});
      stack.push_back({left, node.a, m});
      done = true;
      break;
    }
    if (!done) exhausted("no certifiable split point");
  }
  return out;
}

}  // namespace randroots::realroots::detail
