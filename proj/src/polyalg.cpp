#include "randroots/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "randroots/error.hpp"

namespace randroots::poly {

namespace {

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs at least one coefficient");
}

void enumerate(int m, int remaining, MultiIndex& current, int pos, std::vector<MultiIndex>& out) {
  if (pos == m) {
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current[static_cast<std::size_t>(pos)] = k;
    enumerate(m, remaining - k, current, pos + 1, out);
  }
  current[static_cast<std::size_t>(pos)] = 0;
}

int total(const MultiIndex& j) { return std::accumulate(j.begin(), j.end(), 0); }

// Powers x^0..x^d for each coordinate.
std::vector<std::vector<double>> power_table(std::span<const double> x, int d) {
  std::vector<std::vector<double>> pw(x.size(), std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int k = 1; k <= d; ++k) pw[i][static_cast<std::size_t>(k)] = pw[i][static_cast<std::size_t>(k) - 1] * x[i];
  return pw;
}

}  // namespace

MonomialPoly::MonomialPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_nonempty(coeffs_.size(), "MonomialPoly");
}

bool MonomialPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

BernsteinPoly::BernsteinPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  require_nonempty(coeffs_.size(), "BernsteinPoly");
}

bool BernsteinPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

ComplexPoly::ComplexPoly(std::vector<std::complex<double>> coeffs) : coeffs_(std::move(coeffs)) {
  require_nonempty(coeffs_.size(), "ComplexPoly");
}

std::vector<MultiIndex> multi_indices(int m, int d) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "variable count must be >= 1");
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0");
  std::vector<MultiIndex> out;
  MultiIndex current(static_cast<std::size_t>(m), 0);
  enumerate(m, d, current, 0, out);
  return out;
}

MultiPoly::MultiPoly(int m, int d, std::vector<MultiIndex> indices, std::vector<double> coeffs)
    : m_(m), d_(d), indices_(std::move(indices)), coeffs_(std::move(coeffs)) {}

MultiPoly::MultiPoly(int m, int d) : m_(m), d_(d), indices_(multi_indices(m, d)) {
  coeffs_.assign(indices_.size(), 0.0);
}

MultiPoly::MultiPoly(int m, int d, const std::map<MultiIndex, double>& coeffs) : MultiPoly(m, d) {
  for (const auto& [j, a] : coeffs) {
    if (static_cast<int>(j.size()) != m)
      throw Error(ErrorCode::InvalidArgument, "multi-index length differs from variable count");
    if (std::any_of(j.begin(), j.end(), [](int e) { return e < 0; }))
      throw Error(ErrorCode::InvalidArgument, "negative exponent in multi-index");
    if (total(j) > d) throw Error(ErrorCode::InvalidArgument, "multi-index exceeds total degree");
    coeffs_[static_cast<std::size_t>(position(j))] += a;
  }
}

MultiPoly MultiPoly::from_dense(int m, int d, std::vector<double> coeffs) {
  auto indices = multi_indices(m, d);
  if (coeffs.size() != indices.size())
    throw Error(ErrorCode::InvalidArgument, "dense coefficient count does not match (m, d)");
  return MultiPoly(m, d, std::move(indices), std::move(coeffs));
}

std::ptrdiff_t MultiPoly::position(const MultiIndex& j) const {
  if (static_cast<int>(j.size()) != m_) return -1;
  auto it = std::lower_bound(indices_.begin(), indices_.end(), j);
  if (it == indices_.end() || *it != j) return -1;
  return it - indices_.begin();
}

double MultiPoly::coeff(const MultiIndex& j) const {
  const auto pos = position(j);
  return pos < 0 ? 0.0 : coeffs_[static_cast<std::size_t>(pos)];
}

MultiPoly MultiPoly::padded_to(int d) const {
  if (d < d_) throw Error(ErrorCode::DegreeMismatch, "cannot pad to a lower degree");
  MultiPoly out(m_, d);
  for (std::size_t k = 0; k < indices_.size(); ++k)
    out.coeffs_[static_cast<std::size_t>(out.position(indices_[k]))] = coeffs_[k];
  return out;
}

bool MultiPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double eval_monomial(const MonomialPoly& p, double x) {
  const auto c = p.coeffs();
  double acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

std::complex<double> eval_complex(const ComplexPoly& p, std::complex<double> z) {
  const auto c = p.coeffs();
  std::complex<double> acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

double eval_bernstein(const BernsteinPoly& p, double x) {
  std::vector<double> b(p.coeffs().begin(), p.coeffs().end());
  const double s = 1.0 - x;
  for (std::size_t level = b.size() - 1; level > 0; --level)
    for (std::size_t k = 0; k < level; ++k) b[k] = s * b[k] + x * b[k + 1];
  return b[0];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r < 0x1.0p53 ? std::round(r) : r;
}

double multinomial(int d, const MultiIndex& j) {
  double r = 1.0;
  int left = d;
  for (int e : j) {
    r *= binomial(left, e);
    left -= e;
  }
  return r;
}

double log_multinomial(int d, const MultiIndex& j) {
  double r = std::lgamma(d + 1.0);
  int used = 0;
  for (int e : j) {
    r -= std::lgamma(e + 1.0);
    used += e;
  }
  return r - std::lgamma(d - used + 1.0);
}

double eval_bernstein_multi(const BernsteinMultiPoly& p, std::span<const double> x) {
  const MultiPoly& c = p.coefficients();
  if (static_cast<int>(x.size()) != c.vars())
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variable count");
  const int d = c.degree();
  const auto pw = power_table(x, d);
  double rest = 1.0;
  for (double xi : x) rest -= xi;
  std::vector<double> rest_pw(static_cast<std::size_t>(d) + 1, 1.0);
  for (int k = 1; k <= d; ++k) rest_pw[static_cast<std::size_t>(k)] = rest_pw[static_cast<std::size_t>(k) - 1] * rest;
  double acc = 0.0;
  const auto idx = c.indices();
  const auto a = c.coeffs();
  for (std::size_t n = 0; n < idx.size(); ++n) {
    double term = a[n] * multinomial(d, idx[n]);
    for (std::size_t i = 0; i < x.size(); ++i) term *= pw[i][static_cast<std::size_t>(idx[n][i])];
    acc += term * rest_pw[static_cast<std::size_t>(d - total(idx[n]))];
  }
  return acc;
}

MonomialPoly bernstein_to_monomial(const BernsteinPoly& p) {
  const int d = p.degree();
  if (d > kMaxBasisChangeDegree)
    throw Error(ErrorCode::DegreeTooLarge, "Bernstein degree " + std::to_string(d) + " exceeds basis-change guard");
  std::vector<double> a(static_cast<std::size_t>(d) + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    const double scaled = p[k] * binomial(d, k);
    for (int i = k; i <= d; ++i) {
      const double sign = ((i - k) % 2 == 0) ? 1.0 : -1.0;
      a[static_cast<std::size_t>(i)] += sign * scaled * binomial(d - k, i - k);
    }
  }
  return MonomialPoly(std::move(a));
}

MultiPoly bernstein_to_monomial(const BernsteinMultiPoly& p) {
  const MultiPoly& c = p.coefficients();
  const int m = c.vars();
  const int d = c.degree();
  if (d > kMaxBasisChangeDegree)
    throw Error(ErrorCode::DegreeTooLarge, "Bernstein degree " + std::to_string(d) + " exceeds basis-change guard");
  std::vector<double> out(c.size(), 0.0);
  MultiPoly layout(m, d);
  const auto idx = c.indices();
  for (std::size_t n = 0; n < idx.size(); ++n) {
    if (c.coeffs()[n] == 0.0) continue;
    const double lead = c.coeffs()[n] * multinomial(d, idx[n]);
    const int r = d - total(idx[n]);
    for (const auto& q : multi_indices(m, r)) {
      const double sign = (total(q) % 2 == 0) ? 1.0 : -1.0;
      MultiIndex target = idx[n];
      for (int i = 0; i < m; ++i) target[static_cast<std::size_t>(i)] += q[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(layout.position(target))] += sign * lead * multinomial(r, q);
    }
  }
  return MultiPoly::from_dense(m, d, std::move(out));
}

BernsteinPoly monomial_to_bernstein(const MonomialPoly& p) {
  const int d = p.degree();
  std::vector<double> b(static_cast<std::size_t>(d) + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    // C(i,k)/C(d,k), advanced in i by the ratio i/(i-k).
    double w = 1.0 / binomial(d, k);
    for (int i = k; i <= d; ++i) {
      if (i > k) w *= static_cast<double>(i) / (i - k);
      b[static_cast<std::size_t>(i)] += w * p[k];
    }
  }
  return BernsteinPoly(std::move(b));
}

double eval_multi(const MultiPoly& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.vars())
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variable count");
  const auto pw = power_table(x, f.degree());
  const auto idx = f.indices();
  const auto a = f.coeffs();
  double acc = 0.0;
  for (std::size_t n = 0; n < idx.size(); ++n) {
    if (a[n] == 0.0) continue;
    double term = a[n];
    for (std::size_t i = 0; i < x.size(); ++i) term *= pw[i][static_cast<std::size_t>(idx[n][i])];
    acc += term;
  }
  return acc;
}

MonomialPoly derivative(const MonomialPoly& p) {
  if (p.degree() == 0) return MonomialPoly({0.0});
  std::vector<double> c(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) c[static_cast<std::size_t>(k) - 1] = k * p[k];
  return MonomialPoly(std::move(c));
}

std::vector<double> gradient(const MultiPoly& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.vars())
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variable count");
  const auto pw = power_table(x, f.degree());
  const auto idx = f.indices();
  const auto a = f.coeffs();
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t n = 0; n < idx.size(); ++n) {
    if (a[n] == 0.0) continue;
    for (std::size_t v = 0; v < x.size(); ++v) {
      const int e = idx[n][v];
      if (e == 0) continue;
      double term = a[n] * e;
      for (std::size_t i = 0; i < x.size(); ++i)
        term *= pw[i][static_cast<std::size_t>(i == v ? e - 1 : idx[n][i])];
      g[v] += term;
    }
  }
  return g;
}

MonomialPoly to_univariate(const MultiPoly& f) {
  if (f.vars() != 1) throw Error(ErrorCode::DimensionMismatch, "univariate view needs m = 1");
  return MonomialPoly(std::vector<double>(f.coeffs().begin(), f.coeffs().end()));
}

MultiPoly to_multi(const MonomialPoly& p) {
  return MultiPoly::from_dense(1, p.degree(), std::vector<double>(p.coeffs().begin(), p.coeffs().end()));
}

}  // namespace randroots::poly
