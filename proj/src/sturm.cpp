#include "sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace randroots::realroots::detail {

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int sgn(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  for (std::size_t k = a.size() - 1;; --k) {
    const mpz_class c = a[k];
    for (std::size_t i = 0; i <= k; ++i) a[i] *= lb;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
    if (k == db) break;
  }
  a.resize(db);
  trim(a);
  return a;
}

std::size_t max_bits(const IntPoly& p) {
  std::size_t bits = 0;
  for (const auto& c : p) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

int sign_at(const IntPoly& p, const ExactPoint& x) {
  if (x.infinity != 0) {
    const int lead = sgn(p.back());
    const bool odd = (p.size() - 1) % 2 == 1;
    return (x.infinity < 0 && odd) ? -lead : lead;
  }
  return exact_sign(p, x.value);
}

}  // namespace

ExactPoint ExactPoint::from_double(double x) {
  ExactPoint out;
  if (std::isinf(x)) {
    out.infinity = x > 0 ? 1 : -1;
  } else {
    out.value = mpq_class(x);
  }
  return out;
}

std::vector<mpz_class> exact_integer_coeffs(const poly::MonomialPoly& p) {
  const auto c = p.coeffs();
  int min_exp = std::numeric_limits<int>::max();
  for (double a : c) {
    if (a == 0.0) continue;
    int e;
    std::frexp(a, &e);
    min_exp = std::min(min_exp, e - 53);
  }
  IntPoly out;
  if (min_exp == std::numeric_limits<int>::max()) return out;
  out.reserve(c.size());
  for (double a : c) {
    if (a == 0.0) {
      out.emplace_back(0);
      continue;
    }
    int e;
    const double f = std::frexp(a, &e);
    mpz_class mant(std::ldexp(f, 53));  // exact 53-bit integer
    mpz_mul_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 53 - min_exp));
    out.push_back(std::move(mant));
  }
  trim(out);
  return out;
}

int exact_sign(const std::vector<mpz_class>& p, const mpq_class& x) {
  // sign of sum c_i n^i q^(D-i) with x = n/q, q > 0.
  const mpz_class& n = x.get_num();
  const mpz_class& q = x.get_den();
  const std::size_t deg = p.size() - 1;
  mpz_class acc = p.back();
  mpz_class qpow = 1;
  for (std::size_t i = deg; i-- > 0;) {
    qpow *= q;
    acc *= n;
    acc += p[i] * qpow;
  }
  return sgn(acc);
}

std::optional<SturmChain> SturmChain::build(const poly::MonomialPoly& p, std::size_t bit_budget) {
  return build_exact(exact_integer_coeffs(p), bit_budget);
}

std::optional<SturmChain> SturmChain::build_exact(std::vector<mpz_class> coeffs, std::size_t bit_budget) {
  IntPoly p0 = std::move(coeffs);
  trim(p0);
  if (p0.empty()) return std::nullopt;
  make_primitive(p0);
  std::vector<IntPoly> chain{p0};
  if (p0.size() == 1) return SturmChain(std::move(chain));
  IntPoly p1(p0.size() - 1);
  for (std::size_t k = 1; k < p0.size(); ++k) p1[k - 1] = p0[k] * static_cast<unsigned long>(k);
  make_primitive(p1);
  chain.push_back(std::move(p1));
  while (chain.back().size() > 1) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    const std::size_t delta = a.size() - b.size();
    const bool flip = sgn(b.back()) < 0 && (delta + 1) % 2 == 1;
    // next = -(positive multiple of) rem(a, b)
    if (!flip)
      for (auto& c : r) c = -c;
    make_primitive(r);
    if (max_bits(r) > bit_budget) return std::nullopt;
    chain.push_back(std::move(r));
  }
  return SturmChain(std::move(chain));
}

int SturmChain::sign_changes(const ExactPoint& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::sign_of_p(const ExactPoint& x) const { return sign_at(chain_.front(), x); }

int SturmChain::count_half_open(const ExactPoint& lo, const ExactPoint& hi) const {
  return sign_changes(lo) - sign_changes(hi);
}

int SturmChain::count_closed(const ExactPoint& lo, const ExactPoint& hi) const {
  const int at_lo = (lo.infinity == 0 && sign_of_p(lo) == 0) ? 1 : 0;
  return count_half_open(lo, hi) + at_lo;
}

}  // namespace randroots::realroots::detail
