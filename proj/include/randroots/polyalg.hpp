#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace randroots::poly {

/// Univariate polynomial a_0 + a_1 x + ... + a_d x^d. The degree is the
/// structural length minus one; a tiny leading coefficient is kept as is.
class MonomialPoly {
 public:
  explicit MonomialPoly(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  bool is_zero() const;

  friend bool operator==(const MonomialPoly&, const MonomialPoly&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Univariate polynomial in the degree-d Bernstein basis
/// b_{d,k}(x) = C(d,k) x^k (1-x)^(d-k).
class BernsteinPoly {
 public:
  explicit BernsteinPoly(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  bool is_zero() const;

  friend bool operator==(const BernsteinPoly&, const BernsteinPoly&) = default;

 private:
  std::vector<double> coeffs_;
};

class ComplexPoly {
 public:
  explicit ComplexPoly(std::vector<std::complex<double>> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::complex<double> operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

 private:
  std::vector<std::complex<double>> coeffs_;
};

using MultiIndex = std::vector<int>;

/// All multi-indices j in N^m with |j| <= d, in lexicographic order.
std::vector<MultiIndex> multi_indices(int m, int d);

/// Dense m-variate polynomial of total degree d: one coefficient for every
/// multi-index with |j| <= d, stored in the order of multi_indices(m, d).
class MultiPoly {
 public:
  /// Zero polynomial.
  MultiPoly(int m, int d);
  /// Unlisted indices are zero. Throws InvalidArgument for |j| > d or a
  /// wrong index length.
  MultiPoly(int m, int d, const std::map<MultiIndex, double>& coeffs);
  /// Coefficients in multi_indices(m, d) order.
  static MultiPoly from_dense(int m, int d, std::vector<double> coeffs);

  int vars() const { return m_; }
  int degree() const { return d_; }
  std::span<const MultiIndex> indices() const { return indices_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient of x^j; zero when |j| > d.
  double coeff(const MultiIndex& j) const;
  /// Position of j in the dense order, or -1.
  std::ptrdiff_t position(const MultiIndex& j) const;

  /// Same polynomial stored at a larger total degree.
  MultiPoly padded_to(int d) const;
  bool is_zero() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.m_ == b.m_ && a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
  }

 private:
  MultiPoly(int m, int d, std::vector<MultiIndex> indices, std::vector<double> coeffs);

  int m_;
  int d_;
  std::vector<MultiIndex> indices_;
  std::vector<double> coeffs_;
};

/// Multivariate polynomial in the simplex Bernstein basis
/// b_{d,j}(x) = C(d; j) x^j (1 - x_1 - ... - x_m)^(d - |j|). The coefficient
/// container reuses the dense multi-index layout of MultiPoly.
class BernsteinMultiPoly {
 public:
  explicit BernsteinMultiPoly(MultiPoly coeffs) : coeffs_(std::move(coeffs)) {}

  int vars() const { return coeffs_.vars(); }
  int degree() const { return coeffs_.degree(); }
  const MultiPoly& coefficients() const { return coeffs_; }

  friend bool operator==(const BernsteinMultiPoly&, const BernsteinMultiPoly&) = default;

 private:
  MultiPoly coeffs_;
};

double eval_monomial(const MonomialPoly& p, double x);
std::complex<double> eval_complex(const ComplexPoly& p, std::complex<double> z);

/// de Casteljau evaluation; valid for any real x.
double eval_bernstein(const BernsteinPoly& p, double x);
double eval_bernstein_multi(const BernsteinMultiPoly& p, std::span<const double> x);

inline constexpr int kMaxBasisChangeDegree = 60;

/// Exact basis change. Throws DegreeTooLarge above kMaxBasisChangeDegree.
MonomialPoly bernstein_to_monomial(const BernsteinPoly& p);
/// Monomial form of a simplex-Bernstein polynomial (same degree guard).
MultiPoly bernstein_to_monomial(const BernsteinMultiPoly& p);
/// Bernstein coefficients on [0, 1] of a monomial polynomial.
BernsteinPoly monomial_to_bernstein(const MonomialPoly& p);

double eval_multi(const MultiPoly& f, std::span<const double> x);
MonomialPoly derivative(const MonomialPoly& p);
std::vector<double> gradient(const MultiPoly& f, std::span<const double> x);

/// Univariate view of an m = 1 MultiPoly and back.
MonomialPoly to_univariate(const MultiPoly& f);
MultiPoly to_multi(const MonomialPoly& p);

double binomial(int n, int k);
/// d! / (j_1! ... j_m! (d - |j|)!) as a product of binomials.
double multinomial(int d, const MultiIndex& j);
/// ln(d! / (j_1! ... j_m! (d - |j|)!)).
double log_multinomial(int d, const MultiIndex& j);

}  // namespace randroots::poly
