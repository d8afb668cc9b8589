#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "randroots/polyalg.hpp"

namespace randroots::realroots::detail {

/// Either a finite exact point or +/- infinity.
struct ExactPoint {
  mpq_class value;
  int infinity = 0;  // -1, 0 (finite), +1

  static ExactPoint from_double(double x);
};

/// Sturm chain p, p', -rem(...), ... kept as primitive integer polynomials.
/// Every double is an exact dyadic rational, so scaling by a power of two
/// turns the input into an integer polynomial with the same roots.
class SturmChain {
 public:
  /// nullopt when a chain coefficient exceeds bit_budget bits.
  static std::optional<SturmChain> build(const poly::MonomialPoly& p, std::size_t bit_budget);
  /// Same from integer coefficients, constant term first.
  static std::optional<SturmChain> build_exact(std::vector<mpz_class> coeffs, std::size_t bit_budget);

  int degree() const { return static_cast<int>(chain_.front().size()) - 1; }
  int sign_changes(const ExactPoint& x) const;
  int sign_of_p(const ExactPoint& x) const;
  /// Distinct roots in (lo, hi].
  int count_half_open(const ExactPoint& lo, const ExactPoint& hi) const;
  /// Distinct roots in [lo, hi].
  int count_closed(const ExactPoint& lo, const ExactPoint& hi) const;

 private:
  explicit SturmChain(std::vector<std::vector<mpz_class>> chain) : chain_(std::move(chain)) {}
  std::vector<std::vector<mpz_class>> chain_;
};

/// Exact integer image of the polynomial: coefficients scaled by a common
/// power of two, exact-zero leading terms stripped. Empty when p == 0.
std::vector<mpz_class> exact_integer_coeffs(const poly::MonomialPoly& p);

/// Exact sign of p at a finite rational point.
int exact_sign(const std::vector<mpz_class>& coeffs, const mpq_class& x);

}  // namespace randroots::realroots::detail
