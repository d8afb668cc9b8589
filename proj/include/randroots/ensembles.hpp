#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randroots/polyalg.hpp"
#include "randroots/rng.hpp"

namespace randroots::ensembles {

/// BernsteinNormalized draws a_j ~ N(0, 1 / C(d; j)) against the same basis,
/// i.e. standard Gaussians against sqrt(C(d; j)) x^j (1 - |x|)^(d - |j|).
enum class Kind { Kac, ShubSmale, BernsteinGauss, KostlanComplex, Perturbed, BernsteinNormalized };

std::string to_string(Kind k);
/// Throws ParseError for an unknown name.
Kind kind_from_string(const std::string& name);

/// Coefficient law of one random polynomial or system.
struct EnsembleSpec {
  Kind kind = Kind::Kac;
  int m = 1;
  std::vector<int> degrees;
  std::optional<double> sigma;
  std::optional<std::vector<poly::MultiPoly>> signal;

  /// degrees.size() == m, all degrees >= 1, sigma >= 0 present iff Perturbed,
  /// signal only for Perturbed. Throws InvalidArgument otherwise.
  void validate() const;

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

/// Variance of a_j for degree d under the Shub-Smale law: d!/(j! (d-|j|)!),
/// evaluated in log space.
double shub_smale_variance(int d, const poly::MultiIndex& j);

poly::MonomialPoly sample_kac(int d, Rng& rng);

std::vector<poly::MultiPoly> sample_shub_smale(std::span<const int> degrees, int m, Rng& rng);
/// m = 1 shortcut returning the monomial form.
poly::MonomialPoly sample_shub_smale_univariate(int d, Rng& rng);

std::vector<poly::BernsteinMultiPoly> sample_bernstein(std::span<const int> degrees, int m, Rng& rng);
poly::BernsteinPoly sample_bernstein_univariate(int d, Rng& rng);
std::vector<poly::BernsteinMultiPoly> sample_bernstein_normalized(std::span<const int> degrees, int m, Rng& rng);
poly::BernsteinPoly sample_bernstein_normalized_univariate(int d, Rng& rng);

poly::ComplexPoly sample_kostlan_complex(int n, Rng& rng);

/// signal + sigma * X with X fresh Shub-Smale noise of the given degrees.
/// Signal equations are zero-padded to the noise degree. sigma = 0 returns
/// the padded signal bit for bit. Throws DegreeMismatch when a signal
/// degree exceeds its noise degree or the shapes disagree.
std::vector<poly::MultiPoly> sample_perturbed(std::span<const poly::MultiPoly> signal, double sigma,
                                              std::span<const int> noise_degrees, Rng& rng);

}  // namespace randroots::ensembles
