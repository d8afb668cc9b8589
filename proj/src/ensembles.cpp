#include "randroots/ensembles.hpp"

#include <cmath>

#include "randroots/error.hpp"

namespace randroots::ensembles {

namespace {

void require_degrees(std::span<const int> degrees, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (static_cast<int>(degrees.size()) != m)
    throw Error(ErrorCode::InvalidArgument, "need one degree per variable/equation");
  for (int d : degrees)
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be >= 1");
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Kac: return "Kac";
    case Kind::ShubSmale: return "ShubSmale";
    case Kind::BernsteinGauss: return "BernsteinGauss";
    case Kind::KostlanComplex: return "KostlanComplex";
    case Kind::Perturbed: return "Perturbed";
    case Kind::BernsteinNormalized: return "BernsteinNormalized";
  }
  return "?";
}

Kind kind_from_string(const std::string& name) {
  for (Kind k : {Kind::Kac, Kind::ShubSmale, Kind::BernsteinGauss, Kind::KostlanComplex, Kind::Perturbed,
                 Kind::BernsteinNormalized})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::ParseError, "field 'kind': unknown ensemble '" + name + "'");
}

void EnsembleSpec::validate() const {
  require_degrees(degrees, m);
  if ((kind == Kind::Kac || kind == Kind::KostlanComplex) && m != 1)
    throw Error(ErrorCode::InvalidArgument, to_string(kind) + " is univariate (m = 1)");
  if (kind == Kind::Perturbed) {
    if (!sigma) throw Error(ErrorCode::InvalidArgument, "Perturbed ensemble needs sigma");
    if (!(*sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
    if (signal) {
      if (static_cast<int>(signal->size()) != m)
        throw Error(ErrorCode::DegreeMismatch, "signal needs m equations");
      for (std::size_t i = 0; i < signal->size(); ++i) {
        if ((*signal)[i].vars() != m) throw Error(ErrorCode::DimensionMismatch, "signal equation has wrong m");
        if ((*signal)[i].degree() > degrees[i])
          throw Error(ErrorCode::DegreeMismatch, "signal degree exceeds noise degree");
      }
    }
  } else {
    if (sigma) throw Error(ErrorCode::InvalidArgument, "sigma is only meaningful for Perturbed");
    if (signal) throw Error(ErrorCode::InvalidArgument, "signal is only meaningful for Perturbed");
  }
}

double shub_smale_variance(int d, const poly::MultiIndex& j) {
  return std::exp(poly::log_multinomial(d, j));
}

poly::MonomialPoly sample_kac(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  for (auto& a : c) a = rng.normal();
  return poly::MonomialPoly(std::move(c));
}

std::vector<poly::MultiPoly> sample_shub_smale(std::span<const int> degrees, int m, Rng& rng) {
  require_degrees(degrees, m);
  std::vector<poly::MultiPoly> system;
  system.reserve(degrees.size());
  for (int d : degrees) {
    const auto indices = poly::multi_indices(m, d);
    std::vector<double> c(indices.size());
    for (std::size_t n = 0; n < indices.size(); ++n)
      c[n] = std::sqrt(shub_smale_variance(d, indices[n])) * rng.normal();
    system.push_back(poly::MultiPoly::from_dense(m, d, std::move(c)));
  }
  return system;
}

poly::MonomialPoly sample_shub_smale_univariate(int d, Rng& rng) {
  const int degrees[] = {d};
  return poly::to_univariate(sample_shub_smale(degrees, 1, rng).front());
}

std::vector<poly::BernsteinMultiPoly> sample_bernstein(std::span<const int> degrees, int m, Rng& rng) {
  require_degrees(degrees, m);
  std::vector<poly::BernsteinMultiPoly> system;
  for (int d : degrees) {
    std::vector<double> c(poly::multi_indices(m, d).size());
    for (auto& a : c) a = rng.normal();
    system.emplace_back(poly::MultiPoly::from_dense(m, d, std::move(c)));
  }
  return system;
}

poly::BernsteinPoly sample_bernstein_univariate(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  for (auto& a : c) a = rng.normal();
  return poly::BernsteinPoly(std::move(c));
}

std::vector<poly::BernsteinMultiPoly> sample_bernstein_normalized(std::span<const int> degrees, int m, Rng& rng) {
  require_degrees(degrees, m);
  std::vector<poly::BernsteinMultiPoly> system;
  for (int d : degrees) {
    const auto idx = poly::multi_indices(m, d);
    std::vector<double> c(idx.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = rng.normal() / std::sqrt(poly::multinomial(d, idx[k]));
    system.emplace_back(poly::MultiPoly::from_dense(m, d, std::move(c)));
  }
  return system;
}

poly::BernsteinPoly sample_bernstein_normalized_univariate(int d, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = rng.normal() / std::sqrt(poly::binomial(d, k));
  return poly::BernsteinPoly(std::move(c));
}

poly::ComplexPoly sample_kostlan_complex(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double sd = std::sqrt(shub_smale_variance(n, {k}));
    const double re = rng.normal();
    const double im = rng.normal();
    c[static_cast<std::size_t>(k)] = {sd * re, sd * im};
  }
  return poly::ComplexPoly(std::move(c));
}

std::vector<poly::MultiPoly> sample_perturbed(std::span<const poly::MultiPoly> signal, double sigma,
                                              std::span<const int> noise_degrees, Rng& rng) {
  const int m = static_cast<int>(noise_degrees.size());
  if (signal.size() != noise_degrees.size())
    throw Error(ErrorCode::DegreeMismatch, "signal and noise have different equation counts");
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (signal[i].vars() != m) throw Error(ErrorCode::DimensionMismatch, "signal equation has wrong m");
    if (signal[i].degree() > noise_degrees[i])
      throw Error(ErrorCode::DegreeMismatch, "signal degree exceeds noise degree");
  }
  const auto noise = sample_shub_smale(noise_degrees, m, rng);
  std::vector<poly::MultiPoly> out;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const poly::MultiPoly padded = signal[i].padded_to(noise_degrees[i]);
    if (sigma == 0.0) {
      out.push_back(padded);
      continue;
    }
    std::vector<double> c(padded.coeffs().begin(), padded.coeffs().end());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] += sigma * noise[i].coeffs()[n];
    out.push_back(poly::MultiPoly::from_dense(m, noise_degrees[i], std::move(c)));
  }
  return out;
}

}  // namespace randroots::ensembles
