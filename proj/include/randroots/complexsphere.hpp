#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "randroots/polyalg.hpp"

namespace randroots::sphere {

struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// N >= 2 points on the unit sphere, each within 1e-12 of unit norm.
class Configuration {
 public:
  explicit Configuration(std::vector<SpherePoint> points);

  std::size_t size() const { return points_.size(); }
  std::span<const SpherePoint> points() const { return points_; }
  const SpherePoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<SpherePoint> points_;
};

struct AberthOptions {
  int max_sweeps = 500;
};

/// All N roots (with multiplicity) by Aberth-Ehrlich simultaneous iteration.
/// Errors: DegreeDrop when |a_N| <= 1e-12 max|a_k|; NonConvergence when the
/// sweep cap is hit or a root misses the residual check.
std::vector<std::complex<double>> roots_complex(const poly::ComplexPoly& p, AberthOptions opts = {});

/// X = (2 Re z, 2 Im z, 1 - |z|^2) / (1 + |z|^2).
SpherePoint lift(std::complex<double> z);

/// V = -sum_{i<j} ln |x_i - x_j| in fixed index order with compensated
/// summation. +inf when two points are closer than 1e-14.
double log_energy(const Configuration& c);

struct EnergyValue {
  double value = 0.0;
  bool coincident = false;
};
EnergyValue log_energy_flagged(const Configuration& c);

/// Lift of every root of p, in solver order.
Configuration polynomial_to_config(const poly::ComplexPoly& p, AberthOptions opts = {});

/// CSV with header "x,y,z" and 17 significant digits per value.
void write_config_csv(const Configuration& c, std::ostream& out);
void write_config_csv(const Configuration& c, const std::string& path);
Configuration read_config_csv(std::istream& in);

}  // namespace randroots::sphere
