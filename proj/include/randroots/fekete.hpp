#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "randroots/complexsphere.hpp"
#include "randroots/rng.hpp"

namespace randroots::fekete {

/// Closed-form expected energies for one N.
struct EnergyLaw {
  int n = 0;
  double e_uniform = 0.0;
  double e_kostlan = 0.0;
};

/// -(N^2/4) ln(4/e) + (N/4) ln(4/e): i.i.d. uniform points.
double expected_energy_uniform(int n);
/// Lifted roots of the complex Kostlan polynomial of degree N:
/// -(N^2/4) ln(4/e) - N ln N / 4 + (N/4) ln(4/e).
double expected_energy_kostlan(int n);
EnergyLaw energy_law(int n);

/// C_N in V_N = -(N^2/4) ln(4/e) - N ln N / 4 + C_N N, and its inverse.
double cn_from_v(int n, double v);
double vn_from_cn(int n, double c);

/// N i.i.d. uniform points (normalized Gaussian triples). Requires N >= 2.
sphere::Configuration sample_uniform_sphere(int n, Rng& rng);

/// dV/dx_i = -sum_{j != i} (x_i - x_j) / |x_i - x_j|^2 (ambient gradient).
std::vector<std::array<double, 3>> energy_gradient(const sphere::Configuration& c);

struct MinimizeOptions {
  int max_iters = 5000;
  double tol = 1e-9;       // on the Frobenius norm of the tangential gradient
  double armijo = 1e-4;
  bool keep_trace = false;
};

struct FeketeEstimate {
  sphere::Configuration config;
  double v = 0.0;
  double c_n = 0.0;
  int restarts = 1;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_trace;  // accepted energies, when requested
};

/// Projected gradient descent with Armijo backtracking on the step. The
/// returned energy never exceeds the energy of c0. Throws CoincidentPoints
/// for a start with coincident points; mid-run coincidences end the run
/// with the best configuration so far.
FeketeEstimate minimize_energy(const sphere::Configuration& c0, const MinimizeOptions& opts = {});

/// Best of `restarts` minimizations from uniform random starts on streams
/// (seed, 0..restarts-1); restarts run on up to `threads` workers.
FeketeEstimate minimize_best_of(int n, int restarts, std::uint64_t seed, const MinimizeOptions& opts = {},
                                int threads = 1);

/// (V(c) - reference) / ln N. The reference is caller supplied.
double smale7_gap(const sphere::Configuration& c, double vn_reference);

/// {"N", "V", "C_N", "restarts", "converged", "points_csv"}.
nlohmann::json to_json(const FeketeEstimate& e, const std::string& points_csv);

}  // namespace randroots::fekete
