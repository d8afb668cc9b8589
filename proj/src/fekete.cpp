#include "randroots/fekete.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "randroots/error.hpp"

namespace randroots::fekete {

using sphere::Configuration;
using sphere::SpherePoint;

namespace {

const double kLog4OverE = std::log(4.0) - 1.0;

void require_n(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "energy laws need N >= 2");
}

std::vector<SpherePoint> tangent_step(std::span<const SpherePoint> x, std::span<const std::array<double, 3>> g,
                                      double eta) {
  std::vector<SpherePoint> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double px = x[i].x - eta * g[i][0];
    const double py = x[i].y - eta * g[i][1];
    const double pz = x[i].z - eta * g[i][2];
    const double r = std::sqrt(px * px + py * py + pz * pz);
    out[i] = {px / r, py / r, pz / r};
  }
  return out;
}

}  // namespace

double expected_energy_uniform(int n) {
  require_n(n);
  const double nn = n;
  return -(nn * nn / 4.0) * kLog4OverE + (nn / 4.0) * kLog4OverE;
}

double expected_energy_kostlan(int n) {
  require_n(n);
  const double nn = n;
  return -(nn * nn / 4.0) * kLog4OverE - nn * std::log(nn) / 4.0 + (nn / 4.0) * kLog4OverE;
}

EnergyLaw energy_law(int n) { return {n, expected_energy_uniform(n), expected_energy_kostlan(n)}; }

double cn_from_v(int n, double v) {
  require_n(n);
  const double nn = n;
  return (v + (nn * nn / 4.0) * kLog4OverE + nn * std::log(nn) / 4.0) / nn;
}

double vn_from_cn(int n, double c) {
  require_n(n);
  const double nn = n;
  return -(nn * nn / 4.0) * kLog4OverE - nn * std::log(nn) / 4.0 + c * nn;
}

Configuration sample_uniform_sphere(int n, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "configuration needs N >= 2");
  std::vector<SpherePoint> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    double x, y, z, r;
    do {
      x = rng.normal();
      y = rng.normal();
      z = rng.normal();
      r = std::sqrt(x * x + y * y + z * z);
    } while (r == 0.0);
    p = {x / r, y / r, z / r};
  }
  return Configuration(std::move(pts));
}

std::vector<std::array<double, 3>> energy_gradient(const Configuration& c) {
  const auto x = c.points();
  std::vector<std::array<double, 3>> g(x.size(), {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i].x - x[j].x, dy = x[i].y - x[j].y, dz = x[i].z - x[j].z;
      const double inv = 1.0 / (dx * dx + dy * dy + dz * dz);
      g[i][0] -= dx * inv; g[i][1] -= dy * inv; g[i][2] -= dz * inv;
      g[j][0] += dx * inv; g[j][1] += dy * inv; g[j][2] += dz * inv;
    }
  }
  return g;
}

FeketeEstimate minimize_energy(const Configuration& c0, const MinimizeOptions& opts) {
  const auto start = sphere::log_energy_flagged(c0);
  if (start.coincident) throw Error(ErrorCode::CoincidentPoints, "start configuration has coincident points");
  std::vector<SpherePoint> x(c0.points().begin(), c0.points().end());
  double v = start.value;
  double eta = 0.1 / static_cast<double>(x.size());
  FeketeEstimate est{c0, v, cn_from_v(static_cast<int>(x.size()), v), 1, false, 0, {}};
  if (opts.keep_trace) est.energy_trace.push_back(v);

  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    auto g = energy_gradient(Configuration(x));
    double gnorm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dot = g[i][0] * x[i].x + g[i][1] * x[i].y + g[i][2] * x[i].z;
      g[i][0] -= dot * x[i].x; g[i][1] -= dot * x[i].y; g[i][2] -= dot * x[i].z;
      gnorm2 += g[i][0] * g[i][0] + g[i][1] * g[i][1] + g[i][2] * g[i][2];
    }
    if (std::sqrt(gnorm2) < opts.tol) {
      est.converged = true;
      break;
    }
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      auto trial = tangent_step(x, g, eta);
      const auto e = sphere::log_energy_flagged(Configuration(trial));
      if (!e.coincident && e.value <= v - opts.armijo * eta * gnorm2) {
        x = std::move(trial);
        v = e.value;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // step underflow: numerically stationary
    if (opts.keep_trace) est.energy_trace.push_back(v);
    eta *= 1.5;
  }
  est.iterations = iter;
  if (v <= est.v) {
    est.config = Configuration(std::move(x));
    est.v = v;
    est.c_n = cn_from_v(static_cast<int>(est.config.size()), v);
  }
  return est;
}

FeketeEstimate minimize_best_of(int n, int restarts, std::uint64_t seed, const MinimizeOptions& opts,
                                int threads) {
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  std::vector<std::optional<FeketeEstimate>> results(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r; (r = next.fetch_add(1)) < restarts;) {
      Rng rng({seed, static_cast<std::uint64_t>(r)});
      results[static_cast<std::size_t>(r)] = minimize_energy(sample_uniform_sphere(n, rng), opts);
    }
  };
  const int workers = std::clamp(threads, 1, restarts);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r]->v < results[best]->v) best = r;
  FeketeEstimate out = std::move(*results[best]);
  out.restarts = restarts;
  return out;
}

double smale7_gap(const Configuration& c, double vn_reference) {
  return (sphere::log_energy(c) - vn_reference) / std::log(static_cast<double>(c.size()));
}

nlohmann::json to_json(const FeketeEstimate& e, const std::string& points_csv) {
  return {{"N", e.config.size()}, {"V", e.v},           {"C_N", e.c_n},
          {"restarts", e.restarts}, {"converged", e.converged}, {"points_csv", points_csv}};
}

}  // namespace randroots::fekete
