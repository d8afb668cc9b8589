// Acceptance run: one PASS/FAIL line per criterion, detail lines indented.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "randroots/complexsphere.hpp"
#include "randroots/ensembles.hpp"
#include "randroots/error.hpp"
#include "randroots/fekete.hpp"
#include "randroots/harness.hpp"
#include "randroots/sysroots.hpp"

using namespace randroots;
using harness::ExperimentName;
using harness::ExperimentSpec;
using harness::Report;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what, double seconds) {
  std::printf("criterion %2d: %s  %s (%.1f s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run_criterion(int id, const std::string& what, const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  error: %s\n", e.what());
  }
  verdict(id, ok, what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::vector<ExperimentSpec> specs_named(ExperimentName name) {
  std::vector<ExperimentSpec> out;
  for (const auto& s : harness::predefined_specs())
    if (s.name == name) out.push_back(s);
  return out;
}

std::string label(const ExperimentSpec& s) {
  std::string out = harness::to_string(s.name) + " d=";
  for (std::size_t i = 0; i < s.ensemble.degrees.size(); ++i)
    out += (i ? "," : "") + std::to_string(s.ensemble.degrees[i]);
  return out;
}

bool z_within(const Report& r, double limit) {
  const bool ok = r.stats.z && std::abs(*r.stats.z) <= limit;
  std::printf("  %-28s mean %.5f  theory %.5f  stderr %.5f  z %+.2f  flagged %lld  %s\n", label(r.spec).c_str(),
              r.stats.mean, r.stats.theoretical.value_or(NAN), r.stats.stderr_, r.stats.z.value_or(NAN),
              static_cast<long long>(r.flagged), ok ? "ok" : "off");
  return ok;
}

bool measures_ok() {
  bool ok = true;
  for (const auto& s : specs_named(ExperimentName::ProjectiveMeasure)) {
    Rng rng({s.seed, 0});
    const auto est = harness::estimate_projective_measure(*s.region, s.ensemble.m, s.trials, rng);
    const double want = *est.stats.theoretical;
    const bool good = std::abs(est.stats.mean - want) <= 3.0 * est.stats.stderr_;
    std::printf("  projective measure m=%d %-8s estimate %.5f  exact %.5f  stderr %.5f  %s\n", s.ensemble.m,
                s.region->kind == harness::RegionSpec::Kind::Simplex ? "simplex" : "[0,1]", est.stats.mean, want,
                est.stats.stderr_, good ? "ok" : "off");
    ok = ok && good;
  }
  return ok;
}

bool property_suites() {
  bool ok = true;
  auto report = [&](const char* name, bool good) {
    std::printf("  %-44s %s\n", name, good ? "ok" : "off");
    ok = ok && good;
  };

  {
    Rng rng({71, 0});
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double scale = std::pow(10.0, 12.0 * rng.uniform() - 6.0);
      worst = std::max(worst, std::abs(sphere::lift({scale * rng.normal(), scale * rng.normal()}).norm() - 1.0));
    }
    report("lift unit norm over 1e5 points", worst <= 1e-12);
  }
  {
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      Rng rng({72, static_cast<std::uint64_t>(t)});
      const int n = 2 + t % 49;
      const auto p = ensembles::sample_kostlan_complex(n, rng);
      const auto r = sphere::roots_complex(p);
      std::complex<double> sum = 0.0, prod = 1.0;
      for (auto z : r) {
        sum += z;
        prod *= z;
      }
      const auto ws = -p[n - 1] / p[n];
      const auto wp = (n % 2 == 0 ? 1.0 : -1.0) * p[0] / p[n];
      bad += !(std::abs(sum - ws) <= 1e-8 * (1.0 + std::abs(ws)) && std::abs(prod - wp) <= 1e-8 * std::abs(wp));
    }
    report("Aberth Vieta identities over 1e3 polynomials", bad == 0);
  }
  {
    Rng rng({73, 0});
    const auto c = fekete::sample_uniform_sphere(15, rng);
    const auto g = fekete::energy_gradient(c);
    const double h = 1e-6;
    double worst = 0.0;
    std::vector<sphere::SpherePoint> pts(c.points().begin(), c.points().end());
    auto ambient = [&]() {
      double v = 0.0;
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
          const double dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y, dz = pts[a].z - pts[b].z;
          v -= 0.5 * std::log(dx * dx + dy * dy + dz * dz);
        }
      return v;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (int k = 0; k < 3; ++k) {
        double* coord = k == 0 ? &pts[i].x : k == 1 ? &pts[i].y : &pts[i].z;
        const double keep = *coord;
        *coord = keep + h;
        const double up = ambient();
        *coord = keep - h;
        const double down = ambient();
        *coord = keep;
        const double fd = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(fd - g[i][k]) / std::max(1.0, std::abs(fd)));
      }
    report("energy gradient vs finite differences", worst < 1e-4);
  }
  {
    Rng rng({74, 0});
    fekete::MinimizeOptions opts;
    opts.keep_trace = true;
    const auto est = fekete::minimize_energy(fekete::sample_uniform_sphere(30, rng), opts);
    bool mono = est.energy_trace.size() >= 2;
    for (std::size_t i = 1; i < est.energy_trace.size(); ++i) mono = mono && est.energy_trace[i] <= est.energy_trace[i - 1];
    report("minimizer energy trace is monotone", mono);
  }
  {
    bool same = true;
    for (auto s : harness::predefined_specs()) {
      // Reduced sizes; the code path is the one the full runs take.
      s.trials = std::max(200, s.trials / 20);
      if (s.name == ExperimentName::KacAsym) s.trials = 200;
      const auto a = harness::run_experiment(s, {.threads = 1});
      const auto b = harness::run_experiment(s, {.threads = 4});
      const auto c = harness::run_experiment(s, {.threads = 8});
      const bool eq = a.same_result(b) && a.same_result(c);
      if (!eq) std::printf("  thread-count dependence in %s\n", label(s).c_str());
      same = same && eq;
    }
    report("reports identical across 1, 4 and 8 threads", same);
  }
  return ok;
}

}  // namespace

int main() {
  std::printf("randroots acceptance run\n");

  run_criterion(1, "Shub-Smale univariate, |mean - sqrt(d)| <= 3 stderr", [] {
    bool ok = true;
    for (const auto& s : specs_named(ExperimentName::ShubSmaleUni)) ok = z_within(harness::run_experiment(s), 3.0) && ok;
    return ok;
  });

  run_criterion(2, "Shub-Smale bivariate (2,2), |mean - 2| <= 3 stderr, flagged <= 1%", [] {
    const auto s = specs_named(ExperimentName::ShubSmaleBiv).front();
    const auto r = harness::run_experiment(s);
    const bool ok = z_within(r, 3.0);
    const double rate = static_cast<double>(r.flagged) / s.trials;
    std::printf("  flagged rate %.4f\n", rate);
    return ok && rate <= 0.01;
  });

  run_criterion(3, "Bernstein d=9 line/interval |z| <= 3, projective measures within 3 stderr", [] {
    bool ok = true;
    for (auto name : {ExperimentName::BernsteinLine, ExperimentName::BernsteinInterval}) {
      const auto s = specs_named(name).front();
      ok = z_within(harness::run_experiment(s), 3.0) && ok;
    }
    ok = measures_ok() && ok;
    std::printf("  supplementary, a_k ~ N(0, 1/C(9,k)) against the same basis:\n");
    for (auto name : {ExperimentName::BernsteinLine, ExperimentName::BernsteinInterval}) {
      auto s = specs_named(name).front();
      s.ensemble.kind = ensembles::Kind::BernsteinNormalized;
      z_within(harness::run_experiment(s), 3.0);
    }
    return ok;
  });

  run_criterion(4, "Kac mean - (2/pi) ln d in [0, 1.2], means increasing in d", [] {
    bool ok = true;
    double prev = -1.0;
    for (const auto& s : specs_named(ExperimentName::KacAsym)) {
      const auto r = harness::run_experiment(s);
      const double gap = r.stats.mean - *r.stats.theoretical;
      const bool good = r.pass && r.stats.mean > prev;
      std::printf("  %-28s mean %.4f  (2/pi) ln d %.4f  gap %.4f  stderr %.4f  flagged %lld  %s\n",
                  label(s).c_str(), r.stats.mean, *r.stats.theoretical, gap, r.stats.stderr_,
                  static_cast<long long>(r.flagged), good ? "ok" : "off");
      prev = r.stats.mean;
      ok = ok && good;
    }
    return ok;
  });

  run_criterion(5, "Kostlan energy within 3 stderr of the closed form", [] {
    const double e2 = fekete::expected_energy_kostlan(2);
    bool ok = std::abs(e2 - (0.5 - 1.5 * std::log(2.0))) <= 1e-12 && std::abs(e2 + 0.539721) <= 5e-7;
    std::printf("  closed form at N=2: %.6f\n", e2);
    for (const auto& s : specs_named(ExperimentName::KostlanEnergy)) ok = z_within(harness::run_experiment(s), 3.0) && ok;
    return ok;
  });

  run_criterion(6, "uniform energy N=100, |z| <= 3", [] {
    const auto s = specs_named(ExperimentName::UniformEnergy).front();
    const double n = s.ensemble.degrees[0];
    const bool formula =
        std::abs(fekete::expected_energy_uniform(100) + (n * n - n) / 4.0 * std::log(4.0 / std::numbers::e)) <= 1e-9;
    return z_within(harness::run_experiment(s), 3.0) && formula;
  });

  run_criterion(7, "e_uniform(N) - e_kostlan(N) = N ln N / 4 to 1e-12, N <= 1e4", [] {
    double worst = 0.0;
    for (int n = 2; n <= 10000; ++n) {
      const auto law = fekete::energy_law(n);
      const double want = n * std::log(static_cast<double>(n)) / 4.0;
      worst = std::max(worst, std::abs(law.e_uniform - law.e_kostlan - want) / std::max(1.0, want));
    }
    std::printf("  worst relative deviation %.3g\n", worst);
    return worst <= 1e-12;
  });

  run_criterion(8, "Fekete minimizer: exact small cases, C_N bracket and Kostlan bound", [] {
    bool ok = true;
    const double exact[] = {-std::log(2.0), -1.5 * std::log(3.0), -3.0 * std::log(8.0 / 3.0)};
    for (int n = 2; n <= 4; ++n) {
      const auto est = fekete::minimize_best_of(n, 5, harness::kDefaultSeed);
      const double err = std::abs(est.v - exact[n - 2]);
      std::printf("  N=%d  V %.10f  exact %.10f  error %.2e\n", n, est.v, exact[n - 2], err);
      ok = ok && err <= 1e-5;
    }
    for (const auto& s : specs_named(ExperimentName::FeketeMin)) {
      const auto r = harness::run_experiment(s);
      const double best = r.extra["best_v"];
      const double cn = r.extra["best_c_n"];
      const double bound = r.extra["kostlan_bound"];
      const bool good = cn >= -0.17 && cn <= -0.01 && best <= bound;
      std::printf("  N=%d  best-of-%d V %.6f  C_N %.5f  Kostlan mean %.6f  %s\n", s.ensemble.degrees[0], s.restarts,
                  best, cn, bound, good ? "ok" : "off");
      ok = ok && good;
    }
    return ok;
  });

  run_criterion(9, "smoothed analysis for T = x^2 - 1", [] {
    const auto base = specs_named(ExperimentName::SmoothedDecay).front();
    const auto& sig = *base.signal;
    bool ok = true;
    const auto rows1 = harness::smoothed_decay_experiment(sig, {1, 2, 3}, 1.0, base.trials, base.seed);
    for (const auto& row : rows1) {
      const bool exact = row.n_signal && *row.n_signal == (std::int64_t{1} << row.m);
      std::printf("  m=%d  N^P %lld  %s\n", row.m, static_cast<long long>(row.n_signal.value_or(-1)),
                  exact ? "ok" : "off");
      ok = ok && exact;
    }
    {
      const auto& row = rows1[1];
      const double sep = (static_cast<double>(*row.n_signal) - row.perturbed->mean) / row.perturbed->stderr_;
      std::printf("  sigma=1 m=2  E N^(P+X) %.4f  stderr %.4f  separation %.1f stderr\n", row.perturbed->mean,
                  row.perturbed->stderr_, sep);
      ok = ok && sep >= 3.0;
    }
    const auto rows100 = harness::smoothed_decay_experiment(sig, {1, 2}, 100.0, base.trials, base.seed);
    for (const auto& row : rows100) {
      const double want = std::sqrt(std::ldexp(1.0, row.m));
      const double z = (row.perturbed->mean - want) / row.perturbed->stderr_;
      std::printf("  sigma=100 m=%d  E N^(P+X) %.4f  sqrt(2^m) %.4f  z %+.2f\n", row.m, row.perturbed->mean, want, z);
      ok = ok && std::abs(z) <= 3.0;
    }
    const poly::MultiPoly p(1, 1, {{{1}, 1.0}});
    const std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 5.0, 20.0};
    const auto f = sysroots::functionals(p, 1, radii);
    double worst = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double want = radii[i] * radii[i] / (1 + radii[i] * radii[i]);
      worst = std::max(worst, std::abs(f.l[i] - want) / want);
    }
    std::printf("  P=x  L(r) worst relative error %.2e  H %.5f  K %.5f\n", worst, f.h, f.k);
    return ok && worst <= 0.01;
  });

  run_criterion(10, "numerical property suites and thread-count reproducibility", property_suites);

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
