#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "randroots/error.hpp"
#include "randroots/harness.hpp"

using namespace randroots;
using namespace randroots::harness;

namespace {

ExperimentSpec uni_spec(int d, int trials, std::uint64_t seed = 5) {
  ExperimentSpec s;
  s.name = ExperimentName::ShubSmaleUni;
  s.ensemble = {ensembles::Kind::ShubSmale, 1, {d}, std::nullopt, std::nullopt};
  s.trials = trials;
  s.seed = seed;
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("welford matches a two-pass computation") {
  Rng rng({61, 0});
  std::vector<double> xs;
  Welford w;
  for (int i = 0; i < 10000; ++i) {
    xs.push_back(1e6 + rng.normal());
    w.push(xs.back());
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() - 1;
  const auto s = w.finish();
  CHECK(s.n == 10000);
  CHECK(s.mean == doctest::Approx(mean).epsilon(1e-14));
  CHECK(s.variance == doctest::Approx(var).epsilon(1e-9));
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(var / xs.size())).epsilon(1e-9));
  CHECK_FALSE(s.z.has_value());
  const auto t = w.finish(1e6);
  REQUIRE(t.z.has_value());
  CHECK(*t.z == doctest::Approx((mean - 1e6) / t.stderr_).epsilon(1e-6));
}

TEST_CASE("experiment names round trip") {
  for (const auto& s : predefined_specs()) CHECK(experiment_from_string(to_string(s.name)) == s.name);
  CHECK_THROWS_AS(experiment_from_string("no-such-thing"), Error);
}

TEST_CASE("every predefined spec survives json") {
  for (const auto& s : predefined_specs()) {
    s.validate();
    CHECK(spec_from_json(spec_to_json(s)) == s);
    CHECK(parse_spec(spec_to_json(s).dump(2)) == s);
  }
}

TEST_CASE("spec parse errors name the field") {
  auto j = spec_to_json(uni_spec(4, 10));
  j["name"] = "bogus";
  try {
    spec_from_json(j);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("'name'") != std::string::npos);
  }
  auto k = spec_to_json(uni_spec(4, 10));
  k["trials"] = "many";
  try {
    spec_from_json(k);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("trials") != std::string::npos);
  }
  try {
    parse_spec("{\n  \"name\": \n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("spec validation") {
  auto s = uni_spec(4, 10);
  s.ensemble.kind = ensembles::Kind::Kac;
  CHECK_THROWS_AS(s.validate(), Error);
  auto t = uni_spec(4, 0);
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("csv rows have the header's columns") {
  const auto rep = run_experiment(uni_spec(4, 50));
  std::stringstream ss;
  write_csv_header(ss);
  write_csv_row(rep, ss);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  CHECK(header == "experiment,n,mean,stderr,theoretical,z,flagged,wall_ms");
  CHECK(split_csv(row).size() == split_csv(header).size());
  CHECK(split_csv(row)[0] == "shubsmale-uni");
  const auto j = to_json(rep);
  CHECK(j["stats"]["n"] == 50);
  CHECK(j["check"] == "none");
}

TEST_CASE("reports do not depend on the thread count") {
  for (auto spec : predefined_specs()) {
    spec.trials = std::min(spec.trials, spec.name == ExperimentName::KacAsym ? 40 : 200);
    spec.restarts = 4;
    spec.max_iters = 200;
    if (spec.name == ExperimentName::KacAsym && spec.ensemble.degrees[0] > 200) continue;
    const auto a = run_experiment(spec, {.threads = 1});
    const auto b = run_experiment(spec, {.threads = 4});
    const auto c = run_experiment(spec, {.threads = 8});
    CHECK_MESSAGE(a.same_result(b), to_string(spec.name));
    CHECK_MESSAGE(a.same_result(c), to_string(spec.name));
  }
}

TEST_CASE("stderr shrinks like one over root n") {
  const auto small = run_experiment(uni_spec(4, 2000));
  const auto big = run_experiment(uni_spec(4, 20000), {.threads = 4});
  const double ratio = small.stats.stderr_ / big.stats.stderr_;
  CHECK(ratio >= 2.8);
  CHECK(ratio <= 3.5);
  CHECK(small.check == "z");
  CHECK(small.stats.theoretical == doctest::Approx(2.0));
}

TEST_CASE("theoretical values") {
  auto half = uni_spec(4, 10);
  half.region = RegionSpec::interval(0.0, realroots::kInf);
  CHECK(*theoretical_value(half) == doctest::Approx(1.0));
  ExperimentSpec kac;
  kac.name = ExperimentName::KacAsym;
  kac.ensemble = {ensembles::Kind::Kac, 1, {100}, std::nullopt, std::nullopt};
  CHECK(*theoretical_value(kac) == doctest::Approx(2.0 / std::numbers::pi * std::log(100.0)));
  ExperimentSpec simp;
  simp.name = ExperimentName::BernsteinSimplex;
  simp.ensemble = {ensembles::Kind::BernsteinGauss, 2, {2, 2}, std::nullopt, std::nullopt};
  CHECK(*theoretical_value(simp) == doctest::Approx(0.5));
}

TEST_CASE("projective measure of interval and simplices") {
  CHECK(*projective_measure_exact(RegionSpec::interval(0.0, 1.0)) == doctest::Approx(0.5));
  CHECK(*projective_measure_exact(RegionSpec::interval(-realroots::kInf, realroots::kInf)) == doctest::Approx(1.0));
  CHECK(*projective_measure_exact(RegionSpec::simplex(1)) == doctest::Approx(0.5));
  CHECK(*projective_measure_exact(RegionSpec::simplex(2)) == doctest::Approx(0.25));
  CHECK(*projective_measure_exact(RegionSpec::simplex(3)) == doctest::Approx(0.125));
  for (int m : {1, 2, 3}) {
    Rng rng({62, static_cast<std::uint64_t>(m)});
    const auto est = estimate_projective_measure(RegionSpec::simplex(m), m, 200000, rng);
    const double want = *projective_measure_exact(RegionSpec::simplex(m));
    CHECK(std::abs(est.stats.mean - want) <= 4.0 * est.stats.stderr_);
  }
}

TEST_CASE("smoothed table counts signal solutions") {
  const SignalSpec sig{SignalSpec::Kind::Product, {-1.0, 0.0, 1.0}, 2, 1.0};
  const auto rows = smoothed_decay_experiment(sig, {1, 2, 3}, 1.0, 100, 9, {.max_sampled_m = 1});
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].n_signal == 2);
  CHECK(*rows[1].n_signal == 4);
  CHECK(*rows[2].n_signal == 8);
  CHECK(rows[0].perturbed.has_value());
  CHECK_FALSE(rows[1].perturbed.has_value());
  CHECK(rows[0].noise->n == 100);
  const auto j = to_json(rows[0]);
  CHECK(j["m"] == 1);
  CHECK(j.contains("A_m"));
}

TEST_CASE("seed from environment") {
  ::setenv("RANDROOTS_SEED", "12345", 1);
  CHECK(seed_from_env() == std::optional<std::uint64_t>(12345));
  ::setenv("RANDROOTS_SEED", "12x", 1);
  CHECK_THROWS_AS(seed_from_env(), Error);
  ::unsetenv("RANDROOTS_SEED");
  CHECK_FALSE(seed_from_env().has_value());
}

TEST_CASE("strict mode and resampling") {
  // Kostlan at N = 2 never flags, so the report is reliable either way.
  ExperimentSpec s;
  s.name = ExperimentName::KostlanEnergy;
  s.ensemble = {ensembles::Kind::KostlanComplex, 1, {2}, std::nullopt, std::nullopt};
  s.trials = 500;
  s.seed = 3;
  const auto rep = run_experiment(s, {.strict = true});
  CHECK(rep.flagged == 0);
  CHECK_FALSE(rep.unreliable);
  CHECK(rep.pass);
}
