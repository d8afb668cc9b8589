// randroots: sample random polynomial ensembles, count their real roots and
// check Monte Carlo means against closed-form laws.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randroots/complexsphere.hpp"
#include "randroots/ensembles.hpp"
#include "randroots/error.hpp"
#include "randroots/fekete.hpp"
#include "randroots/harness.hpp"
#include "randroots/polyjson.hpp"
#include "randroots/realroots.hpp"
#include "randroots/sysroots.hpp"

namespace {

using namespace randroots;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  std::string format = "csv";
  int threads = 1;
};

/// Flag beats RANDROOTS_SEED beats the experiment file.
std::uint64_t resolve_seed(const Common& c, std::uint64_t from_file) {
  if (c.seed) return *c.seed;
  if (auto env = harness::seed_from_env()) return *env;
  return from_file;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<harness::ExperimentSpec> load_specs(const Common& c) {
  std::vector<harness::ExperimentSpec> specs;
  if (c.spec_path.empty()) specs = harness::predefined_specs();
  else specs.push_back(harness::read_spec(c.spec_path));
  for (auto& s : specs) {
    s.seed = resolve_seed(c, s.seed);
    if (c.trials) s.trials = *c.trials;
  }
  return specs;
}

int emit_reports(const std::vector<harness::Report>& reports, const Common& c) {
  Output out(c.out);
  bool all_pass = true;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(harness::to_json(r));
    out.stream() << arr.dump(2) << '\n';
  } else {
    harness::write_csv_header(out.stream());
    for (const auto& r : reports) harness::write_csv_row(r, out.stream());
  }
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    if (!r.pass)
      std::cerr << "FAIL " << harness::to_string(r.spec.name) << " (" << r.check
                << (r.unreliable ? ", unreliable" : "") << ")\n";
  }
  return all_pass ? kExitPass : kExitStatFail;
}

int run_reports(std::vector<harness::ExperimentSpec> specs, const Common& c) {
  harness::RunOptions opts;
  opts.threads = c.threads;
  std::vector<harness::Report> reports;
  for (const auto& s : specs) reports.push_back(harness::run_experiment(s, opts));
  return emit_reports(reports, c);
}

json sample_json(const harness::ExperimentSpec& s, std::uint64_t stream) {
  Rng rng({s.seed, stream});
  const auto& e = s.ensemble;
  switch (e.kind) {
    case ensembles::Kind::Kac:
      return poly::to_json(ensembles::sample_kac(e.degrees[0], rng));
    case ensembles::Kind::ShubSmale:
      if (e.m == 1) return poly::to_json(ensembles::sample_shub_smale_univariate(e.degrees[0], rng));
      return poly::to_json(ensembles::sample_shub_smale(e.degrees, e.m, rng));
    case ensembles::Kind::BernsteinGauss:
    case ensembles::Kind::BernsteinNormalized: {
      const bool norm = e.kind == ensembles::Kind::BernsteinNormalized;
      if (e.m == 1)
        return poly::to_json(norm ? ensembles::sample_bernstein_normalized_univariate(e.degrees[0], rng)
                                  : ensembles::sample_bernstein_univariate(e.degrees[0], rng));
      const auto sys = norm ? ensembles::sample_bernstein_normalized(e.degrees, e.m, rng)
                            : ensembles::sample_bernstein(e.degrees, e.m, rng);
      json arr = json::array();
      for (const auto& b : sys) {
        json j = poly::to_json(b.coefficients());
        j["basis"] = "bernstein";
        arr.push_back(j);
      }
      return arr;
    }
    case ensembles::Kind::KostlanComplex:
      return poly::to_json(ensembles::sample_kostlan_complex(e.degrees[0], rng));
    case ensembles::Kind::Perturbed: {
      const auto signal = e.signal ? *e.signal : s.signal->build(e.m);
      return poly::to_json(ensembles::sample_perturbed(signal, *e.sigma, e.degrees, rng));
    }
  }
  return nullptr;
}

json roots_json(const poly::AnyPoly& p) {
  json out;
  if (const auto* mp = std::get_if<poly::MonomialPoly>(&p)) {
    const auto count = realroots::count_roots_line(*mp);
    out["count"] = count.count;
    out["method"] = realroots::to_string(count.method);
    json ivs = json::array();
    for (const auto& iv : realroots::isolate_roots(*mp)) ivs.push_back({iv.lo(), iv.hi()});
    out["intervals"] = ivs;
  } else if (const auto* bp = std::get_if<poly::BernsteinPoly>(&p)) {
    const auto all = realroots::count_roots_bernstein(*bp, realroots::Interval::line());
    out["count"] = all.count;
    out["count_unit_interval"] = realroots::count_roots_bernstein(*bp, realroots::Interval(0.0, 1.0)).count;
  } else if (const auto* cp = std::get_if<poly::ComplexPoly>(&p)) {
    json roots = json::array();
    for (const auto& z : sphere::roots_complex(*cp)) roots.push_back({z.real(), z.imag()});
    out["roots"] = roots;
  } else {
    std::vector<poly::MultiPoly> eqs;
    if (const auto* one = std::get_if<poly::MultiPoly>(&p)) eqs.push_back(*one);
    else eqs = std::get<poly::PolySystemCoeffs>(p);
    const auto sol = sysroots::solve_system(sysroots::PolySystem(std::move(eqs)));
    out["count"] = sol.points.size();
    out["bezout"] = sol.bezout;
    out["residual_max"] = sol.residual_max;
    out["points"] = sol.points;
  }
  return out;
}

harness::RegionSpec parse_region(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> nums;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        if (tok == "inf") nums.push_back(realroots::kInf);
        else if (tok == "-inf") nums.push_back(-realroots::kInf);
        else nums.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "field 'region': bad number '" + tok + "'");
      }
    }
  }
  if (kind == "interval" && nums.size() == 2) return harness::RegionSpec::interval(nums[0], nums[1]);
  if (kind == "simplex" && nums.size() == 1) return harness::RegionSpec::simplex(static_cast<int>(nums[0]));
  if (kind == "box" && !nums.empty() && nums.size() % 2 == 0) {
    const std::size_t m = nums.size() / 2;
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < m; ++i) {
      lo.push_back(nums[2 * i]);
      hi.push_back(nums[2 * i + 1]);
    }
    return harness::RegionSpec::box(lo, hi);
  }
  throw Error(ErrorCode::ParseError,
              "field 'region': expected interval:lo,hi | simplex:m | box:lo1,hi1,...");
}

void add_common(CLI::App* app, Common& c, bool with_spec = true) {
  if (with_spec) app->add_option("--spec", c.spec_path, "Experiment spec (JSON)");
  app->add_option("--seed", c.seed, "Master seed (overrides RANDROOTS_SEED and the spec)");
  app->add_option("--trials", c.trials, "Number of trials")->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output path (default stdout)");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polynomial root statistics"};
  app.require_subcommand(1);
  Common c;

  auto* sample = app.add_subcommand("sample", "Print sampled polynomials of an experiment as JSON");
  add_common(sample, c);
  std::uint64_t first_index = 0;
  sample->add_option("--index", first_index, "First trial index");

  auto* roots = app.add_subcommand("roots", "Count and locate roots of a polynomial given as JSON");
  std::string poly_path;
  roots->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  roots->add_option("--out", c.out, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run experiments and compare against closed forms");
  add_common(verify, c);

  auto* energy = app.add_subcommand("energy", "Mean log energy of lifted Kostlan roots or uniform points");
  add_common(energy, c, false);
  int energy_n = 2;
  std::string energy_kind = "kostlan";
  energy->add_option("-n,--n", energy_n, "Number of points N")->check(CLI::Range(2, 100000));
  energy->add_option("--kind", energy_kind, "kostlan or uniform")->check(CLI::IsMember({"kostlan", "uniform"}));

  auto* fek = app.add_subcommand("fekete", "Minimize the log energy of N points (best of k restarts)");
  add_common(fek, c, false);
  int fek_n = 12, fek_restarts = 20, fek_iters = 5000;
  std::string points_csv;
  fek->add_option("-n,--n", fek_n, "Number of points N")->check(CLI::Range(2, 100000));
  fek->add_option("--restarts", fek_restarts, "Restarts")->check(CLI::PositiveNumber);
  fek->add_option("--max-iters", fek_iters, "Iteration cap per restart")->check(CLI::PositiveNumber);
  fek->add_option("--points", points_csv, "Write the best configuration as CSV");

  auto* smoothed = app.add_subcommand("smoothed", "Product-signal smoothed-analysis table");
  add_common(smoothed, c);
  double sigma = 1.0;
  std::vector<int> m_list{1, 2, 3};
  smoothed->add_option("--sigma", sigma, "Noise scale")->check(CLI::NonNegativeNumber);
  smoothed->add_option("--m", m_list, "Dimensions")->delimiter(',');

  auto* measure = app.add_subcommand("measure", "Estimate the projective measure of a region");
  add_common(measure, c, false);
  std::string region_text = "interval:0,1";
  measure->add_option("--region", region_text, "interval:lo,hi | simplex:m | box:lo1,hi1,...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (sample->parsed()) {
      Output out(c.out);
      for (const auto& s : load_specs(c)) {
        const int n = c.trials.value_or(1);
        for (int i = 0; i < n; ++i)
          out.stream() << json{{"experiment", harness::to_string(s.name)},
                               {"trial", first_index + static_cast<std::uint64_t>(i)},
                               {"poly", sample_json(s, first_index + static_cast<std::uint64_t>(i))}}
                              .dump()
                       << '\n';
      }
      return kExitPass;
    }
    if (roots->parsed()) {
      std::ifstream in(poly_path);
      if (!in) throw Error(ErrorCode::ParseError, "cannot open " + poly_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error&) {
        throw Error(ErrorCode::ParseError, "malformed polynomial JSON");
      }
      Output out(c.out);
      out.stream() << roots_json(poly::polynomial_from_json(j)).dump(2) << '\n';
      return kExitPass;
    }
    if (verify->parsed()) return run_reports(load_specs(c), c);
    if (energy->parsed()) {
      harness::ExperimentSpec s;
      s.name = energy_kind == "kostlan" ? harness::ExperimentName::KostlanEnergy : harness::ExperimentName::UniformEnergy;
      s.ensemble = {ensembles::Kind::KostlanComplex, 1, {energy_n}, std::nullopt, std::nullopt};
      s.trials = c.trials.value_or(energy_n <= 2 ? 50000 : 5000);
      s.seed = resolve_seed(c, harness::kDefaultSeed);
      return run_reports({s}, c);
    }
    if (fek->parsed()) {
      fekete::MinimizeOptions opts;
      opts.max_iters = fek_iters;
      const auto est = fekete::minimize_best_of(fek_n, fek_restarts, resolve_seed(c, harness::kDefaultSeed), opts,
                                                c.threads);
      if (!points_csv.empty()) sphere::write_config_csv(est.config, points_csv);
      json j = fekete::to_json(est, points_csv);
      j["kostlan_bound"] = fekete::expected_energy_kostlan(fek_n);
      Output out(c.out);
      out.stream() << j.dump(2) << '\n';
      return est.v <= fekete::expected_energy_kostlan(fek_n) ? kExitPass : kExitStatFail;
    }
    if (smoothed->parsed()) {
      harness::SignalSpec signal{harness::SignalSpec::Kind::Product, {-1.0, 0.0, 1.0}, 2, 1.0};
      int trials = c.trials.value_or(2000);
      std::uint64_t seed = resolve_seed(c, harness::kDefaultSeed);
      if (!c.spec_path.empty()) {
        const auto s = harness::read_spec(c.spec_path);
        if (!s.signal) throw Error(ErrorCode::InvalidArgument, "spec has no signal");
        signal = *s.signal;
        if (!s.m_list.empty()) m_list = s.m_list;
        if (s.ensemble.sigma) sigma = *s.ensemble.sigma;
        if (!c.trials) trials = s.trials;
        seed = resolve_seed(c, s.seed);
      }
      harness::SmoothedOptions opts;
      opts.threads = c.threads;
      const auto rows = harness::smoothed_decay_experiment(signal, m_list, sigma, trials, seed, opts);
      Output out(c.out);
      if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(harness::to_json(r));
        out.stream() << arr.dump(2) << '\n';
      } else {
        out.stream() << "m,N_P,perturbed_mean,perturbed_stderr,noise_mean,noise_stderr,ratio,A_m,B_m,H2,flagged\n"
                     << std::setprecision(10);
        for (const auto& r : rows) {
          out.stream() << r.m << ',';
          if (r.n_signal) out.stream() << *r.n_signal;
          out.stream() << ',';
          if (r.perturbed) out.stream() << r.perturbed->mean << ',' << r.perturbed->stderr_;
          else out.stream() << ',';
          out.stream() << ',';
          if (r.noise) out.stream() << r.noise->mean << ',' << r.noise->stderr_;
          else out.stream() << ',';
          out.stream() << ',';
          if (r.ratio) out.stream() << *r.ratio;
          out.stream() << ',' << r.a_m << ',' << r.b_m << ',' << (r.h2 ? 1 : 0) << ',' << r.flagged << '\n';
        }
      }
      return kExitPass;
    }
    if (measure->parsed()) {
      const auto region = parse_region(region_text);
      harness::ExperimentSpec s;
      s.name = harness::ExperimentName::ProjectiveMeasure;
      s.ensemble = {ensembles::Kind::ShubSmale, region.dim(), std::vector<int>(static_cast<std::size_t>(region.dim()), 1),
                    std::nullopt, std::nullopt};
      s.region = region;
      s.trials = c.trials.value_or(1000000);
      s.seed = resolve_seed(c, harness::kDefaultSeed);
      return run_reports({s}, c);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::InvalidArgument:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::DegreeMismatch:
      case ErrorCode::DegreeTooLarge:
      case ErrorCode::OddDegree:
      case ErrorCode::NotFullySplit:
        return kExitConfig;
      case ErrorCode::TooManyFlaggedTrials:
        return kExitStatFail;
      default:
        return kExitConfig;
    }
  }
  return kExitConfig;
}
