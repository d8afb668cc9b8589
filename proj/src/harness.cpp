#include "randroots/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "randroots/complexsphere.hpp"
#include "randroots/error.hpp"
#include "randroots/fekete.hpp"
#include "randroots/polyjson.hpp"

namespace randroots::harness {

using nlohmann::json;

namespace {

const std::vector<std::pair<ExperimentName, std::string>>& name_table() {
  static const std::vector<std::pair<ExperimentName, std::string>> t = {
      {ExperimentName::ShubSmaleUni, "shubsmale-uni"},
      {ExperimentName::ShubSmaleBiv, "shubsmale-biv"},
      {ExperimentName::KacAsym, "kac-asym"},
      {ExperimentName::BernsteinLine, "bernstein-line"},
      {ExperimentName::BernsteinInterval, "bernstein-interval"},
      {ExperimentName::BernsteinSimplex, "bernstein-simplex"},
      {ExperimentName::KostlanEnergy, "kostlan-energy"},
      {ExperimentName::UniformEnergy, "uniform-energy"},
      {ExperimentName::SmoothedDecay, "smoothed-decay"},
      {ExperimentName::FeketeMin, "fekete-min"},
      {ExperimentName::ProjectiveMeasure, "projective-measure"},
  };
  return t;
}

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidArgument, why); }
[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

bool is_flaggable(ErrorCode c) {
  switch (c) {
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::DegenerateResultant:
    case ErrorCode::DegreeDrop:
    case ErrorCode::NonConvergence:
    case ErrorCode::CoincidentPoints:
    case ErrorCode::NewtonDivergence:
      return true;
    default:
      return false;
  }
}

int total_degree(const ensembles::EnsembleSpec& e) {
  int d = 1;
  for (int k : e.degrees) d *= k;
  return d;
}

std::vector<poly::MultiPoly> smoothed_signal(const ExperimentSpec& s) {
  if (s.ensemble.signal) return *s.ensemble.signal;
  return s.signal->build(s.ensemble.m);
}

poly::BernsteinPoly bernstein_uni(const ensembles::EnsembleSpec& e, Rng& rng) {
  if (e.kind == ensembles::Kind::BernsteinNormalized)
    return ensembles::sample_bernstein_normalized_univariate(e.degrees[0], rng);
  return ensembles::sample_bernstein_univariate(e.degrees[0], rng);
}

double energy_or_flag(const sphere::Configuration& c) {
  const auto e = sphere::log_energy_flagged(c);
  if (e.coincident) throw Error(ErrorCode::CoincidentPoints, "coincident points in energy trial");
  return e.value;
}

/// Calls body(i) for i in [0, n) on a pool of workers; the first exception
/// is rethrown after every worker has stopped.
template <class Body>
void parallel_for(std::int64_t n, int threads, Body body) {
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (std::int64_t i; !stop && (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json encode_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  parse_fail(field, "expected a number or \"inf\"/\"-inf\"");
}

template <class T>
T get_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) parse_fail(path + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_fail(path + key, "wrong type");
  }
}

}  // namespace

std::string to_string(ExperimentName n) {
  for (const auto& [k, v] : name_table())
    if (k == n) return v;
  return "unknown";
}

ExperimentName experiment_from_string(const std::string& name) {
  for (const auto& [k, v] : name_table())
    if (v == name) return k;
  throw Error(ErrorCode::ParseError, "unknown experiment '" + name + "'");
}

RegionSpec RegionSpec::interval(double lo, double hi) {
  if (!(lo < hi)) invalid("interval needs lo < hi");
  RegionSpec r;
  r.kind = Kind::Interval;
  r.lo = lo;
  r.hi = hi;
  return r;
}

RegionSpec RegionSpec::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) invalid("box bounds must have equal nonzero length");
  RegionSpec r;
  r.kind = Kind::Box;
  r.box_lo = std::move(lo);
  r.box_hi = std::move(hi);
  r.m = static_cast<int>(r.box_lo.size());
  r.lo = 0.0;
  r.hi = 0.0;
  return r;
}

RegionSpec RegionSpec::simplex(int m) {
  if (m < 1) invalid("simplex needs m >= 1");
  RegionSpec r;
  r.kind = Kind::Simplex;
  r.m = m;
  r.lo = 0.0;
  r.hi = 0.0;
  return r;
}

int RegionSpec::dim() const { return kind == Kind::Interval ? 1 : m; }

bool RegionSpec::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from region");
  switch (kind) {
    case Kind::Interval:
      return lo <= x[0] && x[0] <= hi;
    case Kind::Box:
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!(box_lo[i] <= x[i] && x[i] <= box_hi[i])) return false;
      return true;
    case Kind::Simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < 0.0) return false;
        s += v;
      }
      return s <= 1.0;
    }
  }
  return false;
}

sysroots::Region RegionSpec::to_sys_region() const {
  switch (kind) {
    case Kind::Interval:
      return sysroots::Region::box({lo}, {hi});
    case Kind::Box:
      return sysroots::Region::box(box_lo, box_hi);
    case Kind::Simplex:
      return sysroots::Region::simplex();
  }
  return sysroots::Region::full();
}

std::vector<poly::MultiPoly> SignalSpec::build(int m) const {
  if (kind == Kind::Sphere) return std::vector<poly::MultiPoly>(static_cast<std::size_t>(m), sysroots::signal_sphere(d, r, m));
  const auto sys = sysroots::signal_product(poly::MonomialPoly(t), m);
  return {sys.equations().begin(), sys.equations().end()};
}

int SignalSpec::degree() const { return kind == Kind::Sphere ? d : static_cast<int>(t.size()) - 1; }

void ExperimentSpec::validate() const {
  if (trials < 1) invalid("trials must be >= 1");
  ensemble.validate();
  using K = ensembles::Kind;
  auto need = [&](K k, const char* what) {
    if (ensemble.kind != k) invalid(to_string(name) + " needs the " + what + " ensemble");
  };
  auto need_bernstein = [&] {
    if (ensemble.kind != K::BernsteinGauss && ensemble.kind != K::BernsteinNormalized)
      invalid(to_string(name) + " needs a Bernstein ensemble");
  };
  auto need_m = [&](int m) {
    if (ensemble.m != m) invalid(to_string(name) + " needs m = " + std::to_string(m));
  };
  if (region && region->dim() != ensemble.m) invalid("region dimension differs from m");
  switch (name) {
    case ExperimentName::ShubSmaleUni:
      need(K::ShubSmale, "shubsmale");
      need_m(1);
      if (region && region->kind != RegionSpec::Kind::Interval) invalid("shubsmale-uni regions are intervals");
      break;
    case ExperimentName::ShubSmaleBiv:
      need(K::ShubSmale, "shubsmale");
      need_m(2);
      for (int d : ensemble.degrees)
        if (d > 6) invalid("shubsmale-biv supports degrees <= 6");
      break;
    case ExperimentName::KacAsym:
      need(K::Kac, "kac");
      if (ensemble.degrees[0] < 2) invalid("kac-asym needs d >= 2");
      break;
    case ExperimentName::BernsteinLine:
      need_bernstein();
      need_m(1);
      break;
    case ExperimentName::BernsteinInterval:
      need_bernstein();
      need_m(1);
      if (!region || region->kind != RegionSpec::Kind::Interval) invalid("bernstein-interval needs an interval region");
      break;
    case ExperimentName::BernsteinSimplex:
      need_bernstein();
      if (ensemble.m > 2) invalid("bernstein-simplex supports m <= 2");
      for (int d : ensemble.degrees)
        if (d > 6 && ensemble.m == 2) invalid("bernstein-simplex supports degrees <= 6 at m = 2");
      break;
    case ExperimentName::KostlanEnergy:
      need(K::KostlanComplex, "kostlan-complex");
      if (ensemble.degrees[0] < 2) invalid("energy experiments need N >= 2");
      break;
    case ExperimentName::UniformEnergy:
    case ExperimentName::FeketeMin:
      need_m(1);
      if (ensemble.degrees[0] < 2) invalid("energy experiments need N >= 2");
      if (restarts < 1 || max_iters < 1) invalid("restarts and max_iters must be >= 1");
      break;
    case ExperimentName::SmoothedDecay:
      need(K::Perturbed, "perturbed");
      if (ensemble.m > 2) invalid("smoothed-decay sampling supports m <= 2");
      if (!ensemble.signal && !signal) invalid("smoothed-decay needs a signal");
      for (int m : m_list)
        if (m < 1 || m > 3) invalid("m_list entries must be in 1..3");
      if (!ensemble.signal) {
        for (int d : ensemble.degrees)
          if (d < signal->degree()) invalid("noise degree below signal degree");
      }
      break;
    case ExperimentName::ProjectiveMeasure:
      if (!region) invalid("projective-measure needs a region");
      break;
  }
}

void Welford::push(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

SummaryStats Welford::finish(std::optional<double> theoretical, bool asymptotic) const {
  SummaryStats s;
  s.n = n_;
  s.mean = mean_;
  s.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  s.stderr_ = n_ > 0 ? std::sqrt(s.variance / static_cast<double>(n_)) : 0.0;
  s.theoretical = theoretical;
  s.asymptotic = asymptotic;
  if (theoretical) {
    const double diff = s.mean - *theoretical;
    if (s.stderr_ > 0.0) s.z = diff / s.stderr_;
    else s.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return s;
}

bool Report::same_result(const Report& o) const {
  return spec == o.spec && stats == o.stats && flagged == o.flagged && flag_reasons == o.flag_reasons &&
         unreliable == o.unreliable && pass == o.pass && check == o.check && extra == o.extra;
}

std::optional<double> projective_measure_exact(const RegionSpec& region) {
  switch (region.kind) {
    case RegionSpec::Kind::Interval:
      return (std::atan(2.0 * region.hi - 1.0) - std::atan(2.0 * region.lo - 1.0)) / std::numbers::pi;
    case RegionSpec::Kind::Simplex:
      return std::ldexp(1.0, -region.m);
    case RegionSpec::Kind::Box:
      if (region.m == 1)
        return (std::atan(2.0 * region.box_hi[0] - 1.0) - std::atan(2.0 * region.box_lo[0] - 1.0)) / std::numbers::pi;
      return std::nullopt;
  }
  return std::nullopt;
}

bool projective_sample(const RegionSpec& region, int m, Rng& rng, std::int64_t& redrawn) {
  if (region.dim() != m) throw Error(ErrorCode::DimensionMismatch, "region dimension differs from m");
  // A Gaussian vector has a uniform direction; the projective image only
  // depends on the direction, so normalization is skipped.
  std::vector<double> y(static_cast<std::size_t>(m) + 1);
  for (;;) {
    double s = 0.0;
    for (double& v : y) {
      v = rng.normal();
      s += v;
    }
    if (s == 0.0) {
      ++redrawn;
      continue;
    }
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / s;
    return region.contains(x);
  }
}

MeasureEstimate estimate_projective_measure(const RegionSpec& region, int m, std::int64_t samples, Rng& rng) {
  if (samples < 1) invalid("samples must be >= 1");
  MeasureEstimate out;
  Welford w;
  for (std::int64_t i = 0; i < samples; ++i) w.push(projective_sample(region, m, rng, out.redrawn) ? 1.0 : 0.0);
  out.stats = w.finish(projective_measure_exact(region));
  return out;
}

std::optional<double> theoretical_value(const ExperimentSpec& s) {
  const auto& e = s.ensemble;
  const double root_bezout = std::sqrt(static_cast<double>(total_degree(e)));
  switch (s.name) {
    case ExperimentName::ShubSmaleUni:
      if (s.region)
        return root_bezout / std::numbers::pi * (std::atan(s.region->hi) - std::atan(s.region->lo));
      return root_bezout;
    case ExperimentName::ShubSmaleBiv:
      if (s.region) return std::nullopt;
      return root_bezout;
    case ExperimentName::KacAsym:
      return 2.0 / std::numbers::pi * std::log(static_cast<double>(e.degrees[0]));
    case ExperimentName::BernsteinLine:
      return root_bezout;
    case ExperimentName::BernsteinInterval:
      return root_bezout * *projective_measure_exact(*s.region);
    case ExperimentName::BernsteinSimplex:
      return root_bezout / std::ldexp(1.0, e.m);
    case ExperimentName::KostlanEnergy:
      return fekete::expected_energy_kostlan(e.degrees[0]);
    case ExperimentName::UniformEnergy:
      return fekete::expected_energy_uniform(e.degrees[0]);
    case ExperimentName::SmoothedDecay:
    case ExperimentName::FeketeMin:
      return std::nullopt;
    case ExperimentName::ProjectiveMeasure:
      return projective_measure_exact(*s.region);
  }
  return std::nullopt;
}

double run_trial(const ExperimentSpec& s, std::uint64_t stream_index) {
  Rng rng({s.seed, stream_index});
  const auto& e = s.ensemble;
  const int d0 = e.degrees[0];
  switch (s.name) {
    case ExperimentName::ShubSmaleUni: {
      const auto p = ensembles::sample_shub_smale_univariate(d0, rng);
      if (s.region) return realroots::count_roots_interval(p, realroots::Interval(s.region->lo, s.region->hi)).count;
      return realroots::count_roots_line(p).count;
    }
    case ExperimentName::ShubSmaleBiv: {
      const sysroots::PolySystem sys(ensembles::sample_shub_smale(e.degrees, 2, rng));
      return sysroots::count_real_solutions(sys, s.region ? s.region->to_sys_region() : sysroots::Region::full());
    }
    case ExperimentName::KacAsym:
      return realroots::count_roots_line(ensembles::sample_kac(d0, rng)).count;
    case ExperimentName::BernsteinLine:
      return realroots::count_roots_bernstein(bernstein_uni(e, rng),
                                              realroots::Interval::line())
          .count;
    case ExperimentName::BernsteinInterval:
      return realroots::count_roots_bernstein(bernstein_uni(e, rng),
                                              realroots::Interval(s.region->lo, s.region->hi))
          .count;
    case ExperimentName::BernsteinSimplex: {
      if (e.m == 1)
        return realroots::count_roots_bernstein(bernstein_uni(e, rng),
                                                realroots::Interval(0.0, 1.0))
            .count;
      std::vector<poly::MultiPoly> eqs;
      const auto sys = e.kind == ensembles::Kind::BernsteinNormalized
                           ? ensembles::sample_bernstein_normalized(e.degrees, e.m, rng)
                           : ensembles::sample_bernstein(e.degrees, e.m, rng);
      for (const auto& b : sys) eqs.push_back(poly::bernstein_to_monomial(b));
      return sysroots::count_real_solutions(sysroots::PolySystem(std::move(eqs)), sysroots::Region::simplex());
    }
    case ExperimentName::KostlanEnergy:
      return energy_or_flag(sphere::polynomial_to_config(ensembles::sample_kostlan_complex(d0, rng)));
    case ExperimentName::UniformEnergy:
      return energy_or_flag(fekete::sample_uniform_sphere(d0, rng));
    case ExperimentName::SmoothedDecay: {
      const auto signal = smoothed_signal(s);
      auto eqs = ensembles::sample_perturbed(signal, *e.sigma, e.degrees, rng);
      if (e.m == 1) {
        const auto p = poly::to_univariate(eqs[0]);
        if (p.is_zero()) throw Error(ErrorCode::DegreeDrop, "perturbed polynomial vanishes");
        std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
        while (c.size() > 1 && c.back() == 0.0) c.pop_back();
        return realroots::count_roots_line(poly::MonomialPoly(std::move(c))).count;
      }
      return sysroots::count_real_solutions(sysroots::PolySystem(std::move(eqs)));
    }
    case ExperimentName::FeketeMin: {
      fekete::MinimizeOptions opts;
      opts.max_iters = s.max_iters;
      return fekete::minimize_energy(fekete::sample_uniform_sphere(d0, rng), opts).v;
    }
    case ExperimentName::ProjectiveMeasure: {
      std::int64_t redrawn = 0;
      return projective_sample(*s.region, e.m, rng, redrawn) ? 1.0 : 0.0;
    }
  }
  invalid("unhandled experiment");
}

Report run_experiment(const ExperimentSpec& spec, const RunOptions& opts) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t n = spec.name == ExperimentName::FeketeMin ? spec.restarts : spec.trials;

  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<std::vector<ErrorCode>> flags(static_cast<std::size_t>(n));
  parallel_for(n, opts.threads, [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
      if (attempt == kMaxResamples)
        throw Error(ErrorCode::TooManyFlaggedTrials, "trial " + std::to_string(i) + " failed every resample");
      const std::uint64_t stream =
          attempt == 0 ? static_cast<std::uint64_t>(i)
                       : kResampleBase + static_cast<std::uint64_t>(i) * kMaxResamples + static_cast<std::uint64_t>(attempt - 1);
      try {
        values[idx] = run_trial(spec, stream);
        return;
      } catch (const Error& err) {
        if (!is_flaggable(err.code())) throw;
        flags[idx].push_back(err.code());
      }
    }
  });

  Report rep;
  rep.spec = spec;
  Welford w;
  for (std::size_t i = 0; i < values.size(); ++i) {
    w.push(values[i]);
    for (ErrorCode c : flags[i]) {
      ++rep.flagged;
      ++rep.flag_reasons[std::string(to_string(c))];
    }
  }
  const bool asymptotic = spec.name == ExperimentName::KacAsym;
  rep.stats = w.finish(theoretical_value(spec), asymptotic);
  rep.unreliable = static_cast<double>(rep.flagged) > 0.01 * static_cast<double>(n);
  if (rep.unreliable && opts.strict)
    throw Error(ErrorCode::TooManyFlaggedTrials,
                std::to_string(rep.flagged) + " flagged trials out of " + std::to_string(n));

  if (spec.name == ExperimentName::FeketeMin) {
    const double best = *std::min_element(values.begin(), values.end());
    const int nn = spec.ensemble.degrees[0];
    const double bound = fekete::expected_energy_kostlan(nn);
    rep.extra = {{"best_v", best}, {"best_c_n", fekete::cn_from_v(nn, best)}, {"kostlan_bound", bound}};
    rep.check = "bound";
    rep.pass = best <= bound;
  } else if (rep.stats.theoretical && n >= 100) {
    if (asymptotic) {
      const double gap = rep.stats.mean - *rep.stats.theoretical;
      rep.extra = {{"band_gap", gap}, {"band", {opts.band_lo, opts.band_hi}}};
      rep.check = "band";
      rep.pass = opts.band_lo <= gap && gap <= opts.band_hi;
    } else {
      rep.check = "z";
      rep.pass = std::abs(*rep.stats.z) <= opts.z_limit;
    }
  } else {
    rep.check = "none";
    rep.pass = true;
  }
  if (rep.unreliable) rep.pass = false;
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<SmoothedRow> smoothed_decay_experiment(const SignalSpec& signal, const std::vector<int>& m_list,
                                                   double sigma, int trials, std::uint64_t seed,
                                                   const SmoothedOptions& opts) {
  if (!(sigma >= 0.0)) invalid("sigma must be >= 0");
  std::vector<SmoothedRow> rows;
  const int d = signal.degree();
  RunOptions ropts;
  ropts.threads = opts.threads;
  for (int m : m_list) {
    if (m < 1 || m > 3) invalid("m must be in 1..3");
    SmoothedRow row;
    row.m = m;
    const auto eqs = signal.build(m);
    const std::vector<int> degrees(static_cast<std::size_t>(m), d);
    if (signal.kind == SignalSpec::Kind::Product) {
      row.n_signal = static_cast<std::int64_t>(sysroots::solve_system(sysroots::PolySystem(eqs)).points.size());
    } else if (m == 1) {
      row.n_signal = realroots::count_roots_line(poly::to_univariate(eqs[0])).count;
    }
    if (m <= opts.max_sampled_m) {
      ExperimentSpec pert;
      pert.name = ExperimentName::SmoothedDecay;
      pert.ensemble = {ensembles::Kind::Perturbed, m, degrees, sigma, eqs};
      pert.trials = trials;
      pert.seed = seed;
      const Report rp = run_experiment(pert, ropts);

      ExperimentSpec noise;
      noise.name = m == 1 ? ExperimentName::ShubSmaleUni : ExperimentName::ShubSmaleBiv;
      noise.ensemble = {ensembles::Kind::ShubSmale, m, degrees, std::nullopt, std::nullopt};
      noise.trials = trials;
      noise.seed = seed;
      const Report rn = run_experiment(noise, ropts);
      row.perturbed = rp.stats;
      row.noise = rn.stats;
      row.flagged = rp.flagged + rn.flagged;
      if (rn.stats.mean != 0.0) row.ratio = rp.stats.mean / rn.stats.mean;
    }
    const auto hyp = sysroots::hypothesis_check(eqs, degrees, opts.r0, opts.ell);
    row.a_m = hyp.a_m;
    row.b_m = hyp.b_m;
    row.h2 = hyp.h2;
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const SummaryStats& s) {
  json j = {{"n", s.n}, {"mean", s.mean}, {"variance", s.variance}, {"stderr", s.stderr_}};
  j["theoretical"] = s.theoretical ? json(*s.theoretical) : json(nullptr);
  j["z"] = s.z ? encode_double(*s.z) : json(nullptr);
  if (s.asymptotic) j["asymptotic"] = true;
  return j;
}

json to_json(const SmoothedRow& r) {
  json j = {{"m", r.m}, {"A_m", r.a_m}, {"B_m", r.b_m}, {"H2", r.h2}, {"flagged", r.flagged}};
  j["N_P"] = r.n_signal ? json(*r.n_signal) : json(nullptr);
  j["perturbed"] = r.perturbed ? to_json(*r.perturbed) : json(nullptr);
  j["noise"] = r.noise ? to_json(*r.noise) : json(nullptr);
  j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  return j;
}

json to_json(const Report& r) {
  json reasons = json::object();
  for (const auto& [k, v] : r.flag_reasons) reasons[k] = v;
  json j = {{"experiment", to_string(r.spec.name)},
            {"spec", spec_to_json(r.spec)},
            {"stats", to_json(r.stats)},
            {"flagged", r.flagged},
            {"flag_reasons", reasons},
            {"wall_ms", r.wall_ms},
            {"unreliable", r.unreliable},
            {"pass", r.pass},
            {"check", r.check}};
  if (!r.extra.is_null()) j["extra"] = r.extra;
  return j;
}

void write_csv_header(std::ostream& out) { out << "experiment,n,mean,stderr,theoretical,z,flagged,wall_ms\n"; }

void write_csv_row(const Report& r, std::ostream& out) {
  std::ostringstream line;
  line << std::setprecision(17) << to_string(r.spec.name) << ',' << r.stats.n << ',' << r.stats.mean << ','
       << r.stats.stderr_ << ',';
  if (r.stats.theoretical) line << *r.stats.theoretical;
  line << ',';
  if (r.stats.z) line << *r.stats.z;
  line << ',' << r.flagged << ',' << std::setprecision(6) << r.wall_ms << '\n';
  out << line.str();
}

json spec_to_json(const ExperimentSpec& s) {
  json ens = {{"kind", ensembles::to_string(s.ensemble.kind)}, {"m", s.ensemble.m}, {"degrees", s.ensemble.degrees}};
  if (s.ensemble.sigma) ens["sigma"] = *s.ensemble.sigma;
  if (s.ensemble.signal) ens["signal"] = poly::to_json(*s.ensemble.signal);
  json j = {{"name", to_string(s.name)}, {"ensemble", ens}, {"trials", s.trials}, {"seed", s.seed}};
  if (s.region) {
    const auto& r = *s.region;
    switch (r.kind) {
      case RegionSpec::Kind::Interval:
        j["region"] = {{"kind", "interval"}, {"lo", encode_double(r.lo)}, {"hi", encode_double(r.hi)}};
        break;
      case RegionSpec::Kind::Box:
        j["region"] = {{"kind", "box"}, {"lo", r.box_lo}, {"hi", r.box_hi}};
        break;
      case RegionSpec::Kind::Simplex:
        j["region"] = {{"kind", "simplex"}, {"m", r.m}};
        break;
    }
  }
  if (s.signal) {
    if (s.signal->kind == SignalSpec::Kind::Product) j["signal"] = {{"kind", "product"}, {"t", s.signal->t}};
    else j["signal"] = {{"kind", "sphere"}, {"d", s.signal->d}, {"r", s.signal->r}};
  }
  if (!s.m_list.empty()) j["m_list"] = s.m_list;
  if (s.name == ExperimentName::FeketeMin) {
    j["restarts"] = s.restarts;
    j["max_iters"] = s.max_iters;
  }
  return j;
}

ExperimentSpec spec_from_json(const json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  ExperimentSpec s;
  const auto name = get_field<std::string>(j, "name", "");
  try {
    s.name = experiment_from_string(name);
  } catch (const Error&) {
    parse_fail("name", "unknown experiment '" + name + "'");
  }
  if (!j.contains("ensemble") || !j["ensemble"].is_object()) parse_fail("ensemble", "missing or not an object");
  const json& e = j["ensemble"];
  const auto kind = get_field<std::string>(e, "kind", "ensemble.");
  try {
    s.ensemble.kind = ensembles::kind_from_string(kind);
  } catch (const Error&) {
    parse_fail("ensemble.kind", "unknown ensemble '" + kind + "'");
  }
  s.ensemble.m = get_field<int>(e, "m", "ensemble.");
  s.ensemble.degrees = get_field<std::vector<int>>(e, "degrees", "ensemble.");
  if (e.contains("sigma")) s.ensemble.sigma = get_field<double>(e, "sigma", "ensemble.");
  if (e.contains("signal")) {
    try {
      auto any = poly::polynomial_from_json(e["signal"]);
      if (auto* sys = std::get_if<poly::PolySystemCoeffs>(&any)) s.ensemble.signal = *sys;
      else if (auto* mp = std::get_if<poly::MultiPoly>(&any)) s.ensemble.signal = std::vector<poly::MultiPoly>{*mp};
      else parse_fail("ensemble.signal", "expected a multi polynomial system");
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ParseError) throw;
      parse_fail("ensemble.signal", err.what());
    }
  }
  s.trials = get_field<int>(j, "trials", "");
  if (!j.contains("seed") || !j["seed"].is_number_integer() || (j["seed"].is_number_integer() && !j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
    parse_fail("seed", "expected an unsigned 64-bit integer");
  s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("region")) {
    const json& r = j["region"];
    const auto rk = get_field<std::string>(r, "kind", "region.");
    try {
      if (rk == "interval") {
        if (!r.contains("lo") || !r.contains("hi")) parse_fail("region", "interval needs lo and hi");
        s.region = RegionSpec::interval(decode_double(r["lo"], "region.lo"), decode_double(r["hi"], "region.hi"));
      } else if (rk == "box") {
        s.region = RegionSpec::box(get_field<std::vector<double>>(r, "lo", "region."),
                                   get_field<std::vector<double>>(r, "hi", "region."));
      } else if (rk == "simplex") {
        s.region = RegionSpec::simplex(get_field<int>(r, "m", "region."));
      } else {
        parse_fail("region.kind", "unknown region '" + rk + "'");
      }
    } catch (const Error& err) {
      if (err.code() == ErrorCode::ParseError) throw;
      parse_fail("region", err.what());
    }
  }
  if (j.contains("signal")) {
    const json& g = j["signal"];
    const auto gk = get_field<std::string>(g, "kind", "signal.");
    SignalSpec sig;
    if (gk == "product") {
      sig.kind = SignalSpec::Kind::Product;
      sig.t = get_field<std::vector<double>>(g, "t", "signal.");
      if (sig.t.size() < 2) parse_fail("signal.t", "need a polynomial of degree >= 1");
    } else if (gk == "sphere") {
      sig.kind = SignalSpec::Kind::Sphere;
      sig.d = get_field<int>(g, "d", "signal.");
      sig.r = get_field<double>(g, "r", "signal.");
    } else {
      parse_fail("signal.kind", "unknown signal '" + gk + "'");
    }
    s.signal = sig;
  }
  if (j.contains("m_list")) s.m_list = get_field<std::vector<int>>(j, "m_list", "");
  if (j.contains("restarts")) s.restarts = get_field<int>(j, "restarts", "");
  if (j.contains("max_iters")) s.max_iters = get_field<int>(j, "max_iters", "");
  return s;
}

ExperimentSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(err.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": malformed JSON");
  }
  return spec_from_json(j);
}

ExperimentSpec read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

void write_spec(const ExperimentSpec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  out << spec_to_json(s).dump(2) << '\n';
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("RANDROOTS_SEED");
  if (!v || !*v) return std::nullopt;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::ParseError, "RANDROOTS_SEED must be an unsigned integer");
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(s, &pos);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "RANDROOTS_SEED out of range");
  }
}

std::vector<ExperimentSpec> predefined_specs() {
  using ensembles::EnsembleSpec;
  using ensembles::Kind;
  std::vector<ExperimentSpec> out;
  auto add = [&](ExperimentName name, EnsembleSpec e, int trials) -> ExperimentSpec& {
    ExperimentSpec s;
    s.name = name;
    s.ensemble = std::move(e);
    s.trials = trials;
    s.seed = kDefaultSeed;
    out.push_back(std::move(s));
    return out.back();
  };
  for (int d : {2, 4, 9, 16}) add(ExperimentName::ShubSmaleUni, {Kind::ShubSmale, 1, {d}, {}, {}}, 20000);
  add(ExperimentName::ShubSmaleBiv, {Kind::ShubSmale, 2, {2, 2}, {}, {}}, 2000);
  for (int d : {50, 200, 1000}) add(ExperimentName::KacAsym, {Kind::Kac, 1, {d}, {}, {}}, 5000);
  add(ExperimentName::BernsteinLine, {Kind::BernsteinGauss, 1, {9}, {}, {}}, 20000);
  add(ExperimentName::BernsteinInterval, {Kind::BernsteinGauss, 1, {9}, {}, {}}, 20000).region =
      RegionSpec::interval(0.0, 1.0);
  add(ExperimentName::BernsteinSimplex, {Kind::BernsteinGauss, 2, {2, 2}, {}, {}}, 2000);
  for (auto [n, t] : {std::pair{2, 50000}, {4, 20000}, {8, 10000}, {16, 5000}})
    add(ExperimentName::KostlanEnergy, {Kind::KostlanComplex, 1, {n}, {}, {}}, t);
  add(ExperimentName::UniformEnergy, {Kind::KostlanComplex, 1, {100}, {}, {}}, 2000);
  {
    auto& s = add(ExperimentName::SmoothedDecay, {Kind::Perturbed, 2, {2, 2}, 1.0, {}}, 2000);
    s.signal = SignalSpec{SignalSpec::Kind::Product, {-1.0, 0.0, 1.0}, 2, 1.0};
    s.m_list = {1, 2, 3};
  }
  for (int n : {12, 50}) add(ExperimentName::FeketeMin, {Kind::KostlanComplex, 1, {n}, {}, {}}, 20);
  add(ExperimentName::ProjectiveMeasure, {Kind::ShubSmale, 1, {1}, {}, {}}, 1000000).region =
      RegionSpec::interval(0.0, 1.0);
  for (int m : {1, 2, 3}) {
    std::vector<int> deg(static_cast<std::size_t>(m), 1);
    add(ExperimentName::ProjectiveMeasure, {Kind::ShubSmale, m, deg, {}, {}}, 1000000).region = RegionSpec::simplex(m);
  }
  return out;
}

}  // namespace randroots::harness
