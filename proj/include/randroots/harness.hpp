#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "randroots/ensembles.hpp"
#include "randroots/realroots.hpp"
#include "randroots/rng.hpp"
#include "randroots/sysroots.hpp"

namespace randroots::harness {

enum class ExperimentName {
  ShubSmaleUni,
  ShubSmaleBiv,
  KacAsym,
  BernsteinLine,
  BernsteinInterval,
  BernsteinSimplex,
  KostlanEnergy,
  UniformEnergy,
  SmoothedDecay,
  FeketeMin,
  ProjectiveMeasure,
};

std::string to_string(ExperimentName n);
/// Throws ParseError for an unknown name.
ExperimentName experiment_from_string(const std::string& name);

/// Counting region: an interval of the line (possibly infinite), an axis box
/// or the standard simplex in R^m.
struct RegionSpec {
  enum class Kind { Interval, Box, Simplex };
  Kind kind = Kind::Interval;
  double lo = -realroots::kInf;  // Interval
  double hi = realroots::kInf;
  std::vector<double> box_lo, box_hi;  // Box
  int m = 1;                           // Simplex

  static RegionSpec interval(double lo, double hi);
  static RegionSpec box(std::vector<double> lo, std::vector<double> hi);
  static RegionSpec simplex(int m);
  /// Dimension of the ambient space.
  int dim() const;
  bool contains(std::span<const double> x) const;
  sysroots::Region to_sys_region() const;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// Signal families of the smoothed-analysis experiment.
struct SignalSpec {
  enum class Kind { Product, Sphere };
  Kind kind = Kind::Product;
  std::vector<double> t;  // Product: coefficients of T, constant first
  int d = 2;              // Sphere
  double r = 1.0;

  /// Equations of the signal system in m variables.
  std::vector<poly::MultiPoly> build(int m) const;
  int degree() const;

  friend bool operator==(const SignalSpec&, const SignalSpec&) = default;
};

struct ExperimentSpec {
  ExperimentName name = ExperimentName::ShubSmaleUni;
  ensembles::EnsembleSpec ensemble;
  int trials = 1000;
  std::optional<RegionSpec> region;
  std::uint64_t seed = 0;
  // Experiment-specific knobs.
  std::optional<SignalSpec> signal;  // smoothed-decay
  std::vector<int> m_list;           // smoothed-decay
  int restarts = 20;                 // fekete-min
  int max_iters = 5000;              // fekete-min

  /// Throws InvalidArgument for inconsistent combinations.
  void validate() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// Welford moments with an optional reference value.
struct SummaryStats {
  std::int64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stderr_ = 0.0;
  std::optional<double> theoretical;
  std::optional<double> z;
  bool asymptotic = false;  // theoretical is only a leading-order term

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// One-pass accumulator; deterministic for a fixed push order.
class Welford {
 public:
  void push(double x);
  SummaryStats finish(std::optional<double> theoretical = std::nullopt, bool asymptotic = false) const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Report {
  ExperimentSpec spec;
  SummaryStats stats;
  std::int64_t flagged = 0;
  std::map<std::string, std::int64_t> flag_reasons;
  double wall_ms = 0.0;
  bool unreliable = false;  // flagged / n > 1%
  bool pass = true;         // z or band check, false when unreliable
  std::string check;        // "z", "band", "bound" or "none"
  nlohmann::json extra;     // experiment-specific output

  /// Every field except wall_ms.
  bool same_result(const Report& other) const;
};

struct RunOptions {
  int threads = 1;
  double z_limit = 4.0;
  /// Kac band for mean - (2/pi) ln d.
  double band_lo = 0.0;
  double band_hi = 1.2;
  /// Throw TooManyFlaggedTrials instead of returning an unreliable report.
  bool strict = false;
};

/// Stream indices at and above this value are reserved for resampling
/// flagged trials.
inline constexpr std::uint64_t kResampleBase = std::uint64_t{1} << 62;
inline constexpr int kMaxResamples = 64;

/// Per-trial statistic on one stream. Throws the numerical Error of the
/// trial; run_experiment decides whether it is resampled.
double run_trial(const ExperimentSpec& spec, std::uint64_t stream_index);

/// Closed-form reference for the experiment, if any.
std::optional<double> theoretical_value(const ExperimentSpec& spec);

Report run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {});

/// lambda_m(tau(V)) for the closed-form cases (interval, simplex).
std::optional<double> projective_measure_exact(const RegionSpec& region);

struct MeasureEstimate {
  SummaryStats stats;
  std::int64_t redrawn = 0;  // samples with coordinate sum exactly zero
};

/// Uniform y on S^m, x_i = y_i / sum(y), fraction of x inside V.
MeasureEstimate estimate_projective_measure(const RegionSpec& region, int m, std::int64_t samples, Rng& rng);
/// One sample: does the projective image of a uniform point land in V?
bool projective_sample(const RegionSpec& region, int m, Rng& rng, std::int64_t& redrawn);

struct SmoothedRow {
  int m = 0;
  std::optional<std::int64_t> n_signal;  // absent when the solution set is not finite
  std::optional<SummaryStats> perturbed;   // E N^{P + sigma X}
  std::optional<SummaryStats> noise;       // E N^{X}, reference sqrt(d^m)
  std::optional<double> ratio;             // perturbed mean / noise mean
  double a_m = 0.0;
  double b_m = 0.0;
  bool h2 = false;
  std::int64_t flagged = 0;
};

struct SmoothedOptions {
  int threads = 1;
  double r0 = 2.0;
  double ell = 0.1;
  /// Largest m that is sampled; rows above it carry only N^P and the
  /// functionals.
  int max_sampled_m = 2;
};

std::vector<SmoothedRow> smoothed_decay_experiment(const SignalSpec& signal, const std::vector<int>& m_list,
                                                   double sigma, int trials, std::uint64_t seed,
                                                   const SmoothedOptions& opts = {});
nlohmann::json to_json(const SmoothedRow& row);

/// CSV columns: experiment,n,mean,stderr,theoretical,z,flagged,wall_ms.
void write_csv_header(std::ostream& out);
void write_csv_row(const Report& r, std::ostream& out);
nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const SummaryStats& s);

nlohmann::json spec_to_json(const ExperimentSpec& s);
/// Throws ParseError naming the offending field.
ExperimentSpec spec_from_json(const nlohmann::json& j);
/// Throws ParseError with the line number on malformed JSON.
ExperimentSpec parse_spec(const std::string& text);
ExperimentSpec read_spec(const std::string& path);
void write_spec(const ExperimentSpec& s, const std::string& path);

/// Default seed when neither a flag, RANDROOTS_SEED nor the experiment file sets one.
inline constexpr std::uint64_t kDefaultSeed = 20240611;
/// RANDROOTS_SEED parsed as an unsigned 64-bit integer, if set.
/// Throws ParseError when it is set but malformed.
std::optional<std::uint64_t> seed_from_env();

/// The experiments with their default sizes.
std::vector<ExperimentSpec> predefined_specs();

}  // namespace randroots::harness
