#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ermrates/dims.hpp"
#include "ermrates/distros.hpp"
#include "ermrates/erm.hpp"

namespace ermrates {

enum class RuleId { WorstCase, BestCase, ThresholdMaxPlus1, B5MinConsistentBlock };
std::string to_string(RuleId r);
// worst-case | best-case | threshold-maxplus1 | b5-min-consistent-block
RuleId parse_rule(const std::string& name);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

std::uint64_t splitmix64(std::uint64_t x);
// Seed of trial `trial` at sample size n.
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t n, std::int64_t trial);

// n i.i.d. draws in draw order.
Sample sample_dataset(const RealizableDistribution& p, std::int64_t n, std::uint64_t seed);

std::vector<std::int64_t> dyadic_grid(int lo_exp, int hi_exp);

struct CurveOptions {
  std::vector<std::int64_t> grid = dyadic_grid(4, 14);
  std::int64_t trials = 20000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  // Also compute a compression set per trial.
  bool compression = false;
  std::uint64_t compression_budget = 100000;
};

struct LearningCurve {
  std::vector<std::int64_t> grid;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::int64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string rule;
  std::string distribution;
  std::map<std::string, double> distribution_params;
  // Trials per n whose version space was empty or where the scripted rule did not apply;
  // each counted with error 1.
  std::vector<std::int64_t> flagged;

  // Filled when CurveOptions::compression is set.
  std::vector<double> compression_mean;
  std::vector<double> compression_std_error;
  std::vector<std::size_t> compression_max;
  bool compression_exact = true;
};

// Draws are stopped once every support atom has been seen: the outcome of a trial
// depends only on the set of distinct atoms, so the result is unchanged.
LearningCurve estimate_curve(const ConceptClass& c, const RealizableDistribution& p, RuleId rule,
                             const CurveOptions& opt = {});

// Per-trial errors at one sample size, in trial order (exposed for tests).
std::vector<double> trial_errors(const ConceptClass& c, const RealizableDistribution& p, RuleId rule,
                                 std::int64_t n, std::int64_t trials, std::uint64_t seed);

struct RatioPoint {
  std::int64_t n = 0;
  double ratio = 0;
  double uncertainty = 0;
  bool defined = false;  // false when mean(n) = 0
};
// mean(2n)/mean(n) for every n whose double is also on the grid.
std::vector<RatioPoint> ratio_diagnostic(const LearningCurve& curve);

struct ModelFit {
  std::string model;  // "exp", "1/n", "log(n)/n"
  double log_A = 0;
  double c = 0;  // decay constant of the exponential model, 1 otherwise
  double mse = 0;
  std::size_t points = 0;
};

struct RateFit {
  RateCategory category = RateCategory::Exponential;
  std::vector<ModelFit> models;
  double loglog_slope = 0;
  std::optional<double> last_ratio;
  std::vector<std::string> notes;
};

inline constexpr double kSlowMseThreshold = 0.05;
inline constexpr double kSlowSlopeThreshold = -0.75;
inline constexpr double kExponentialRatioGuard = 0.25;

RateFit fit_category(const LearningCurve& curve);

enum class EnvelopeKind { InverseNPlus1, ConstOverN, ExpDecay, PowerLaw, LogNOverN };
enum class BoundDirection { Upper, Lower };
enum class Quantifier { AllN, Fraction };

struct BoundSpec {
  EnvelopeKind kind = EnvelopeKind::InverseNPlus1;
  BoundDirection direction = BoundDirection::Upper;
  double A = 1;      // ConstOverN: A/n; ExpDecay: A e^{-cn}; PowerLaw: A n^{-alpha}; LogNOverN: A log(n)/n
  double c = 0;
  double alpha = 1;
  double slack_sigmas = 3;
  Quantifier quantifier = Quantifier::AllN;
  double phi = 0.5;
  std::string label;

  double envelope(double n) const;
};

struct BoundPoint {
  std::int64_t n = 0;
  double mean = 0;
  double envelope = 0;
  double slack = 0;
  bool pass = false;
};

struct BoundReport {
  BoundSpec spec;
  std::vector<BoundPoint> points;
  std::size_t passed = 0;
  bool ok = false;
};

BoundReport verify_bounds(const LearningCurve& curve, const BoundSpec& spec);

// Header n,mean,stderr,trials; values with 10 significant digits.
void write_curve_csv(std::ostream& os, const LearningCurve& curve);
std::string format_number(double v);

}  // namespace ermrates
