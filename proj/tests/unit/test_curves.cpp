#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "ermrates/curves.hpp"

using namespace ermrates;

namespace {

ConceptClass cat(const std::string& id, Params p) { return build_catalog_class(id, p); }

LearningCurve synthetic(const std::vector<std::int64_t>& grid, double (*f)(double)) {
  LearningCurve c;
  c.grid = grid;
  for (auto n : grid) {
    c.mean.push_back(f(static_cast<double>(n)));
    c.std_error.push_back(0);
  }
  c.trials = 1;
  return c;
}

double inv(double n) { return 1 / n; }
double geo(double n) { return std::exp2(-n); }
double loglin(double n) { return std::log2(n) / n; }

}  // namespace

TEST(Sampling, Examples) {
  auto p = uniform_singleton(4);
  EXPECT_TRUE(sample_dataset(p, 0, 1).empty());
  auto one = uniform_singleton(1);
  auto s = sample_dataset(one, 5, 1);
  ASSERT_EQ(s.size(), 5u);
  for (const auto& e : s) EXPECT_EQ(e, example(1, 0));
}

TEST(Sampling, FrequenciesConcentrate) {
  const std::int64_t n = 100000;
  auto s = sample_dataset(uniform_singleton(4), n, kDefaultSeed);
  std::map<PointId, double> freq;
  for (const auto& e : s) freq[e.point.id] += 1;
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
  for (auto& [id, f] : freq) EXPECT_NEAR(f / static_cast<double>(n), 0.25, 5 * sigma) << id;
}

TEST(Sampling, SeedsAreDistinct) {
  EXPECT_NE(trial_seed(1, 16, 0), trial_seed(1, 16, 1));
  EXPECT_NE(trial_seed(1, 16, 0), trial_seed(1, 32, 0));
  EXPECT_NE(trial_seed(1, 16, 0), trial_seed(2, 16, 0));
  EXPECT_EQ(dyadic_grid(2, 4), (std::vector<std::int64_t>{4, 8, 16}));
}

TEST(EstimateCurve, SingleAtomIsZero) {
  auto s = cat("singletons-N", {{"m", 3}});
  CurveOptions opt;
  opt.grid = {1, 2, 8};
  opt.trials = 200;
  auto c = estimate_curve(s, uniform_singleton(1), RuleId::WorstCase, opt);
  for (double m : c.mean) EXPECT_EQ(m, 0.0);
}

TEST(EstimateCurve, DeterministicAcrossThreads) {
  auto t = cat("thresholds-N", {{"m", 20}});
  auto p = geometric_eluder(t, cli::threshold_eluder_witness(t));
  CurveOptions opt;
  opt.grid = dyadic_grid(0, 6);
  opt.trials = 3000;
  opt.compression = true;
  auto a = estimate_curve(t, p, RuleId::WorstCase, opt);
  opt.threads = 4;
  auto b = estimate_curve(t, p, RuleId::WorstCase, opt);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.compression_mean, b.compression_mean);
  std::ostringstream x, y;
  write_curve_csv(x, a);
  write_curve_csv(y, b);
  EXPECT_EQ(x.str(), y.str());
}

TEST(EstimateCurve, MatchesTrialErrors) {
  auto t = cat("thresholds-N", {{"m", 12}});
  auto p = geometric_eluder(t, cli::threshold_eluder_witness(t));
  CurveOptions opt;
  opt.grid = {8};
  opt.trials = 500;
  auto c = estimate_curve(t, p, RuleId::WorstCase, opt);
  auto errs = trial_errors(t, p, RuleId::WorstCase, 8, 500, opt.seed);
  double sum = 0;
  for (double e : errs) sum += e;
  EXPECT_NEAR(c.mean[0], sum / 500, 1e-15);
}

TEST(EstimateCurve, WorstDominatesBestPerTrial) {
  auto t = cat("thresholds-N", {{"m", 12}});
  auto p = geometric_eluder(t, cli::threshold_eluder_witness(t));
  for (std::int64_t n : {1, 4, 16}) {
    auto w = trial_errors(t, p, RuleId::WorstCase, n, 400, 11);
    auto b = trial_errors(t, p, RuleId::BestCase, n, 400, 11);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_GE(w[i], b[i]);
  }
}

TEST(EstimateCurve, ScriptedThresholdRuleMatchesWorstCase) {
  auto t = cat("thresholds-N", {{"m", 16}});
  auto p = geometric_eluder(t, cli::threshold_eluder_witness(t));
  auto w = trial_errors(t, p, RuleId::WorstCase, 8, 300, 5);
  auto s = trial_errors(t, p, RuleId::ThresholdMaxPlus1, 8, 300, 5);
  EXPECT_EQ(w, s);
}

TEST(EstimateCurve, EmptyVersionSpaceIsFlagged) {
  auto s = cat("singletons-N", {{"m", 4}});
  CurveOptions opt;
  opt.grid = {64};
  opt.trials = 50;
  // All-0 data covering every point leaves no consistent singleton.
  auto c = estimate_curve(s, uniform_singleton(4), RuleId::WorstCase, opt);
  EXPECT_GT(c.flagged[0], 0);
}

TEST(Ratio, Examples) {
  auto g = dyadic_grid(0, 6);
  for (const auto& r : ratio_diagnostic(synthetic(g, inv))) EXPECT_DOUBLE_EQ(r.ratio, 0.5);
  for (const auto& r : ratio_diagnostic(synthetic(g, geo))) EXPECT_DOUBLE_EQ(r.ratio, std::exp2(-static_cast<double>(r.n)));
  auto lr = ratio_diagnostic(synthetic({16, 32}, loglin));
  ASSERT_EQ(lr.size(), 1u);
  EXPECT_DOUBLE_EQ(lr[0].ratio, 0.625);
}

TEST(Fit, SyntheticCurves) {
  EXPECT_EQ(fit_category(synthetic(dyadic_grid(0, 9), geo)).category, RateCategory::Exponential);
  EXPECT_EQ(fit_category(synthetic(dyadic_grid(4, 14), inv)).category, RateCategory::Linear);
  EXPECT_EQ(fit_category(synthetic(dyadic_grid(4, 14), loglin)).category, RateCategory::LogLinear);
  auto slow = synthetic(dyadic_grid(4, 14), [](double n) { return 1 / std::log(n); });
  EXPECT_EQ(fit_category(slow).category, RateCategory::ArbitrarilySlow);
}

TEST(Fit, ZeroCurveTakesFastPath) {
  auto c = synthetic(dyadic_grid(4, 8), [](double) { return 0.0; });
  EXPECT_EQ(fit_category(c).category, RateCategory::Exponential);
}

TEST(Bounds, UpperLowerAndFraction) {
  auto c = synthetic({1, 2, 4, 8}, inv);
  BoundSpec up{EnvelopeKind::InverseNPlus1, BoundDirection::Upper, 2.0};
  EXPECT_TRUE(verify_bounds(c, up).ok);
  BoundSpec low{EnvelopeKind::ConstOverN, BoundDirection::Lower, 1.0 / 18};
  EXPECT_TRUE(verify_bounds(c, low).ok);
  BoundSpec tight{EnvelopeKind::InverseNPlus1, BoundDirection::Upper, 1.0};
  auto r = verify_bounds(c, tight);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.passed, 0u);
  BoundSpec half{EnvelopeKind::PowerLaw, BoundDirection::Lower, 1.0};
  half.alpha = 1;
  half.slack_sigmas = 0;
  EXPECT_TRUE(verify_bounds(c, half).ok);
  half.A = 1.5;
  half.quantifier = Quantifier::Fraction;
  EXPECT_FALSE(verify_bounds(c, half).ok);
}

TEST(Bounds, SlackUsesStdError) {
  auto c = synthetic({4}, inv);
  c.std_error = {0.01};
  BoundSpec up{EnvelopeKind::ConstOverN, BoundDirection::Upper, 0.9};
  EXPECT_TRUE(verify_bounds(c, up).ok);  // 0.25 <= 0.225 + 0.03
  up.slack_sigmas = 1;
  EXPECT_FALSE(verify_bounds(c, up).ok);
}

TEST(Csv, TenSignificantDigits) {
  LearningCurve c;
  c.grid = {16};
  c.mean = {1.0 / 3};
  c.std_error = {0};
  c.trials = 7;
  std::ostringstream os;
  write_curve_csv(os, c);
  EXPECT_EQ(os.str(), "n,mean,stderr,trials\n16,0.3333333333,0,7\n");
}
