#include "ermrates/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <thread>

namespace ermrates {

std::string to_string(RuleId r) {
  switch (r) {
    case RuleId::WorstCase:
      return "worst-case";
    case RuleId::BestCase:
      return "best-case";
    case RuleId::ThresholdMaxPlus1:
      return "threshold-maxplus1";
    case RuleId::B5MinConsistentBlock:
      return "b5-min-consistent-block";
  }
  return "?";
}

RuleId parse_rule(const std::string& name) {
  if (name == "worst-case") return RuleId::WorstCase;
  if (name == "best-case") return RuleId::BestCase;
  if (name == "threshold-maxplus1") return RuleId::ThresholdMaxPlus1;
  if (name == "b5-min-consistent-block") return RuleId::B5MinConsistentBlock;
  throw InputError("unknown rule '" + name + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t n, std::int64_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

namespace {

std::discrete_distribution<std::size_t> atom_sampler(const RealizableDistribution& p) {
  const auto m = p.masses();
  return std::discrete_distribution<std::size_t>(m.begin(), m.end());
}

}  // namespace

Sample sample_dataset(const RealizableDistribution& p, std::int64_t n, std::uint64_t seed) {
  if (n < 0) throw InputError("sample size must be non-negative");
  std::mt19937_64 rng(seed);
  auto draw = atom_sampler(p);
  Sample s;
  s.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& a = p.support()[draw(rng)];
    s.push_back({a.point, a.label});
  }
  return s;
}

std::vector<std::int64_t> dyadic_grid(int lo_exp, int hi_exp) {
  std::vector<std::int64_t> g;
  for (int e = lo_exp; e <= hi_exp; ++e) g.push_back(std::int64_t{1} << e);
  return g;
}

namespace {

// Maps the set of distinct atoms seen in a trial to the learner's error.
class Evaluator {
 public:
  Evaluator(const ConceptClass& c, const RealizableDistribution& p, RuleId rule) : c_(c), p_(p), rule_(rule) {
    for (const auto& a : p.support()) atom_index_.push_back(c.domain().require_index(a.point.id));
    if (rule == RuleId::WorstCase || rule == RuleId::BestCase) {
      errors_ = member_errors(c, p);
      order_.resize(c.size());
      std::iota(order_.begin(), order_.end(), std::size_t{0});
      const bool worst = rule == RuleId::WorstCase;
      std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return worst ? errors_[a] > errors_[b] : errors_[a] < errors_[b];
      });
      violations_.assign(c.size(), Bits(p.size()));
      for (std::size_t i = 0; i < p.size(); ++i)
        eliminated_by(c, atom_index_[i], p.support()[i].label).for_each([&](std::size_t h) { violations_[h].set(i); });
    }
  }

  double error(const Bits& seen, bool& flagged) const {
    if (rule_ == RuleId::WorstCase || rule_ == RuleId::BestCase) {
      for (auto h : order_)
        if (!violations_[h].intersects(seen)) return errors_[h];
      flagged = true;
      return 1.0;
    }
    try {
      const auto h = scripted_erm(rule_ == RuleId::ThresholdMaxPlus1 ? ScriptedRule::ThresholdMaxPlus1
                                                                    : ScriptedRule::B5MinConsistentBlock,
                                  c_, sample_of(seen));
      return true_error(h, p_);
    } catch (const InputError&) {
      flagged = true;
      return 1.0;
    }
  }

  Sample sample_of(const Bits& seen) const {
    Sample s;
    seen.for_each([&](std::size_t i) { s.push_back({p_.support()[i].point, p_.support()[i].label}); });
    return s;
  }

 private:
  const ConceptClass& c_;
  const RealizableDistribution& p_;
  RuleId rule_;
  std::vector<std::size_t> atom_index_;
  std::vector<double> errors_;
  std::vector<std::size_t> order_;
  std::vector<Bits> violations_;
};

Bits draw_seen(std::discrete_distribution<std::size_t>& draw, std::mt19937_64& rng, std::int64_t n, std::size_t atoms) {
  Bits seen(atoms);
  std::size_t distinct = 0;
  for (std::int64_t i = 0; i < n && distinct < atoms; ++i) {
    const auto a = draw(rng);
    if (!seen.test(a)) {
      seen.set(a);
      ++distinct;
    }
  }
  return seen;
}

struct TrialOutcome {
  double error = 0;
  bool flagged = false;
  std::size_t compression = 0;
  bool compression_exact = true;
};

void mean_and_se(const std::vector<double>& v, double& mean, double& se) {
  const double n = static_cast<double>(v.size());
  double sum = 0;
  for (double x : v) sum += x;
  mean = sum / n;
  if (v.size() < 2) {
    se = 0;
    return;
  }
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / (n - 1) / n);
}

}  // namespace

LearningCurve estimate_curve(const ConceptClass& c, const RealizableDistribution& p, RuleId rule,
                             const CurveOptions& opt) {
  if (opt.trials < 1) throw InputError("trials must be at least 1");
  for (std::size_t i = 0; i < opt.grid.size(); ++i)
    if (opt.grid[i] < 0 || (i > 0 && opt.grid[i] <= opt.grid[i - 1]))
      throw InputError("grid must be non-negative and strictly increasing");
  if (opt.compression && !c.materialized()) throw InputError("compression sets need a materialized class");

  const Evaluator eval(c, p, rule);
  const std::size_t trials = static_cast<std::size_t>(opt.trials);
  const std::size_t jobs = opt.grid.size() * trials;
  std::vector<TrialOutcome> out(jobs);

  auto work = [&](std::size_t from, std::size_t to) {
    auto draw = atom_sampler(p);
    for (std::size_t j = from; j < to; ++j) {
      const std::int64_t n = opt.grid[j / trials];
      std::mt19937_64 rng(trial_seed(opt.seed, n, static_cast<std::int64_t>(j % trials)));
      draw.reset();
      const Bits seen = draw_seen(draw, rng, n, p.size());
      auto& o = out[j];
      o.error = eval.error(seen, o.flagged);
      if (opt.compression) {
        const auto cs = compression_set(c, eval.sample_of(seen), opt.compression_budget);
        o.compression = cs.subset.size();
        o.compression_exact = cs.exact;
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opt.threads, jobs));
  if (workers == 1) {
    work(0, jobs);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, jobs * w / workers, jobs * (w + 1) / workers);
    for (auto& t : pool) t.join();
  }

  LearningCurve curve;
  curve.grid = opt.grid;
  curve.trials = opt.trials;
  curve.seed = opt.seed;
  curve.rule = to_string(rule);
  curve.distribution = p.construction();
  curve.distribution_params = p.params();
  std::vector<double> errs(trials), sizes(trials);
  for (std::size_t g = 0; g < opt.grid.size(); ++g) {
    std::int64_t flagged = 0;
    std::size_t mx = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& o = out[g * trials + t];
      errs[t] = o.error;
      flagged += o.flagged ? 1 : 0;
      sizes[t] = static_cast<double>(o.compression);
      mx = std::max(mx, o.compression);
      curve.compression_exact = curve.compression_exact && o.compression_exact;
    }
    double m = 0, se = 0;
    mean_and_se(errs, m, se);
    curve.mean.push_back(m);
    curve.std_error.push_back(se);
    curve.flagged.push_back(flagged);
    if (opt.compression) {
      mean_and_se(sizes, m, se);
      curve.compression_mean.push_back(m);
      curve.compression_std_error.push_back(se);
      curve.compression_max.push_back(mx);
    }
  }
  return curve;
}

std::vector<double> trial_errors(const ConceptClass& c, const RealizableDistribution& p, RuleId rule,
                                 std::int64_t n, std::int64_t trials, std::uint64_t seed) {
  const Evaluator eval(c, p, rule);
  auto draw = atom_sampler(p);
  std::vector<double> out;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, n, t));
    draw.reset();
    bool flagged = false;
    out.push_back(eval.error(draw_seen(draw, rng, n, p.size()), flagged));
  }
  return out;
}

std::vector<RatioPoint> ratio_diagnostic(const LearningCurve& curve) {
  std::vector<RatioPoint> out;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const auto it = std::find(curve.grid.begin(), curve.grid.end(), 2 * curve.grid[i]);
    if (curve.grid[i] == 0 || it == curve.grid.end()) continue;
    const auto j = static_cast<std::size_t>(it - curve.grid.begin());
    RatioPoint r;
    r.n = curve.grid[i];
    const double m1 = curve.mean[i], m2 = curve.mean[j];
    const double s1 = curve.std_error[i], s2 = curve.std_error[j];
    if (m1 > 0) {
      r.defined = true;
      r.ratio = m2 / m1;
      r.uncertainty = std::sqrt(s2 * s2 + r.ratio * r.ratio * s1 * s1) / m1;
    }
    out.push_back(r);
  }
  return out;
}

namespace {

ModelFit fit_fixed_slope(const std::string& name, const std::vector<double>& y, const std::vector<double>& shape) {
  ModelFit f{name, 0, 1, 0, y.size()};
  if (y.empty()) {
    f.mse = INFINITY;
    return f;
  }
  for (std::size_t i = 0; i < y.size(); ++i) f.log_A += y[i] - shape[i];
  f.log_A /= static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) f.mse += std::pow(y[i] - shape[i] - f.log_A, 2);
  f.mse /= static_cast<double>(y.size());
  return f;
}

// Ordinary least squares y = a + b x.
std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double b = sxx > 0 ? sxy / sxx : 0;
  return {my - b * mx, b};
}

}  // namespace

RateFit fit_category(const LearningCurve& curve) {
  RateFit fit;
  std::vector<double> ns, y;
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    if (curve.mean[i] > 0 && curve.grid[i] > 0) {
      ns.push_back(static_cast<double>(curve.grid[i]));
      y.push_back(std::log(curve.mean[i]));
    }
  for (const auto& r : ratio_diagnostic(curve))
    if (r.defined) fit.last_ratio = r.ratio;

  if (ns.size() < 4) {
    fit.category = RateCategory::Exponential;
    fit.notes.push_back("fewer than 4 positive means: curve reaches zero, exponential fast path");
    return fit;
  }

  const auto [a, b] = ols(ns, y);
  ModelFit exp_fit{"exp", a, -b, 0, ns.size()};
  for (std::size_t i = 0; i < ns.size(); ++i) exp_fit.mse += std::pow(y[i] - a - b * ns[i], 2);
  exp_fit.mse /= static_cast<double>(ns.size());

  std::vector<double> inv_shape;
  for (double n : ns) inv_shape.push_back(-std::log(n));
  const ModelFit inv_fit = fit_fixed_slope("1/n", y, inv_shape);

  std::vector<double> ly, log_shape;
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] >= 3) {
      ly.push_back(y[i]);
      log_shape.push_back(std::log(std::log(ns[i])) - std::log(ns[i]));
    }
  const ModelFit log_fit = fit_fixed_slope("log(n)/n", ly, log_shape);
  fit.models = {exp_fit, inv_fit, log_fit};

  std::vector<double> logn;
  for (double n : ns) logn.push_back(std::log(n));
  fit.loglog_slope = ols(logn, y).second;

  const bool exp_guard = fit.last_ratio && *fit.last_ratio < kExponentialRatioGuard;
  const ModelFit* best = nullptr;
  for (const auto& m : fit.models) {
    if (&m == &fit.models[0] && !exp_guard) continue;
    if (!best || m.mse < best->mse) best = &m;
  }
  if (!exp_guard && exp_fit.mse < best->mse)
    fit.notes.push_back("exponential model fits best but the ratio guard (< 0.25 at the largest pair) fails");

  if (best->mse > kSlowMseThreshold && fit.loglog_slope > kSlowSlopeThreshold) {
    fit.category = RateCategory::ArbitrarilySlow;
    fit.notes.push_back("no model fits within the residual threshold and the curve flattens");
  } else if (best->model == "exp") {
    fit.category = RateCategory::Exponential;
  } else if (best->model == "1/n") {
    fit.category = RateCategory::Linear;
  } else {
    fit.category = RateCategory::LogLinear;
  }
  return fit;
}

double BoundSpec::envelope(double n) const {
  switch (kind) {
    case EnvelopeKind::InverseNPlus1:
      return A / (n + 1);
    case EnvelopeKind::ConstOverN:
      return A / n;
    case EnvelopeKind::ExpDecay:
      return A * std::exp(-c * n);
    case EnvelopeKind::PowerLaw:
      return A * std::pow(n, -alpha);
    case EnvelopeKind::LogNOverN:
      return A * std::log(n) / n;
  }
  return 0;
}

BoundReport verify_bounds(const LearningCurve& curve, const BoundSpec& spec) {
  BoundReport r;
  r.spec = spec;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    BoundPoint p;
    p.n = curve.grid[i];
    p.mean = curve.mean[i];
    p.envelope = spec.envelope(static_cast<double>(p.n));
    p.slack = spec.slack_sigmas * curve.std_error[i];
    p.pass = spec.direction == BoundDirection::Upper ? p.mean <= p.envelope + p.slack : p.mean >= p.envelope - p.slack;
    r.passed += p.pass ? 1 : 0;
    r.points.push_back(p);
  }
  const double total = static_cast<double>(r.points.size());
  r.ok = spec.quantifier == Quantifier::AllN ? r.passed == r.points.size()
                                            : static_cast<double>(r.passed) >= spec.phi * total;
  return r;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const LearningCurve& curve) {
  os << "n,mean,stderr,trials\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    os << curve.grid[i] << ',' << format_number(curve.mean[i]) << ',' << format_number(curve.std_error[i]) << ','
       << curve.trials << '\n';
}

}  // namespace ermrates
