#include <cmath>
#include <functional>
#include <sstream>

#include "commands.hpp"
#include "ermrates/dims.hpp"
#include "ermrates/distros.hpp"
#include "ermrates/erm.hpp"
#include "ermrates/io.hpp"

namespace ermrates::cli {

namespace fs = std::filesystem;

Witness threshold_eluder_witness(const ConceptClass& c) {
  Witness w;
  w.kind = WitnessKind::EluderSequence;
  for (std::size_t x = 0; x < c.domain().size(); ++x) {
    const auto t = static_cast<std::int64_t>(c.domain().point(x).id);
    std::optional<std::size_t> h;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto* r = std::get_if<Threshold>(&c.hypothesis(i).rule());
      if (r && r->t == t) h = i;
    }
    if (!h) throw InputError("threshold_eluder_witness needs a thresholds-N class");
    w.points.push_back(x);
    w.labels.push_back(0);
    w.hypotheses.push_back(*h);
  }
  return w;
}

Witness singleton_star_eluder_witness(const ConceptClass& c, int K) {
  Witness w;
  w.kind = WitnessKind::SePrefix;
  std::size_t x = 0;
  for (int k = 1; k <= K; ++k) {
    w.block_sizes.push_back(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j, ++x) {
      if (x >= c.domain().size()) throw InputError("singletons class too small for " + std::to_string(K) + " blocks");
      Bits table(c.domain().size());
      table.set(x);
      const auto h = c.find(table);
      if (!h) throw InputError("singleton_star_eluder_witness needs a singletons-N class");
      w.points.push_back(x);
      w.labels.push_back(0);
      w.hypotheses.push_back(*h);
    }
  }
  return w;
}

ConceptClass parity_class() {
  std::vector<std::vector<int>> tables;
  for (int mask = 0; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2) continue;
    std::vector<int> row;
    for (int j = 0; j < 4; ++j) row.push_back(mask >> j & 1);
    tables.push_back(row);
  }
  return explicit_class({1, 2, 3, 4}, tables, "even-parity-4");
}

namespace {

struct Ctx {
  fs::path dir;
  const Common& common;
  std::optional<std::int64_t> trials;
  std::ostringstream summary;
  std::ostream& log;

  std::int64_t trials_or(std::int64_t def) const { return trials.value_or(def); }
};

std::string category_line(const RateFit& f) {
  std::ostringstream os;
  os << "fitted category: " << to_string(f.category);
  for (const auto& m : f.models) os << "  [" << m.model << " mse=" << format_number(m.mse) << "]";
  return os.str();
}

void curve_part(Ctx& ctx, const ConceptClass& c, const RealizableDistribution& p, RuleId rule,
                const std::vector<std::int64_t>& grid, std::int64_t trials, const std::vector<BoundSpec>& bounds) {
  CurveOptions opt;
  opt.grid = grid;
  opt.trials = ctx.trials_or(trials);
  opt.seed = ctx.common.seed;
  opt.threads = ctx.common.threads;
  const auto curve = estimate_curve(c, p, rule, opt);
  const auto fit = fit_category(curve);

  std::ostringstream csv;
  write_curve_csv(csv, curve);
  io::write_text(ctx.dir / "curve.csv", csv.str());
  io::write_json(ctx.dir / "curve.json",
                 {{"class", io::class_spec(c)}, {"curve", io::curve_metadata(curve)}, {"distribution", io::to_json(p)}});
  io::write_json(ctx.dir / "fit.json", io::to_json(fit));

  io::json reports = io::json::array();
  auto& s = ctx.summary;
  s << "curve: rule " << curve.rule << ", distribution " << curve.distribution << ", " << curve.trials
    << " trials, seed " << curve.seed << "\n";
  s << "  n  mean  stderr\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    s << "  " << curve.grid[i] << "  " << format_number(curve.mean[i]) << "  " << format_number(curve.std_error[i])
      << (curve.flagged[i] ? "  (flagged trials: " + std::to_string(curve.flagged[i]) + ")" : "") << "\n";
  s << category_line(fit) << "\n";
  for (const auto& b : bounds) {
    const auto r = verify_bounds(curve, b);
    reports.push_back(io::to_json(r));
    s << "bound " << b.label << ": " << (r.ok ? "PASS" : "FAIL") << " (" << r.passed << "/" << r.points.size()
      << " grid points)\n";
  }
  io::write_json(ctx.dir / "bounds.json", reports);
}

void dims_part(Ctx& ctx, const ConceptClass& c, ReportOptions opt, const std::string& file = "dims.json") {
  const auto r = compute_report(c, opt);
  io::write_json(ctx.dir / file, io::to_json(r, c));
  auto& s = ctx.summary;
  s << "dimensions of " << c.name() << io::json(c.params()).dump() << ": vc=" << r.vc.value
    << " star=" << r.star_global.value << " eluder=" << r.eluder.value << " littlestone=" << r.littlestone.value
    << (r.vc.cap_reached ? " (vc cap reached)" : "") << "\n";
  for (const auto& [name, d] : r.star_centered) s << "  star number centered at " << name << ": " << d.value << "\n";
  auto evidence = [&](const char* what, const std::vector<PrefixEvidence>& ev) {
    for (const auto& e : ev)
      s << "  " << what << " prefix, " << (e.block_size ? "block size " + std::to_string(*e.block_size) : "strong")
        << ", center " << e.center << ": " << e.depth << " of " << e.K << " blocks"
        << (e.depth < e.K ? (e.exhaustive ? " (refuted exhaustively)" : " (search capped)") : "") << "\n";
  };
  evidence("star-eluder", r.se_evidence);
  evidence("VC-eluder", r.vce_evidence);
}

void classify_part(Ctx& ctx, const std::string& id, Params fixed, const std::string& vary,
                   const std::vector<std::int64_t>& values, int se_blocks) {
  std::vector<DimensionReport> trend;
  io::json reports = io::json::array();
  for (auto v : values) {
    fixed[vary] = v;
    const auto c = build_catalog_class(id, fixed);
    ReportOptions opt;
    opt.se_blocks = se_blocks;
    trend.push_back(compute_report(c, opt));
    reports.push_back({{"params", c.params()}, {"vc", trend.back().vc.value}, {"eluder", trend.back().eluder.value},
                       {"hypotheses", c.size()}});
  }
  const auto cls = classify_rate(trend);
  io::write_json(ctx.dir / "classify.json", {{"classification", io::to_json(cls)}, {"trend", reports}});
  ctx.summary << "rate classification over " << vary << " in " << io::json(values).dump() << ": "
              << to_string(cls.category) << "\n";
  for (const auto& n : cls.notes) ctx.summary << "  " << n << "\n";
}

BoundSpec bound(EnvelopeKind kind, BoundDirection dir, double A, std::string label) {
  BoundSpec b;
  b.kind = kind;
  b.direction = dir;
  b.A = A;
  b.label = std::move(label);
  return b;
}

RealizableDistribution all_zero_on(const std::vector<PointId>& ids, const std::vector<Dyadic>& masses,
                                   const std::string& name) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < ids.size(); ++i) atoms.push_back({Point{ids[i], std::nullopt}, 0, masses[i].value(), masses[i]});
  return RealizableDistribution(atoms, "all-0 labeling", name);
}

BoundSpec finite_class_bound(const ConceptClass& c, const RealizableDistribution& p) {
  auto b = bound(EnvelopeKind::ExpDecay, BoundDirection::Upper, static_cast<double>(c.size()),
                 "|H| exp(-c n), c = min positive member error");
  b.c = min_positive_error(c, p);
  return b;
}

void finite_bundle(Ctx& ctx, const ConceptClass& c, const RealizableDistribution& p) {
  ReportOptions opt;
  dims_part(ctx, c, opt);
  curve_part(ctx, c, p, RuleId::WorstCase, dyadic_grid(0, 10), 20000, {finite_class_bound(c, p)});
}

void thresholds_bundle(Ctx& ctx, RuleId rule) {
  const auto c = build_catalog_class("thresholds-N", {{"m", 40}});
  const auto p = geometric_eluder(c, threshold_eluder_witness(c));
  auto lower = bound(EnvelopeKind::ConstOverN, BoundDirection::Lower, 1.0 / 18, "lower 1/(18n) on half the grid");
  lower.slack_sigmas = 0;
  lower.quantifier = Quantifier::Fraction;
  curve_part(ctx, c, p, rule, dyadic_grid(4, 10), 20000,
             {bound(EnvelopeKind::InverseNPlus1, BoundDirection::Upper, 1, "upper 1/(n+1) at every n"), lower});
  ReportOptions opt;
  opt.se_blocks = 3;
  dims_part(ctx, build_catalog_class("thresholds-N", {{"m", 8}}), opt);
}

void b5_bundle(Ctx& ctx) {
  const auto rate = rate_inverse_sqrt();
  const auto design = block_design(rate, 4);
  const auto sched = slow_schedule(rate, 4);
  io::write_json(ctx.dir / "schedule.json", {{"design", io::to_json(design)},
                                             {"design_check", io::to_json(check_block_design(design, rate))},
                                             {"schedule", io::to_json(sched)},
                                             {"schedule_check", io::to_json(check_schedule(sched, rate))}});
  ctx.summary << "block design for R(n) = n^-1/2: i = " << io::json(design.i).dump() << ", n = "
              << io::json(design.n).dump() << "\n";
  ctx.summary << "sequence-design schedule (C = " << sched.C << "): n = " << io::json(sched.n).dump()
              << ", k = " << io::json(sched.k).dump() << ", conditions "
              << (check_schedule(sched, rate).ok ? "hold" : "VIOLATED") << "\n";
  const auto c = build_catalog_class(
      "ex-B5-blocks", {{"i_min", design.i.front()}, {"i_max", design.i.back()}, {"materialize", 0}});
  const auto p = block_distribution(c, design);
  auto b = bound(EnvelopeKind::PowerLaw, BoundDirection::Lower, 1, "lower R(n_t) = n_t^-1/2 at every scheduled n_t");
  b.alpha = 0.5;
  curve_part(ctx, c, p, RuleId::B5MinConsistentBlock, design.n, 20000, {b});
}

void slow_bundle(Ctx& ctx) {
  const auto rate = rate_inverse_sqrt();
  const auto sched = slow_schedule(rate, 4);
  io::write_json(ctx.dir / "schedule.json",
                 {{"schedule", io::to_json(sched)}, {"check", io::to_json(check_schedule(sched, rate))}});
  const auto c = build_catalog_class("ex-B8", {{"k_max", sched.k.back()}});
  const Bits center = all_zero(c);
  const auto pre = vce_prefix(c, center, std::nullopt, static_cast<int>(sched.k.back()));
  if (pre.depth < sched.k.back()) throw InputError("VC-eluder prefix too short for the schedule");
  // Sink: a point of an unscheduled block, labeled by the center.
  std::size_t sink = 0;
  for (const auto& blk : c.blocks())
    if (std::find(sched.k.begin(), sched.k.end(), blk.index) == sched.k.end()) {
      sink = blk.points.front();
      break;
    }
  const auto p = slow_distribution(c, pre.witness, center, sched, c.domain().point(sink).id);
  ctx.summary << "schedule (C = " << sched.C << "): n = " << io::json(sched.n).dump() << ", k = "
              << io::json(sched.k).dump() << "\n";
  auto b = bound(EnvelopeKind::PowerLaw, BoundDirection::Lower, sched.C / 16,
                 "lower (C/16) R(n_t) at scheduled n_t, from p_t (1 - 2/n_t)^n_t");
  b.alpha = 0.5;
  std::vector<std::int64_t> grid;
  for (auto n : sched.n)
    if (n >= 4) grid.push_back(n);
  curve_part(ctx, c, p, RuleId::WorstCase, grid, 20000, {b});
}

using BundleFn = std::function<void(Ctx&)>;

struct Entry {
  BundleInfo info;
  BundleFn run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"1.2", "finite class: exponential rate", {"powerset"}},
       [](Ctx& ctx) {
         const auto c = build_catalog_class("powerset", {{"m", 3}});
         finite_bundle(ctx, c, all_zero_on({1, 2, 3}, {{1, 1}, {1, 2}, {1, 2}}, "dyadic all-0"));
       }},
      {{"1.3", "thresholds on N: linear rate (scripted worst-case ERM)", {"thresholds-N"}},
       [](Ctx& ctx) { thresholds_bundle(ctx, RuleId::ThresholdMaxPlus1); }},
      {{"1.4", "singletons: log(n)/n rate from a block star-eluder distribution", {"singletons-N"}},
       [](Ctx& ctx) {
         const auto c = build_catalog_class("singletons-N", {{"m", 529}});
         const auto w = singleton_star_eluder_witness(c, 32);
         const auto p = block_star_eluder(c, w, std::vector<std::size_t>{1, 3, 7, 15, 31});
         auto b = bound(EnvelopeKind::LogNOverN, BoundDirection::Lower, 1.0 / 32,
                        "illustrative lower log(n)/(32n) on half the grid");
         b.quantifier = Quantifier::Fraction;
         curve_part(ctx, c, p, RuleId::WorstCase, dyadic_grid(4, 14), 20000, {b});
         ReportOptions opt;
         opt.se_blocks = 3;
         dims_part(ctx, build_catalog_class("singletons-N", {{"m", 6}}), opt);
       }},
      {{"1.5", "arbitrarily slow rate from a VC-eluder prefix and a sequence-design schedule", {"ex-B8"}}, slow_bundle},
      {{"1.7", "halfspaces on the circle: finite VC, growing star number", {"halfspaces-circle"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 3;
         opt.vce_blocks = 3;
         dims_part(ctx, build_catalog_class("halfspaces-circle", {{"n", 12}}), opt);
         classify_part(ctx, "halfspaces-circle", {}, "n", {6, 9, 12}, 3);
       }},
      {{"B.1", "finite class: |H| exp(-cn) envelope", {}},
       [](Ctx& ctx) {
         const auto c = parity_class();
         std::vector<Atom> atoms;
         const double ps[] = {0.4, 0.3, 0.2, 0.1};
         for (PointId i = 1; i <= 4; ++i) atoms.push_back({Point{i, std::nullopt}, 0, ps[i - 1], std::nullopt});
         finite_bundle(ctx, c, RealizableDistribution(atoms, "all-0 labeling", "explicit (0.4,0.3,0.2,0.1)"));
       }},
      {{"B.2", "thresholds on N: geometric distribution, worst-case ERM", {"thresholds-N"}},
       [](Ctx& ctx) { thresholds_bundle(ctx, RuleId::WorstCase); }},
      {{"B.3", "thresholds with an interior target: 2/n envelope", {"thresholds-N"}},
       [](Ctx& ctx) {
         const auto c = build_catalog_class("thresholds-N", {{"m", 64}});
         std::vector<Atom> atoms;
         for (PointId i = 1; i <= 64; ++i) atoms.push_back({Point{i, std::nullopt}, i >= 33 ? 1 : 0, 1.0 / 64, Dyadic{1, 6}});
         const RealizableDistribution p(atoms, "threshold(33)", "uniform, interior target");
         curve_part(ctx, c, p, RuleId::WorstCase, dyadic_grid(4, 12), 20000,
                    {bound(EnvelopeKind::ConstOverN, BoundDirection::Upper, 2, "upper 2/n at every n")});
       }},
      {{"B.4", "singletons: uniform distribution, coupon-collector behaviour", {"singletons-N"}},
       [](Ctx& ctx) {
         const auto c = build_catalog_class("singletons-N", {{"m", 65}});
         auto b = bound(EnvelopeKind::ExpDecay, BoundDirection::Upper, 1, "upper exp(-n/64) (union bound)");
         b.c = 1.0 / 64;
         curve_part(ctx, c, uniform_singleton(64), RuleId::WorstCase, dyadic_grid(4, 14), 20000, {b});
         ReportOptions opt;
         dims_part(ctx, build_catalog_class("singletons-N", {{"m", 6}}), opt);
       }},
      {{"B.5", "block class: worst-case ERM slower than R(n) = n^-1/2", {"ex-B5-blocks"}}, b5_bundle},
      {{"B.6", "thresholds on N: eluder sequence without a deep Littlestone tree", {"thresholds-N"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 3;
         dims_part(ctx, build_catalog_class("thresholds-N", {{"m", 16}}), opt);
         classify_part(ctx, "thresholds-N", {}, "m", {4, 8, 16}, 3);
       }},
      {{"B.7", "singleton blocks: star-eluder prefix without a deep Littlestone tree", {"ex-B7"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 5;
         opt.vce_blocks = 2;
         dims_part(ctx, build_catalog_class("ex-B7", {{"k_max", 5}}), opt);
         classify_part(ctx, "ex-B7", {}, "k_max", {3, 4, 5}, 3);
       }},
      {{"B.8", "subset blocks: VC-eluder prefix, VC dimension grows", {"ex-B8"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.vce_blocks = 4;
         dims_part(ctx, build_catalog_class("ex-B8", {{"k_max", 4}}), opt);
         classify_part(ctx, "ex-B8", {}, "k_max", {2, 3, 4}, 2);
       }},
      {{"B.9", "large star sets but short star-eluder prefixes", {"ex-B9"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 4;
         opt.centers = {};
         dims_part(ctx, build_catalog_class("ex-B9", {{"k_max", 5}}), opt);
         classify_part(ctx, "ex-B9", {}, "k_max", {3, 4, 5}, 3);
       }},
      {{"B.10", "constant-size star-eluder blocks without a strong prefix", {"ex-B10"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 3;
         opt.block_sizes = {2, 3};
         dims_part(ctx, build_catalog_class("ex-B10", {{"k_max", 3}, {"t_max", 3}}), opt);
       }},
      {{"C.2", "VC dimension d+1 with VC-eluder dimension 1", {"ex-C2"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.vce_blocks = 4;
         opt.block_sizes = {1, 2};
         dims_part(ctx, build_catalog_class("ex-C2", {{"d", 3}, {"k_max", 8}}), opt);
       }},
      {{"C.5", "size-d blocks with tails: star-eluder and VC-eluder variants", {"ex-C5"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 3;
         opt.vce_blocks = 3;
         opt.block_sizes = {1, 3};
         dims_part(ctx, build_catalog_class("ex-C5", {{"d", 3}, {"k_max", 4}}), opt);
       }},
      {{"C.6", "subset blocks with tails: VC-eluder variants", {"ex-C6"}},
       [](Ctx& ctx) {
         ReportOptions opt;
         opt.se_blocks = 3;
         opt.vce_blocks = 3;
         opt.block_sizes = {1, 3};
         dims_part(ctx, build_catalog_class("ex-C6", {{"d", 3}, {"k_max", 4}}), opt);
       }},
  };
  return entries;
}

}  // namespace

const std::vector<BundleInfo>& bundles() {
  static const std::vector<BundleInfo> infos = [] {
    std::vector<BundleInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

int cmd_reproduce(const Common& common, const ReproduceConfig& cfg, std::ostream& log) {
  for (const auto& e : registry()) {
    if (e.info.id != cfg.id) continue;
    Ctx ctx{common.out / ("example-" + e.info.id), common, cfg.trials, {}, log};
    fs::create_directories(ctx.dir);
    ctx.summary << "example " << e.info.id << ": " << e.info.title << "\n\n";
    e.run(ctx);
    io::write_text(ctx.dir / "summary.txt", ctx.summary.str());
    log << ctx.summary.str();
    return kOk;
  }
  std::string ids;
  for (const auto& b : bundles()) ids += " " + b.id;
  throw InputError("unknown example id '" + cfg.id + "'; known:" + ids);
}

}  // namespace ermrates::cli
