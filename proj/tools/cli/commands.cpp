#include "commands.hpp"

#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ermrates/dims.hpp"
#include "ermrates/distros.hpp"
#include "ermrates/erm.hpp"
#include "ermrates/io.hpp"

namespace ermrates::cli {

namespace {

std::int64_t to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("expected an integer for " + what + ", got '" + s + "'");
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& kv) {
  std::map<std::string, std::string> out;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected name=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

std::string get(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

}  // namespace

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& [k, v] : key_values(kv)) p[k] = to_int(v, k);
  return p;
}

ConceptClass load_class(const ClassSource& src) {
  if (!src.spec_file.empty()) {
    if (!src.id.empty()) throw InputError("give either a class-spec file or a catalog id, not both");
    return io::class_from_json(io::read_json(src.spec_file));
  }
  if (src.id.empty()) throw InputError("no class given (use --class-spec FILE or --class ID)");
  return build_catalog_class(src.id, parse_params(src.params));
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto lo = to_int(text.substr(0, colon), "grid");
    const auto hi = to_int(text.substr(colon + 1), "grid");
    if (lo < 0 || hi < lo || hi > 40) throw InputError("grid exponents must satisfy 0 <= lo <= hi <= 40");
    return dyadic_grid(static_cast<int>(lo), static_cast<int>(hi));
  }
  std::vector<std::int64_t> g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) g.push_back(to_int(item, "grid"));
  if (g.empty()) throw InputError("empty grid");
  return g;
}

int cmd_dims(const Common& common, const DimsConfig& cfg, std::ostream& log) {
  const ConceptClass c = load_class(cfg.cls);
  ReportOptions opt;
  opt.cap = cfg.cap;
  for (const auto& ctr : cfg.centers) opt.centers.push_back(io::resolve_center(c, ctr));
  opt.se_blocks = cfg.se_blocks;
  opt.vce_blocks = cfg.vce_blocks;
  opt.block_sizes = cfg.block_sizes;
  opt.caps = {cfg.max_branching, cfg.max_nodes};
  const auto report = compute_report(c, opt);
  const auto path = cfg.report.empty() ? common.out / "dims.json" : std::filesystem::path(cfg.report);
  io::write_json(path, io::to_json(report, c));
  log << c.name() << ": vc=" << report.vc.value << " star=" << report.star_global.value
      << " eluder=" << report.eluder.value << " littlestone=" << report.littlestone.value << "\n";
  for (const auto& e : report.vce_evidence)
    log << "vce-prefix " << (e.block_size ? "d=" + std::to_string(*e.block_size) : std::string("strong")) << " center "
        << e.center << ": depth " << e.depth << "/" << e.K << (e.exhaustive ? " (exhaustive)" : " (capped)") << "\n";
  for (const auto& e : report.se_evidence)
    log << "se-prefix " << (e.block_size ? "d=" + std::to_string(*e.block_size) : std::string("strong")) << " center "
        << e.center << ": depth " << e.depth << "/" << e.K << (e.exhaustive ? " (exhaustive)" : " (capped)") << "\n";
  log << "report: " << path.string() << "\n";
  if (report.any_budget_exhausted()) {
    log << "search budget exhausted; partial report written\n";
    return kBudgetExhausted;
  }
  return kOk;
}

namespace {

Bits center_of(const ConceptClass& c, const std::map<std::string, std::string>& kv) {
  return io::resolve_center(c, get(kv, "center", "all0")).labels;
}

RealizableDistribution construct(const ConceptClass& c, const std::string& name,
                                 const std::map<std::string, std::string>& kv, std::ostream& log) {
  if (name == "uniform-singleton") return uniform_singleton(to_int(get(kv, "m", "64"), "m"));
  if (name == "geometric") {
    const auto e = eluder_dim(c);
    if (e.value == 0) throw InputError("class has no eluder sequence");
    return geometric_eluder(c, e.witness);
  }
  if (name == "block-star") {
    const Bits center = center_of(c, kv);
    const auto K = static_cast<int>(to_int(get(kv, "K", "4"), "K"));
    const auto pre = se_prefix(c, center, std::nullopt, K);
    if (pre.depth == 0) throw InputError("no star-eluder prefix for this center");
    const auto t_max = static_cast<int>(to_int(get(kv, "t_max", std::to_string(pre.depth)), "t_max"));
    log << "star-eluder prefix depth " << pre.depth << "/" << K << "\n";
    return block_star_eluder(c, pre.witness, t_max);
  }
  if (name == "two-point") {
    const auto pair = two_point_pair(c);
    return to_int(get(kv, "label", "1"), "label") ? pair.p1 : pair.p0;
  }
  if (name == "block-design") {
    const auto d = block_design(parse_rate(get(kv, "rate", "n^-1/2")),
                                static_cast<int>(to_int(get(kv, "t_max", "4"), "t_max")));
    return block_distribution(c, d);
  }
  if (name == "slow") {
    const auto rate = parse_rate(get(kv, "rate", "n^-1/2"));
    const auto sched = slow_schedule(rate, static_cast<int>(to_int(get(kv, "t_max", "3"), "t_max")));
    const Bits center = center_of(c, kv);
    const int K = sched.k.empty() ? 1 : static_cast<int>(sched.k.back());
    const auto pre = vce_prefix(c, center, std::nullopt, K);
    if (pre.depth < K) throw InputError("VC-eluder prefix reaches depth " + std::to_string(pre.depth) + " < " + std::to_string(K));
    return slow_distribution(c, pre.witness, center, sched,
                             static_cast<PointId>(to_int(get(kv, "sink", "0"), "sink")));
  }
  throw InputError("unknown construction '" + name + "'");
}

}  // namespace

int cmd_curve(const Common& common, const CurveConfig& cfg, std::ostream& log) {
  const ConceptClass c = load_class(cfg.cls);
  if (cfg.distribution_file.empty() == cfg.construct.empty())
    throw InputError("give exactly one of --distribution FILE or --construct NAME");
  const auto p = cfg.distribution_file.empty()
                     ? construct(c, cfg.construct, key_values(cfg.construct_params), log)
                     : io::distribution_from_json(io::read_json(cfg.distribution_file));
  if (c.materialized() && !realizable_in(c, p)) log << "warning: no class member has zero error under P\n";

  CurveOptions opt;
  opt.grid = parse_grid(cfg.grid);
  opt.trials = cfg.trials;
  opt.seed = common.seed;
  opt.threads = common.threads;
  opt.compression = cfg.compression;
  const auto curve = estimate_curve(c, p, parse_rule(cfg.rule), opt);
  const auto fit = fit_category(curve);

  std::ostringstream csv;
  write_curve_csv(csv, curve);
  io::write_text(common.out / "curve.csv", csv.str());
  io::write_json(common.out / "curve.json",
                 {{"class", io::class_spec(c)}, {"curve", io::curve_metadata(curve)}, {"distribution", io::to_json(p)}});
  io::write_json(common.out / "fit.json", io::to_json(fit));
  log << "fit: " << to_string(fit.category) << "\n";
  return kOk;
}

int cmd_classify(const Common& common, const ClassifyConfig& cfg, std::ostream& log) {
  std::vector<ConceptClass> classes;
  for (const auto& f : cfg.spec_files) classes.push_back(load_class({f, "", {}}));
  if (!cfg.id.empty()) {
    if (cfg.vary.empty() || cfg.values.empty()) {
      classes.push_back(load_class({"", cfg.id, cfg.params}));
    } else {
      for (auto v : cfg.values) {
        auto params = cfg.params;
        params.push_back(cfg.vary + "=" + std::to_string(v));
        classes.push_back(load_class({"", cfg.id, params}));
      }
    }
  }
  if (classes.empty()) throw InputError("classify needs at least one class");
  std::vector<DimensionReport> trend;
  io::json reports = io::json::array();
  for (const auto& c : classes) {
    ReportOptions opt;
    opt.se_blocks = cfg.se_blocks;
    trend.push_back(compute_report(c, opt));
    reports.push_back(io::to_json(trend.back(), c));
  }
  const auto cls = classify_rate(trend);
  io::write_json(common.out / "classify.json", {{"classification", io::to_json(cls)}, {"reports", reports}});
  log << to_string(cls.category) << "\n";
  for (const auto& n : cls.notes) log << "  " << n << "\n";
  return kOk;
}

int cmd_schedule(const Common& common, const ScheduleConfig& cfg, std::ostream& log) {
  const auto rate = parse_rate(cfg.rate);
  ScheduleOptions opt;
  opt.n_max = cfg.n_max;
  if (cfg.blocks) {
    const auto d = block_design(rate, cfg.t_max, opt);
    const auto check = check_block_design(d, rate);
    io::write_json(common.out / "schedule.json", {{"design", io::to_json(d)}, {"check", io::to_json(check)}});
    for (std::size_t t = 0; t < d.i.size(); ++t)
      log << "t=" << t + 1 << " i=" << d.i[t] << " n=" << d.n[t] << " p=" << format_number(d.p[t]) << "\n";
    return kOk;
  }
  const auto s = slow_schedule(rate, cfg.t_max, opt);
  const auto check = check_schedule(s, rate);
  io::write_json(common.out / "schedule.json", {{"schedule", io::to_json(s)}, {"check", io::to_json(check)}});
  log << "C=" << s.C << "\n";
  for (std::size_t t = 0; t < s.p.size(); ++t)
    log << "t=" << t + 1 << " n=" << s.n[t] << " k=" << s.k[t] << " p=" << format_number(s.p[t]) << "\n";
  return kOk;
}

namespace {

void add_common(CLI::App* app, Common& common) {
  app->add_option("--seed", common.seed, "master seed (U64)");
  app->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app->add_option("--out", common.out, "output directory");
}

void add_class(CLI::App* app, ClassSource& cls) {
  app->add_option("--class-spec", cls.spec_file, "class-spec JSON file");
  app->add_option("--class", cls.id, "catalog class id");
  app->add_option("--param", cls.params, "catalog parameter name=value (repeatable)");
}

}  // namespace

int run(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Universal ERM learning rates: dimensions, adversarial distributions and learning curves"};
  app.require_subcommand(1);
  Common common;

  DimsConfig dims;
  auto* d = app.add_subcommand("dims", "combinatorial dimensions and SE/VCE prefix evidence");
  add_common(d, common);
  add_class(d, dims.cls);
  d->add_option("--cap", dims.cap, "dimension search cap (default: domain size)");
  d->add_option("--center", dims.centers, "all0 | all1 | hyp:i | FILE (repeatable)");
  d->add_option("--se-blocks", dims.se_blocks, "star-eluder prefix blocks K");
  d->add_option("--vce-blocks", dims.vce_blocks, "VC-eluder prefix blocks K");
  d->add_option("--block-size", dims.block_sizes, "also evaluate the constant block-size variant d (repeatable)");
  d->add_option("--max-nodes", dims.max_nodes, "prefix search node cap");
  d->add_option("--max-branching", dims.max_branching, "prefix search branching cap");
  d->add_option("--report", dims.report, "report path (default OUT/dims.json)");

  CurveConfig curve;
  auto* cv = app.add_subcommand("curve", "Monte Carlo learning curve and rate fit");
  add_common(cv, common);
  add_class(cv, curve.cls);
  cv->add_option("--distribution", curve.distribution_file, "distribution JSON file");
  cv->add_option("--construct", curve.construct,
                 "geometric | block-star | uniform-singleton | two-point | block-design | slow");
  cv->add_option("--cparam", curve.construct_params, "construction parameter name=value (repeatable)");
  cv->add_option("--rule", curve.rule, "worst-case | best-case | threshold-maxplus1 | b5-min-consistent-block");
  cv->add_option("--grid", curve.grid, "lo:hi (dyadic exponents) or n1,n2,...");
  cv->add_option("--trials", curve.trials, "trials per grid point")->check(CLI::PositiveNumber);
  cv->add_flag("--compression", curve.compression, "also record compression-set sizes");

  ClassifyConfig classify;
  auto* cl = app.add_subcommand("classify", "evidence-based rate category from a truncation trend");
  add_common(cl, common);
  cl->add_option("--class-spec", classify.spec_files, "class-spec files in increasing truncation");
  cl->add_option("--class", classify.id, "catalog class id");
  cl->add_option("--param", classify.params, "fixed catalog parameter name=value");
  cl->add_option("--vary", classify.vary, "parameter varied along the trend");
  cl->add_option("--values", classify.values, "values of the varied parameter")->delimiter(',');
  cl->add_option("--se-blocks", classify.se_blocks, "star-eluder prefix blocks per report");

  ScheduleConfig sched;
  auto* sc = app.add_subcommand("schedule", "probability schedules for the slow-rate constructions");
  add_common(sc, common);
  sc->add_option("--rate", sched.rate, "1/n | n^-1/2 | n^-a | 1/log(n)");
  sc->add_option("--t-max", sched.t_max, "schedule length");
  sc->add_flag("--blocks", sched.blocks, "block design of the block-class example");
  sc->add_option("--n-max", sched.n_max, "largest admissible n");

  ReproduceConfig repro;
  std::int64_t trials = 0;
  auto* rp = app.add_subcommand("reproduce", "write the bundle of one example");
  add_common(rp, common);
  rp->add_option("id", repro.id, "example id (see --list)");
  rp->add_option("--trials", trials, "override the bundle's trial count");
  bool list = false;
  rp->add_flag("--list", list, "list bundle ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, log, err);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (d->parsed()) return cmd_dims(common, dims, log);
    if (cv->parsed()) return cmd_curve(common, curve, log);
    if (cl->parsed()) return cmd_classify(common, classify, log);
    if (sc->parsed()) return cmd_schedule(common, sched, log);
    if (list) {
      for (const auto& b : bundles()) log << b.id << "  " << b.title << "\n";
      return kOk;
    }
    if (trials > 0) repro.trials = trials;
    return cmd_reproduce(common, repro, log);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const io::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace ermrates::cli
