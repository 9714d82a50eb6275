#include "ermrates/io.hpp"

#include <fstream>
#include <sstream>

namespace ermrates::io {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

ConceptClass class_from_json(const json& j, const CatalogLimits& limits) {
  try {
    if (j.contains("explicit")) {
      const auto& e = j.at("explicit");
      auto ids = e.at("domain").get<std::vector<PointId>>();
      auto tables = e.at("hypotheses").get<std::vector<std::vector<int>>>();
      return explicit_class(ids, tables, j.value("name", std::string("explicit")));
    }
    Params params;
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<std::int64_t>();
    return build_catalog_class(j.at("id").get<std::string>(), params, limits);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed class spec: ") + e.what());
  }
}

json class_spec(const ConceptClass& c) {
  if (c.name() == "explicit" || c.params().empty()) {
    std::vector<PointId> ids;
    for (const auto& p : c.domain().points()) ids.push_back(p.id);
    std::vector<std::vector<int>> tables;
    for (const auto& h : c.hypotheses()) {
      std::vector<int> row;
      for (std::size_t x = 0; x < c.domain().size(); ++x) row.push_back(h.at(x));
      tables.push_back(std::move(row));
    }
    return {{"name", c.name()}, {"explicit", {{"domain", ids}, {"hypotheses", tables}}}};
  }
  return {{"id", c.name()}, {"params", c.params()}};
}

NamedCenter resolve_center(const ConceptClass& c, const std::string& spec) {
  if (spec == "all0" || spec == "all1" || spec.rfind("hyp:", 0) == 0) return parse_center(c, spec);
  const json j = read_json(spec);
  if (j.contains("hypothesis")) return parse_center(c, "hyp:" + std::to_string(j.at("hypothesis").get<std::size_t>()));
  const auto labels = j.at("labels").get<std::vector<int>>();
  if (labels.size() != c.domain().size()) throw InputError("center labels must cover the whole domain");
  Bits b(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) b.set(i, labels[i] != 0);
  return {spec, b};
}

json to_json(const Witness& w, const ConceptClass& c) {
  std::vector<PointId> ids;
  for (auto x : w.points) ids.push_back(c.domain().point(x).id);
  std::vector<std::string> rules;
  for (auto h : w.hypotheses) rules.push_back(describe(c.hypothesis(h).rule()));
  json j{{"kind", to_string(w.kind)}, {"points", ids}, {"labels", w.labels}, {"hypotheses", w.hypotheses},
         {"hypothesis_rules", rules}};
  if (!w.block_sizes.empty()) j["block_sizes"] = w.block_sizes;
  return j;
}

json to_json(const DimResult& r, const ConceptClass& c) {
  return {{"value", r.value}, {"cap_reached", r.cap_reached}, {"witness", to_json(r.witness, c)}};
}

namespace {

json evidence(const PrefixEvidence& e, const ConceptClass& c) {
  json j{{"center", e.center},
         {"variant", e.block_size ? "d=" + std::to_string(*e.block_size) : std::string("strong")},
         {"K", e.K},
         {"depth", e.depth},
         {"exhaustive", e.exhaustive},
         {"budget_exhausted", e.budget_exhausted},
         {"refuted", e.exhaustive && e.depth < e.K},
         {"witness", to_json(e.witness, c)}};
  return j;
}

}  // namespace

json to_json(const DimensionReport& r, const ConceptClass& c) {
  json star_c = json::object();
  for (const auto& [name, d] : r.star_centered) star_c[name] = to_json(d, c);
  json se = json::array(), vce = json::array();
  for (const auto& e : r.se_evidence) se.push_back(evidence(e, c));
  for (const auto& e : r.vce_evidence) vce.push_back(evidence(e, c));
  return {{"class", r.class_name},
          {"params", r.params},
          {"domain_size", r.domain_size},
          {"hypotheses", r.hypotheses},
          {"truncated_from_infinite", r.truncated_from_infinite},
          {"cap", r.cap},
          {"caps", {{"branching", r.caps.branching}, {"nodes", r.caps.nodes}}},
          {"vc", to_json(r.vc, c)},
          {"star_global", to_json(r.star_global, c)},
          {"star_centered", star_c},
          {"eluder", to_json(r.eluder, c)},
          {"littlestone", to_json(r.littlestone, c)},
          {"se_prefix", se},
          {"vce_prefix", vce},
          {"budget_exhausted", r.any_budget_exhausted()}};
}

json to_json(const RateClassification& r) { return {{"category", to_string(r.category)}, {"notes", r.notes}}; }

json to_json(const RealizableDistribution& p) {
  json support = json::array();
  for (const auto& a : p.support()) {
    json atom{{"point", a.point.id}, {"label", a.label}, {"p", a.p}};
    if (a.exact) atom["exact"] = {{"num", a.exact->num}, {"exp", a.exact->exp}};
    support.push_back(atom);
  }
  return {{"support", support},
          {"target", p.target()},
          {"construction", {{"name", p.construction()}, {"params", p.params()}}}};
}

RealizableDistribution distribution_from_json(const json& j) {
  try {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("support")) {
      Atom atom{Point{a.at("point").get<PointId>(), std::nullopt}, a.at("label").get<int>(), a.at("p").get<double>(),
                std::nullopt};
      if (a.contains("exact"))
        atom.exact = Dyadic{a.at("exact").at("num").get<std::uint64_t>(), a.at("exact").at("exp").get<int>()};
      atoms.push_back(atom);
    }
    std::string target = j.contains("target") ? (j.at("target").is_string() ? j.at("target").get<std::string>()
                                                                            : j.at("target").dump())
                                              : std::string("unspecified");
    std::string name = "file";
    std::map<std::string, double> params;
    if (j.contains("construction")) {
      const auto& c = j.at("construction");
      name = c.value("name", name);
      if (c.contains("params"))
        for (const auto& [k, v] : c.at("params").items()) params[k] = v.get<double>();
    }
    return RealizableDistribution(std::move(atoms), std::move(target), std::move(name), std::move(params));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed distribution: ") + e.what());
  }
}

json to_json(const SlowSchedule& s) {
  return {{"rate", s.rate}, {"C", s.C}, {"p", s.p}, {"k", s.k}, {"n", s.n}};
}

json to_json(const BlockDesign& d) { return {{"rate", d.rate}, {"i", d.i}, {"n", d.n}, {"p", d.p}}; }

json to_json(const ScheduleCheck& c) { return {{"ok", c.ok}, {"violations", c.violations}}; }

json to_json(const RateFit& f) {
  json models = json::array();
  for (const auto& m : f.models)
    models.push_back({{"model", m.model}, {"log_A", m.log_A}, {"c", m.c}, {"mse", m.mse}, {"points", m.points}});
  json j{{"category", to_string(f.category)}, {"models", models}, {"loglog_slope", f.loglog_slope}, {"notes", f.notes}};
  j["last_ratio"] = f.last_ratio ? json(*f.last_ratio) : json(nullptr);
  return j;
}

namespace {

std::string envelope_name(const BoundSpec& s) {
  switch (s.kind) {
    case EnvelopeKind::InverseNPlus1:
      return "A/(n+1)";
    case EnvelopeKind::ConstOverN:
      return "A/n";
    case EnvelopeKind::ExpDecay:
      return "A*exp(-c*n)";
    case EnvelopeKind::PowerLaw:
      return "A*n^-alpha";
    case EnvelopeKind::LogNOverN:
      return "A*log(n)/n";
  }
  return "?";
}

}  // namespace

json to_json(const BoundReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"n", p.n}, {"mean", p.mean}, {"envelope", p.envelope}, {"slack", p.slack}, {"pass", p.pass}});
  return {{"label", r.spec.label},
          {"envelope", envelope_name(r.spec)},
          {"direction", r.spec.direction == BoundDirection::Upper ? "upper" : "lower"},
          {"A", r.spec.A},
          {"c", r.spec.c},
          {"alpha", r.spec.alpha},
          {"slack_sigmas", r.spec.slack_sigmas},
          {"quantifier", r.spec.quantifier == Quantifier::AllN ? "all-n" : "fraction"},
          {"phi", r.spec.phi},
          {"points", pts},
          {"passed", r.passed},
          {"ok", r.ok}};
}

json curve_metadata(const LearningCurve& c) {
  json j{{"grid", c.grid},       {"trials", c.trials},
         {"seed", c.seed},       {"rule", c.rule},
         {"distribution", c.distribution}, {"distribution_params", c.distribution_params},
         {"flagged", c.flagged}};
  if (!c.compression_mean.empty()) {
    j["compression_mean"] = c.compression_mean;
    j["compression_stderr"] = c.compression_std_error;
    j["compression_max"] = c.compression_max;
    j["compression_exact"] = c.compression_exact;
  }
  return j;
}

}  // namespace ermrates::io
