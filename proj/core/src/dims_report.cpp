#include <algorithm>
#include <sstream>

#include "ermrates/dims.hpp"

namespace ermrates {

namespace {

bool distinct(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

bool in_range(const ConceptClass& c, const Witness& w) {
  for (auto x : w.points)
    if (x >= c.domain().size()) return false;
  for (auto h : w.hypotheses)
    if (h >= c.size()) return false;
  return w.labels.size() == w.points.size();
}

int label(const ConceptClass& c, std::size_t h, std::size_t x) { return c.hypothesis(h).at(x); }

bool consistent_prefix(const ConceptClass& c, std::size_t h, const Witness& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (label(c, h, w.points[i]) != w.labels[i]) return false;
  return true;
}

bool realizable(const ConceptClass& c, const Witness& w) {
  for (std::size_t h = 0; h < c.size(); ++h)
    if (consistent_prefix(c, h, w, w.points.size())) return true;
  return false;
}

bool labels_match_center(const Witness& w, const std::optional<Bits>& center) {
  if (!center) return false;
  for (std::size_t i = 0; i < w.points.size(); ++i)
    if ((center->test(w.points[i]) ? 1 : 0) != w.labels[i]) return false;
  return true;
}

// h isolates position j of points[from, from+len) relative to the labels.
bool isolates(const ConceptClass& c, std::size_t h, const Witness& w, std::size_t from, std::size_t len,
              std::size_t j) {
  for (std::size_t i = from; i < from + len; ++i) {
    const bool differs = label(c, h, w.points[i]) != w.labels[i];
    if (differs != (i == j)) return false;
  }
  return true;
}

bool verify_shattered(const ConceptClass& c, const Witness& w) {
  const std::size_t d = w.points.size();
  if (d >= 63 || w.hypotheses.size() != (std::size_t{1} << d)) return false;
  for (std::size_t p = 0; p < w.hypotheses.size(); ++p)
    for (std::size_t j = 0; j < d; ++j)
      if (label(c, w.hypotheses[p], w.points[j]) != static_cast<int>(p >> j & 1)) return false;
  return true;
}

bool verify_star(const ConceptClass& c, const Witness& w, const std::optional<Bits>& center) {
  if (center && !labels_match_center(w, center)) return false;
  if (w.hypotheses.size() != w.points.size()) return false;
  for (std::size_t j = 0; j < w.points.size(); ++j)
    if (!isolates(c, w.hypotheses[j], w, 0, w.points.size(), j)) return false;
  return true;
}

bool verify_eluder(const ConceptClass& c, const Witness& w) {
  if (w.hypotheses.size() != w.points.size()) return false;
  for (std::size_t k = 0; k < w.points.size(); ++k) {
    if (!consistent_prefix(c, w.hypotheses[k], w, k)) return false;
    if (label(c, w.hypotheses[k], w.points[k]) == w.labels[k]) return false;
  }
  return realizable(c, w);
}

bool verify_prefix(const ConceptClass& c, const Witness& w, const std::optional<Bits>& center, bool shatter) {
  if (!labels_match_center(w, center)) return false;
  std::size_t total = 0;
  std::size_t need = 0;
  for (auto s : w.block_sizes) {
    if (s == 0 || s >= 63) return false;
    total += s;
    need += shatter ? (std::size_t{1} << s) : s;
  }
  if (total != w.points.size() || need != w.hypotheses.size()) return false;
  std::size_t offset = 0;
  std::size_t hyp = 0;
  for (auto s : w.block_sizes) {
    if (shatter) {
      for (std::size_t p = 0; p < (std::size_t{1} << s); ++p, ++hyp) {
        const std::size_t h = w.hypotheses[hyp];
        if (!consistent_prefix(c, h, w, offset)) return false;
        for (std::size_t j = 0; j < s; ++j)
          if (label(c, h, w.points[offset + j]) != static_cast<int>(p >> j & 1)) return false;
      }
    } else {
      for (std::size_t j = 0; j < s; ++j, ++hyp) {
        const std::size_t h = w.hypotheses[hyp];
        if (!consistent_prefix(c, h, w, offset)) return false;
        if (!isolates(c, h, w, offset, s, offset + j)) return false;
      }
    }
    offset += s;
  }
  return realizable(c, w);
}

}  // namespace

Witness vce_to_se_witness(const Witness& vce, const Bits& center) {
  Witness se;
  se.kind = WitnessKind::SePrefix;
  se.points = vce.points;
  se.labels = vce.labels;
  se.block_sizes = vce.block_sizes;
  std::size_t offset = 0;
  std::size_t hyp = 0;
  for (auto s : vce.block_sizes) {
    std::size_t pattern = 0;
    for (std::size_t j = 0; j < s; ++j)
      if (center.test(vce.points[offset + j])) pattern |= std::size_t{1} << j;
    for (std::size_t j = 0; j < s; ++j) se.hypotheses.push_back(vce.hypotheses.at(hyp + (pattern ^ (std::size_t{1} << j))));
    hyp += std::size_t{1} << s;
    offset += s;
  }
  return se;
}

bool verify_witness(const ConceptClass& c, const Witness& w, const std::optional<Bits>& center) {
  if (!in_range(c, w) || !distinct(w.points)) return false;
  switch (w.kind) {
    case WitnessKind::ShatteredSet:
      return verify_shattered(c, w);
    case WitnessKind::StarSet:
      return verify_star(c, w, center);
    case WitnessKind::EluderSequence:
      return verify_eluder(c, w);
    case WitnessKind::SePrefix:
      return verify_prefix(c, w, center, false);
    case WitnessKind::VcePrefix:
      return verify_prefix(c, w, center, true);
  }
  return false;
}

bool DimensionReport::any_budget_exhausted() const {
  for (const auto& e : se_evidence)
    if (e.budget_exhausted) return true;
  for (const auto& e : vce_evidence)
    if (e.budget_exhausted) return true;
  return false;
}

NamedCenter parse_center(const ConceptClass& c, const std::string& spec) {
  if (spec == "all0") return {spec, all_zero(c)};
  if (spec == "all1") return {spec, all_one(c)};
  if (spec.rfind("hyp:", 0) == 0) {
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(spec.substr(4), &used);
      if (used != spec.size() - 4) throw InputError("bad center");
    } catch (const std::exception&) {
      throw InputError("bad center '" + spec + "'");
    }
    if (i >= c.size()) throw InputError("center hypothesis index out of range: " + spec);
    return {spec, c.hypothesis(i).table()};
  }
  throw InputError("unknown center '" + spec + "' (expected all0, all1, hyp:i or a file)");
}

DimensionReport compute_report(const ConceptClass& c, const ReportOptions& opt) {
  DimensionReport r;
  r.class_name = c.name();
  r.params = c.params();
  r.domain_size = c.domain().size();
  r.hypotheses = c.size();
  r.truncated_from_infinite = c.metadata().truncated_from_infinite;
  r.cap = opt.cap > 0 ? opt.cap : default_cap(c);
  r.caps = opt.caps;

  r.vc = vc_dim(c, r.cap);
  r.star_global = star_max(c, std::nullopt, r.cap);
  r.eluder = eluder_dim(c, r.cap);
  r.littlestone = littlestone_dim(c, r.cap);

  std::vector<NamedCenter> centers = opt.centers;
  if (centers.empty()) centers.push_back(parse_center(c, "all0"));
  std::vector<std::optional<int>> variants{std::nullopt};
  for (int d : opt.block_sizes) variants.emplace_back(d);

  for (const auto& ctr : centers) {
    r.star_centered[ctr.name] = star_max(c, ctr.labels, r.cap);
    for (const auto& d : variants) {
      if (opt.se_blocks > 0) {
        auto p = se_prefix(c, ctr.labels, d, opt.se_blocks, opt.caps);
        r.se_evidence.push_back({ctr.name, d, p.K, p.depth, p.exhaustive, p.budget_exhausted, p.witness});
      }
      if (opt.vce_blocks > 0) {
        auto p = vce_prefix(c, ctr.labels, d, opt.vce_blocks, opt.caps);
        r.vce_evidence.push_back({ctr.name, d, p.K, p.depth, p.exhaustive, p.budget_exhausted, p.witness});
      }
    }
  }
  return r;
}

std::string to_string(RateCategory c) {
  switch (c) {
    case RateCategory::Exponential:
      return "Exponential";
    case RateCategory::Linear:
      return "Linear";
    case RateCategory::LogLinear:
      return "LogLinear";
    case RateCategory::ArbitrarilySlow:
      return "ArbitrarilySlow";
  }
  return "?";
}

namespace {

// Strong-variant star-eluder prefix that filled every requested block (K >= 2) for some center.
const PrefixEvidence* full_strong_se(const DimensionReport& r) {
  for (const auto& e : r.se_evidence)
    if (!e.block_size && e.K >= 2 && e.depth == e.K) return &e;
  return nullptr;
}

std::string horizon(const DimensionReport& r) {
  std::ostringstream os;
  os << r.class_name << "(";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    os << (first ? "" : ",") << k << "=" << v;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

RateClassification classify_rate(const std::vector<DimensionReport>& trend) {
  RateClassification out;
  if (trend.empty()) {
    out.notes.push_back("no reports supplied");
    return out;
  }
  const auto& last = trend.back();
  out.notes.push_back("evidence at horizon " + horizon(last) + "; not a proof about the untruncated class");

  if (trend.size() == 1) {
    if (!last.truncated_from_infinite) {
      out.category = RateCategory::Exponential;
      out.notes.push_back("class is finite as given (" + std::to_string(last.hypotheses) + " hypotheses)");
    } else if (full_strong_se(last)) {
      out.category = RateCategory::LogLinear;
      out.notes.push_back("strong star-eluder prefix filled all " + std::to_string(full_strong_se(last)->K) +
                          " blocks");
    } else if (last.vc.cap_reached) {
      out.category = RateCategory::ArbitrarilySlow;
      out.notes.push_back("VC dimension reached the search cap");
    } else {
      out.category = RateCategory::Linear;
      out.notes.push_back("no full strong star-eluder prefix; VC = " + std::to_string(last.vc.value));
    }
    return out;
  }

  const auto& prev = trend[trend.size() - 2];
  if (last.hypotheses == prev.hypotheses) {
    out.category = RateCategory::Exponential;
    out.notes.push_back("hypothesis count saturates at " + std::to_string(last.hypotheses) + " under growing truncation");
    return out;
  }
  if (last.vc.value > trend.front().vc.value || last.vc.cap_reached) {
    out.category = RateCategory::ArbitrarilySlow;
    out.notes.push_back("VC dimension grows with truncation: " + std::to_string(trend.front().vc.value) + " -> " +
                        std::to_string(last.vc.value));
    return out;
  }
  const bool all_full = std::all_of(trend.begin(), trend.end(), [](const auto& r) { return full_strong_se(r) != nullptr; });
  if (all_full) {
    out.category = RateCategory::LogLinear;
    out.notes.push_back("strong star-eluder prefix fills every requested block at each truncation; VC stays " +
                        std::to_string(last.vc.value));
    return out;
  }
  out.category = RateCategory::Linear;
  std::ostringstream os;
  os << "VC stays " << last.vc.value << ", strong star-eluder prefix stalls; eluder dimension "
     << trend.front().eluder.value << " -> " << last.eluder.value;
  out.notes.push_back(os.str());
  return out;
}

RateClassification classify_rate(const DimensionReport& report) {
  return classify_rate(std::vector<DimensionReport>{report});
}

}  // namespace ermrates
