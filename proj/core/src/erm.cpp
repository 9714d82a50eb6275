#include "ermrates/erm.hpp"

#include <algorithm>
#include <functional>

namespace ermrates {

Bits eliminated_by(const ConceptClass& c, std::size_t x, int label) {
  const Bits& ones = c.columns().at(x);
  return label ? ~ones : ones;
}

VersionSpace::VersionSpace(const ConceptClass& base, Sample constraints)
    : base_(&base), constraints_(std::move(constraints)), mask_(base.size(), true) {
  for (const auto& ex : constraints_) {
    const std::size_t x = base.domain().require_index(ex.point.id);
    mask_.and_not(eliminated_by(base, x, ex.label));
  }
}

VersionSpace version_space(const ConceptClass& c, const Sample& s) { return VersionSpace(c, s); }

double true_error(const Hypothesis& h, const RealizableDistribution& p) {
  double err = 0;
  for (const auto& a : p.support()) {
    const std::size_t x = h.domain().require_index(a.point.id);
    if (h.at(x) != a.label) err += a.p;
  }
  return err;
}

std::vector<double> member_errors(const ConceptClass& c, const RealizableDistribution& p) {
  std::vector<double> out(c.size(), 0.0);
  for (const auto& a : p.support()) {
    const std::size_t x = c.domain().require_index(a.point.id);
    eliminated_by(c, x, a.label).for_each([&](std::size_t h) { out[h] += a.p; });
  }
  return out;
}

double min_positive_error(const ConceptClass& c, const RealizableDistribution& p) {
  double best = 0;
  for (double e : member_errors(c, p))
    if (e > 0 && (best == 0 || e < best)) best = e;
  return best;
}

namespace {

template <class Better>
std::size_t select(const VersionSpace& v, const std::vector<double>& errors, Better better) {
  if (v.empty()) throw InputError("ERM on an empty version space");
  std::size_t best = Bits::npos;
  v.mask().for_each([&](std::size_t h) {
    if (best == Bits::npos || better(errors.at(h), errors[best])) best = h;
  });
  return best;
}

}  // namespace

std::size_t worst_case_index(const VersionSpace& v, const std::vector<double>& errors) {
  return select(v, errors, std::greater<double>());
}

std::size_t best_case_index(const VersionSpace& v, const std::vector<double>& errors) {
  return select(v, errors, std::less<double>());
}

const Hypothesis& worst_case_erm(const VersionSpace& v, const RealizableDistribution& p) {
  return v.base().hypothesis(worst_case_index(v, member_errors(v.base(), p)));
}

const Hypothesis& best_case_erm(const VersionSpace& v, const RealizableDistribution& p) {
  return v.base().hypothesis(best_case_index(v, member_errors(v.base(), p)));
}

std::string to_string(ScriptedRule r) {
  return r == ScriptedRule::ThresholdMaxPlus1 ? "threshold-maxplus1" : "b5-min-consistent-block";
}

ScriptedRule parse_scripted_rule(const std::string& name) {
  if (name == "threshold-maxplus1") return ScriptedRule::ThresholdMaxPlus1;
  if (name == "b5-min-consistent-block") return ScriptedRule::B5MinConsistentBlock;
  throw InputError("unknown scripted rule '" + name + "'");
}

namespace {

void require_all_zero(const Sample& s, ScriptedRule r) {
  for (const auto& ex : s)
    if (ex.label != 0) throw InputError(to_string(r) + " expects an all-0 labeled sample");
}

Hypothesis threshold_rule(const ConceptClass& c, const Sample& s) {
  std::int64_t mx = 0;
  for (const auto& ex : s) {
    c.domain().require_index(ex.point.id);
    mx = std::max<std::int64_t>(mx, ex.point.id);
  }
  for (const auto& h : c.hypotheses()) {
    const auto* t = std::get_if<Threshold>(&h.rule());
    if (t && t->t == mx + 1) return h;
  }
  throw InputError("threshold-maxplus1: class has no Threshold(" + std::to_string(mx + 1) + ")");
}

Hypothesis b5_rule(const ConceptClass& c, const Sample& s) {
  Bits seen(c.domain().size());
  for (const auto& ex : s) seen.set(c.domain().require_index(ex.point.id));
  for (const auto& b : c.blocks()) {
    if (b.min_positive == 0) throw InputError("b5-min-consistent-block needs an ex-B5-blocks class");
    Bits table(c.domain().size());
    std::size_t unseen = 0;
    for (auto x : b.points)
      if (!seen.test(x)) {
        table.set(x);
        ++unseen;
      }
    if (unseen >= b.min_positive)
      return Hypothesis(c.domain_ptr(), BlockIndicator{c.name(), {b.index}}, std::move(table));
  }
  throw InputError("b5-min-consistent-block: no block has enough unseen points");
}

}  // namespace

Hypothesis scripted_erm(ScriptedRule rule, const ConceptClass& c, const Sample& s) {
  require_all_zero(s, rule);
  if (rule == ScriptedRule::ThresholdMaxPlus1) return threshold_rule(c, s);
  if (c.blocks().empty()) throw InputError("b5-min-consistent-block needs an ex-B5-blocks class");
  return b5_rule(c, s);
}

namespace {

struct CoverSearch {
  std::vector<Bits> sets;  // per distinct example: hypotheses it eliminates
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> chosen;

  bool covers(const Bits& target, const std::vector<std::size_t>& pick) const {
    Bits acc(target.size());
    for (auto i : pick) acc |= sets[i];
    return target.is_subset_of(acc);
  }

  // true on success; throws nothing, sets `out_of_budget` when cut.
  bool dfs(const Bits& uncovered, std::size_t left, bool& out_of_budget) {
    if (uncovered.none()) return true;
    if (left == 0) return false;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    const std::size_t h = uncovered.find_first();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!sets[i].test(h)) continue;
      chosen.push_back(i);
      Bits rest = uncovered;
      rest.and_not(sets[i]);
      if (dfs(rest, left - 1, out_of_budget)) return true;
      chosen.pop_back();
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

CompressionSet compression_set(const ConceptClass& c, const Sample& s, std::uint64_t budget) {
  CoverSearch cs{{}, budget};
  std::vector<std::size_t> first_index;  // distinct example -> first position in s
  std::vector<std::pair<std::size_t, int>> keys;
  Bits target(c.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t x = c.domain().require_index(s[i].point.id);
    const std::pair<std::size_t, int> key{x, s[i].label};
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    keys.push_back(key);
    first_index.push_back(i);
    cs.sets.push_back(eliminated_by(c, x, s[i].label));
    target |= cs.sets.back();
  }

  std::vector<std::size_t> greedy(cs.sets.size());
  for (std::size_t i = 0; i < greedy.size(); ++i) greedy[i] = i;
  for (std::size_t i = greedy.size(); i-- > 0;) {
    std::vector<std::size_t> trial;
    for (auto j : greedy)
      if (j != i) trial.push_back(j);
    if (cs.covers(target, trial)) greedy = std::move(trial);
  }

  CompressionSet out;
  std::vector<std::size_t> best = greedy;
  out.exact = true;
  for (std::size_t size = 0; size < greedy.size(); ++size) {
    bool cut = false;
    cs.chosen.clear();
    if (cs.dfs(target, size, cut)) {
      best = cs.chosen;
      break;
    }
    if (cut) {
      out.exact = false;
      break;
    }
  }
  for (auto i : best) out.subset.push_back(first_index[i]);
  std::sort(out.subset.begin(), out.subset.end());
  return out;
}

std::vector<std::size_t> disagreement_region(const VersionSpace& v) {
  std::vector<std::size_t> out;
  const std::size_t members = v.size();
  const auto& cols = v.base().columns();
  for (std::size_t x = 0; x < cols.size(); ++x) {
    const std::size_t ones = cols[x].and_count(v.mask());
    if (ones > 0 && ones < members) out.push_back(x);
  }
  return out;
}

}  // namespace ermrates
