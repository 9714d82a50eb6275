#include "ermrates/classcat.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace ermrates {

Domain::Domain(std::vector<Point> points) : points_(std::move(points)) {
  planar_ = !points_.empty() && points_.front().coords.has_value();
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].coords.has_value() != planar_)
      throw InputError("domain mixes planar and non-planar points");
    if (!index_.emplace(points_[i].id, i).second)
      throw InputError("duplicate point id " + std::to_string(points_[i].id));
  }
}

std::shared_ptr<const Domain> Domain::range(PointId first, std::size_t count) {
  std::vector<Point> pts(count);
  for (std::size_t i = 0; i < count; ++i) pts[i].id = first + static_cast<PointId>(i);
  return std::make_shared<const Domain>(std::move(pts));
}

std::optional<std::size_t> Domain::index_of(PointId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Domain::require_index(PointId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DomainError("point id " + std::to_string(id) + " not in domain");
  return it->second;
}

std::string describe(const Rule& rule) {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ExplicitTable>) {
          os << "table";
        } else if constexpr (std::is_same_v<T, Threshold>) {
          os << "threshold(" << r.t << ")";
        } else if constexpr (std::is_same_v<T, Singleton>) {
          os << "singleton(" << r.t << ")";
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          os << "halfspace(" << r.w1 << "," << r.w2 << "," << r.b << ")";
        } else {
          os << r.family << "(";
          for (std::size_t i = 0; i < r.params.size(); ++i) os << (i ? "," : "") << r.params[i];
          os << ")";
        }
      },
      rule);
  return os.str();
}

int evaluate_rule(const Rule& rule, const Point& x) {
  if (auto* t = std::get_if<Threshold>(&rule)) return static_cast<std::int64_t>(x.id) >= t->t;
  if (auto* s = std::get_if<Singleton>(&rule)) return static_cast<std::int64_t>(x.id) == s->t;
  if (auto* h = std::get_if<Halfspace>(&rule)) {
    if (!x.coords) throw DomainError("halfspace rule needs planar points");
    const auto& c = *x.coords;
    return h->w1 * c[0] + h->w2 * c[1] + h->b >= 0.0;
  }
  throw InputError("rule " + describe(rule) + " has no closed form; use the label table");
}

Hypothesis::Hypothesis(DomainPtr domain, Rule rule, Bits table)
    : domain_(std::move(domain)), rule_(std::move(rule)), table_(std::move(table)) {
  if (table_.size() != domain_->size()) throw InputError("label table size differs from domain size");
}

Hypothesis Hypothesis::from_rule(DomainPtr domain, Rule rule) {
  Bits table(domain->size());
  for (std::size_t i = 0; i < domain->size(); ++i)
    if (evaluate_rule(rule, domain->point(i))) table.set(i);
  return Hypothesis(std::move(domain), std::move(rule), std::move(table));
}

Hypothesis Hypothesis::from_labels(DomainPtr domain, const std::vector<int>& labels) {
  if (labels.size() != domain->size()) throw InputError("label vector size differs from domain size");
  Bits table(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw InputError("labels must be 0 or 1");
    if (labels[i]) table.set(i);
  }
  return Hypothesis(std::move(domain), ExplicitTable{}, std::move(table));
}

int predict(const Hypothesis& h, const Point& x) {
  const std::size_t i = h.domain().require_index(x.id);
  switch (h.rule().index()) {
    case 1:
    case 2:
      return evaluate_rule(h.rule(), x);
    case 3:
      return evaluate_rule(h.rule(), h.domain().point(i));
    default:
      return h.at(i);
  }
}

LabeledExample example(PointId id, int label) { return LabeledExample{Point{id, std::nullopt}, label}; }

bool is_consistent(const Hypothesis& h, const Sample& s) {
  for (const auto& e : s)
    if (h.at(h.domain().require_index(e.point.id)) != e.label) return false;
  return true;
}

ConceptClass::ConceptClass(std::string name, DomainPtr domain, std::vector<Hypothesis> hypotheses,
                           Params params, ClassMetadata metadata, std::vector<Block> blocks)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      params_(std::move(params)),
      metadata_(std::move(metadata)),
      blocks_(std::move(blocks)) {
  std::unordered_set<Bits, BitsHash> seen;
  seen.reserve(hypotheses.size());
  for (auto& h : hypotheses) {
    if (h.table().size() != domain_->size()) throw InputError("hypothesis built over a different domain");
    if (!seen.insert(h.table()).second) continue;
    tables_.push_back(h.table());
    hypotheses_.push_back(std::move(h));
  }
  if (hypotheses_.empty()) throw InputError("concept class must contain at least one hypothesis");
  columns_.assign(domain_->size(), Bits(hypotheses_.size()));
  for (std::size_t i = 0; i < tables_.size(); ++i)
    tables_[i].for_each([&](std::size_t x) { columns_[x].set(i); });
}

ConceptClass ConceptClass::structural(std::string name, DomainPtr domain, Params params,
                                      ClassMetadata metadata, std::vector<Block> blocks) {
  ConceptClass c;
  c.name_ = std::move(name);
  c.domain_ = std::move(domain);
  c.params_ = std::move(params);
  c.metadata_ = std::move(metadata);
  c.blocks_ = std::move(blocks);
  c.materialized_ = false;
  return c;
}

void ConceptClass::check_materialized() const {
  if (!materialized_)
    throw ResourceError("class " + name_ + " is structure-only at this truncation; hypotheses not enumerated");
}

std::size_t ConceptClass::size() const {
  check_materialized();
  return hypotheses_.size();
}

const std::vector<Hypothesis>& ConceptClass::hypotheses() const {
  check_materialized();
  return hypotheses_;
}

const std::vector<Bits>& ConceptClass::tables() const {
  check_materialized();
  return tables_;
}

const std::vector<Bits>& ConceptClass::columns() const {
  check_materialized();
  return columns_;
}

std::optional<std::size_t> ConceptClass::find(const Bits& table) const {
  const auto& t = tables();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == table) return i;
  return std::nullopt;
}

ConceptClass explicit_class(const std::vector<PointId>& domain, const std::vector<std::vector<int>>& tables,
                            std::string name) {
  std::vector<Point> pts;
  pts.reserve(domain.size());
  for (auto id : domain) pts.push_back(Point{id, std::nullopt});
  auto dom = std::make_shared<const Domain>(std::move(pts));
  std::vector<Hypothesis> hyps;
  hyps.reserve(tables.size());
  for (const auto& t : tables) hyps.push_back(Hypothesis::from_labels(dom, t));
  return ConceptClass(std::move(name), dom, std::move(hyps));
}

std::vector<Bits> restrictions(const ConceptClass& c, const std::vector<std::size_t>& pts) {
  std::unordered_set<Bits, BitsHash> seen;
  for (const auto& t : c.tables()) {
    Bits r(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (t.test(pts[j])) r.set(j);
    seen.insert(std::move(r));
  }
  std::vector<Bits> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

Bits all_zero(const ConceptClass& c) { return Bits(c.domain().size(), false); }
Bits all_one(const ConceptClass& c) { return Bits(c.domain().size(), true); }

}  // namespace ermrates
