#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ermrates/bits.hpp"
#include "ermrates/errors.hpp"

namespace ermrates {

using PointId = std::uint32_t;

struct Point {
  PointId id = 0;
  std::optional<std::array<double, 2>> coords;

  friend bool operator==(const Point&, const Point&) = default;
};

class Domain {
 public:
  // Throws InputError on duplicate ids or mixed planar/non-planar points.
  explicit Domain(std::vector<Point> points);

  static std::shared_ptr<const Domain> range(PointId first, std::size_t count);

  std::size_t size() const { return points_.size(); }
  const Point& point(std::size_t index) const { return points_[index]; }
  const std::vector<Point>& points() const { return points_; }
  bool planar() const { return planar_; }

  std::optional<std::size_t> index_of(PointId id) const;
  // Throws DomainError for unknown ids.
  std::size_t require_index(PointId id) const;

 private:
  std::vector<Point> points_;
  std::unordered_map<PointId, std::size_t> index_;
  bool planar_ = false;
};

using DomainPtr = std::shared_ptr<const Domain>;

struct ExplicitTable {};
struct Threshold {
  std::int64_t t = 0;
};
struct Singleton {
  std::int64_t t = 0;
};
struct Halfspace {
  double w1 = 0, w2 = 0, b = 0;
};
// Catalog-specific structured rule; `family` names the catalog id and
// `params` its indices (block, position, ...). Labels live in the table.
struct BlockIndicator {
  std::string family;
  std::vector<std::int64_t> params;
};

using Rule = std::variant<ExplicitTable, Threshold, Singleton, Halfspace, BlockIndicator>;

std::string describe(const Rule& rule);

class Hypothesis {
 public:
  // Table must have one bit per domain point.
  Hypothesis(DomainPtr domain, Rule rule, Bits table);
  // Evaluates a Threshold, Singleton or Halfspace rule on every domain point.
  static Hypothesis from_rule(DomainPtr domain, Rule rule);
  static Hypothesis from_labels(DomainPtr domain, const std::vector<int>& labels);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const Rule& rule() const { return rule_; }
  const Bits& table() const { return table_; }
  int at(std::size_t index) const { return table_.test(index) ? 1 : 0; }

  // Extensional equality: same domain contents and same labels.
  friend bool operator==(const Hypothesis& a, const Hypothesis& b) { return a.table_ == b.table_; }

 private:
  DomainPtr domain_;
  Rule rule_;
  Bits table_;
};

int evaluate_rule(const Rule& rule, const Point& x);
// Throws DomainError if x is not in h's domain.
int predict(const Hypothesis& h, const Point& x);

struct LabeledExample {
  Point point;
  int label = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};
using Sample = std::vector<LabeledExample>;

LabeledExample example(PointId id, int label);

bool is_consistent(const Hypothesis& h, const Sample& s);

using Params = std::map<std::string, std::int64_t>;

struct ClassMetadata {
  std::string description;
  bool truncated_from_infinite = false;
  bool half_constraint_scaled = false;
  std::vector<std::string> notes;
};

// Disjoint point groups of block-structured catalog classes, in domain-index terms.
struct Block {
  std::int64_t index = 0;
  std::vector<std::size_t> points;
  // Smallest admissible positive set inside the block (ex-B5-blocks); 0 otherwise.
  std::size_t min_positive = 0;
};

class ConceptClass {
 public:
  // Drops later hypotheses whose tables repeat an earlier one.
  ConceptClass(std::string name, DomainPtr domain, std::vector<Hypothesis> hypotheses,
               Params params = {}, ClassMetadata metadata = {}, std::vector<Block> blocks = {});

  // Block structure only; hypothesis enumeration throws ResourceError.
  static ConceptClass structural(std::string name, DomainPtr domain, Params params,
                                 ClassMetadata metadata, std::vector<Block> blocks);

  const std::string& name() const { return name_; }
  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const Params& params() const { return params_; }
  const ClassMetadata& metadata() const { return metadata_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  bool materialized() const { return materialized_; }
  std::size_t size() const;
  const std::vector<Hypothesis>& hypotheses() const;
  const Hypothesis& hypothesis(std::size_t i) const { return hypotheses().at(i); }

  // tables()[i] == hypothesis(i).table()
  const std::vector<Bits>& tables() const;
  // columns()[x] has bit i set iff hypothesis i labels domain point x with 1.
  const std::vector<Bits>& columns() const;

  std::optional<std::size_t> find(const Bits& table) const;

 private:
  ConceptClass() = default;
  void check_materialized() const;

  std::string name_;
  DomainPtr domain_;
  std::vector<Hypothesis> hypotheses_;
  std::vector<Bits> tables_;
  std::vector<Bits> columns_;
  Params params_;
  ClassMetadata metadata_;
  std::vector<Block> blocks_;
  bool materialized_ = true;
};

struct CatalogLimits {
  std::size_t max_hypotheses = std::size_t{1} << 20;
  std::size_t max_domain = std::size_t{1} << 16;
};

std::vector<std::string> catalog_ids();
ConceptClass build_catalog_class(std::string_view id, const Params& params,
                                 const CatalogLimits& limits = {});
ConceptClass explicit_class(const std::vector<PointId>& domain,
                            const std::vector<std::vector<int>>& tables,
                            std::string name = "explicit");

// Distinct restriction vectors of C to the given domain indices, sorted.
std::vector<Bits> restrictions(const ConceptClass& c, const std::vector<std::size_t>& pts);

// Labeling of the whole domain, e.g. a center for star / eluder searches.
Bits all_zero(const ConceptClass& c);
Bits all_one(const ConceptClass& c);

}  // namespace ermrates
