#include <gtest/gtest.h>

#include <cmath>

#include "ermrates/classcat.hpp"

using namespace ermrates;

namespace {

Point pt(PointId id) { return Point{id, std::nullopt}; }

}  // namespace

TEST(Predict, RuleDefinitions) {
  EXPECT_EQ(evaluate_rule(Threshold{3}, pt(5)), 1);
  EXPECT_EQ(evaluate_rule(Threshold{3}, pt(2)), 0);
  EXPECT_EQ(evaluate_rule(Singleton{2}, pt(3)), 0);
  EXPECT_EQ(evaluate_rule(Singleton{2}, pt(2)), 1);
  EXPECT_EQ(evaluate_rule(Halfspace{0, 1, 0}, Point{0, std::array<double, 2>{1, -1}}), 0);
  EXPECT_EQ(evaluate_rule(Halfspace{0, 1, 0}, Point{0, std::array<double, 2>{1, 1}}), 1);
}

TEST(Predict, UnknownPointIsDomainError) {
  auto c = build_catalog_class("thresholds-N", {{"m", 5}});
  EXPECT_EQ(predict(c.hypothesis(2), pt(4)), 1);
  EXPECT_THROW(predict(c.hypothesis(0), pt(99)), DomainError);
}

TEST(Consistency, Examples) {
  auto dom = Domain::range(1, 6);
  auto h = Hypothesis::from_rule(dom, Threshold{3});
  EXPECT_TRUE(is_consistent(h, {example(1, 0), example(4, 1)}));
  EXPECT_FALSE(is_consistent(h, {example(3, 0)}));
  EXPECT_TRUE(is_consistent(h, {}));
}

TEST(Catalog, Singletons) {
  auto c = build_catalog_class("singletons-N", {{"m", 5}});
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(c.domain().size(), 5u);
}

TEST(Catalog, ThresholdsIncludeAllZeroAndAreDistinct) {
  auto c = build_catalog_class("thresholds-N", {{"m", 8}});
  ASSERT_EQ(c.size(), 9u);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_NE(c.hypothesis(i).table(), c.hypothesis(j).table());
  EXPECT_TRUE(c.find(all_zero(c)).has_value());
}

TEST(Catalog, EveryIdBuildsWithDefaults) {
  for (const auto& id : catalog_ids()) {
    auto c = build_catalog_class(id, {});
    EXPECT_EQ(c.name(), id);
    EXPECT_GT(c.domain().size(), 0u) << id;
  }
}

TEST(Catalog, Errors) {
  EXPECT_THROW(build_catalog_class("no-such-class", {}), InputError);
  EXPECT_THROW(build_catalog_class("thresholds-N", {{"bogus", 1}}), InputError);
  CatalogLimits tight;
  tight.max_hypotheses = 100;
  EXPECT_THROW(build_catalog_class("powerset", {{"m", 10}}, tight), ResourceError);
}

TEST(Catalog, StructuralClassRefusesEnumeration) {
  auto c = build_catalog_class("ex-B5-blocks", {{"i_max", 4}, {"materialize", 0}});
  EXPECT_FALSE(c.materialized());
  EXPECT_EQ(c.blocks().size(), 4u);
  EXPECT_THROW(c.hypotheses(), ResourceError);
}

TEST(Catalog, B5BlocksHalfConstraint) {
  auto c = build_catalog_class("ex-B5-blocks", {{"i_max", 2}});
  // Block sizes 2 and 4: subsets of size >= 1 in the first, >= 2 in the second.
  EXPECT_EQ(c.size(), 3u + 11u);
  auto capped = build_catalog_class("ex-B5-blocks", {{"i_max", 3}, {"block_cap", 4}});
  EXPECT_TRUE(capped.metadata().half_constraint_scaled);
}

TEST(Catalog, HalfspacesCircleAreArcs) {
  auto c = build_catalog_class("halfspaces-circle", {{"n", 6}});
  // Empty, full, and every proper arc of consecutive points: 2 + 6*5.
  EXPECT_EQ(c.size(), 32u);
  EXPECT_TRUE(c.domain().planar());
  for (const auto& h : c.hypotheses())
    for (std::size_t x = 0; x < c.domain().size(); ++x)
      EXPECT_EQ(evaluate_rule(h.rule(), c.domain().point(x)), h.at(x));
}

TEST(Restrictions, Examples) {
  auto p = build_catalog_class("powerset", {{"m", 3}});
  EXPECT_EQ(restrictions(p, {0, 1, 2}).size(), 8u);
  auto s = build_catalog_class("singletons-N", {{"m", 4}});
  EXPECT_EQ(restrictions(s, {0, 1, 2, 3}).size(), 4u);
  EXPECT_EQ(restrictions(s, {}).size(), 1u);
}

TEST(ExplicitClass, DeduplicatesTables) {
  auto c = explicit_class({1, 2}, {{0, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_THROW(explicit_class({1, 1}, {{0, 1}}), InputError);
}
