#include <cmath>
#include <functional>
#include <numbers>

#include "ermrates/classcat.hpp"

namespace ermrates {
namespace {

std::int64_t param(const Params& p, const std::string& key, std::int64_t fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::int64_t param_in(const Params& p, const std::string& key, std::int64_t fallback, std::int64_t lo,
                      std::int64_t hi) {
  const std::int64_t v = param(p, key, fallback);
  if (v < lo || v > hi)
    throw InputError("parameter " + key + "=" + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  return v;
}

void check_known(const Params& p, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw InputError("unknown parameter '" + k + "'");
  }
}

void check_domain(std::size_t n, const CatalogLimits& lim) {
  if (n > lim.max_domain)
    throw ResourceError("domain of " + std::to_string(n) + " points exceeds cap " + std::to_string(lim.max_domain));
}

void check_count(double n, const CatalogLimits& lim) {
  if (n > static_cast<double>(lim.max_hypotheses))
    throw ResourceError("truncation would enumerate " + std::to_string(n) + " hypotheses, cap is " +
                        std::to_string(lim.max_hypotheses));
}

double binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Consecutive blocks of ids starting at `first`; returns domain indices per block.
std::vector<std::vector<std::size_t>> lay_blocks(const std::vector<std::size_t>& sizes, std::size_t offset) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t next = offset;
  for (auto s : sizes) {
    out.emplace_back();
    for (std::size_t j = 0; j < s; ++j) out.back().push_back(next++);
  }
  return out;
}

struct Builder {
  DomainPtr dom;
  std::vector<Hypothesis> hyps;

  void add(std::string family, std::vector<std::int64_t> ps, const std::vector<std::size_t>& ones) {
    Bits t(dom->size());
    for (auto x : ones) t.set(x);
    hyps.emplace_back(dom, BlockIndicator{std::move(family), std::move(ps)}, std::move(t));
  }
};

ConceptClass thresholds(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"m"});
  const auto m = param_in(p, "m", 8, 1, 1 << 16);
  check_domain(m, lim);
  check_count(m + 1.0, lim);
  auto dom = Domain::range(1, m);
  std::vector<Hypothesis> hyps;
  for (std::int64_t t = 1; t <= m + 1; ++t) hyps.push_back(Hypothesis::from_rule(dom, Threshold{t}));
  ClassMetadata meta{"thresholds h_t(x) = 1(x >= t) on {1..m}, t = 1..m+1 (t = m+1 is all-0)", true};
  return ConceptClass("thresholds-N", dom, std::move(hyps), {{"m", m}}, std::move(meta));
}

ConceptClass singletons(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"m"});
  const auto m = param_in(p, "m", 8, 1, 1 << 16);
  check_domain(m, lim);
  check_count(m, lim);
  auto dom = Domain::range(1, m);
  std::vector<Hypothesis> hyps;
  for (std::int64_t t = 1; t <= m; ++t) hyps.push_back(Hypothesis::from_rule(dom, Singleton{t}));
  ClassMetadata meta{"singletons h_t(x) = 1(x = t) on {1..m}", true};
  return ConceptClass("singletons-N", dom, std::move(hyps), {{"m", m}}, std::move(meta));
}

ConceptClass halfspaces_circle(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"n"});
  const auto n = param_in(p, "n", 8, 3, 4096);
  check_domain(n, lim);
  check_count(static_cast<double>(n) * n, lim);
  const double pi = std::numbers::pi;
  std::vector<Point> pts;
  std::vector<double> theta;
  for (std::int64_t i = 0; i < n; ++i) {
    theta.push_back(2 * pi * static_cast<double>(i) / static_cast<double>(n));
    pts.push_back(Point{static_cast<PointId>(i), std::array<double, 2>{std::cos(theta[i]), std::sin(theta[i])}});
  }
  auto dom = std::make_shared<const Domain>(std::move(pts));
  std::vector<Hypothesis> hyps;
  hyps.push_back(Hypothesis::from_rule(dom, Halfspace{0, 0, -1}));
  // Arc of `len` consecutive points starting at `start`, cut by the chord through the two gaps.
  for (std::int64_t len = 1; len < n; ++len) {
    for (std::int64_t start = 0; start < n; ++start) {
      const double alpha = theta[start] - pi / static_cast<double>(n);
      const double beta = alpha + 2 * pi * static_cast<double>(len) / static_cast<double>(n);
      const double mid = (alpha + beta) / 2;
      const double half = (beta - alpha) / 2;
      hyps.push_back(Hypothesis::from_rule(dom, Halfspace{std::cos(mid), std::sin(mid), -std::cos(half)}));
    }
  }
  hyps.push_back(Hypothesis::from_rule(dom, Halfspace{0, 0, 0}));
  ClassMetadata meta{"halfspaces 1(w.x + b >= 0) restricted to n evenly spaced unit-circle points", true};
  return ConceptClass("halfspaces-circle", dom, std::move(hyps), {{"n", n}}, std::move(meta));
}

ConceptClass powerset(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"m"});
  const auto m = param_in(p, "m", 3, 0, 20);
  check_count(std::ldexp(1.0, static_cast<int>(m)), lim);
  auto dom = Domain::range(1, m);
  Builder b{dom, {}};
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << m); ++mask) {
    std::vector<std::size_t> ones;
    for (std::int64_t j = 0; j < m; ++j)
      if (mask >> j & 1) ones.push_back(j);
    b.add("powerset", {mask}, ones);
  }
  return ConceptClass("powerset", dom, std::move(b.hyps), {{"m", m}}, ClassMetadata{"all labelings of m points"});
}

// Enumerates subsets of `pts` (as index lists) in mask order with size >= min_size.
void for_each_subset(const std::vector<std::size_t>& pts, std::size_t min_size,
                     const std::function<void(std::uint64_t, const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> ones;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pts.size()); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
    ones.clear();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (mask >> j & 1) ones.push_back(pts[j]);
    f(mask, ones);
  }
}

ConceptClass b5_blocks(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"i_max", "i_min", "block_cap", "materialize"});
  const auto i_max = param_in(p, "i_max", 3, 1, 24);
  const auto i_min = param_in(p, "i_min", 1, 1, i_max);
  const auto cap = param_in(p, "block_cap", 0, 0, 1 << 24);
  const bool materialize = param_in(p, "materialize", 1, 0, 1) == 1;

  std::vector<std::size_t> sizes;
  bool scaled = false;
  for (auto i = i_min; i <= i_max; ++i) {
    std::size_t s = std::size_t{1} << i;
    if (cap > 0 && s > static_cast<std::size_t>(cap)) {
      s = static_cast<std::size_t>(cap);
      scaled = true;
    }
    sizes.push_back(s);
  }
  std::size_t total = 1;
  for (auto s : sizes) total += s;
  check_domain(total, lim);
  auto dom = Domain::range(0, total);  // id 0 is the sink point outside every block
  auto laid = lay_blocks(sizes, 1);
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < laid.size(); ++b)
    blocks.push_back(Block{i_min + static_cast<std::int64_t>(b), laid[b], (sizes[b] + 1) / 2});

  ClassMetadata meta{"union over i of {1_S : S in X_i, |S| >= |X_i|/2}, |X_i| = 2^i", true, scaled};
  if (scaled) meta.notes.push_back("block sizes capped at block_cap; half-size constraint scaled to ceil(|X_i|/2)");
  meta.notes.push_back("point id 0 is the sink point x' outside every block");
  Params kept{{"i_max", i_max}, {"i_min", i_min}, {"block_cap", cap}, {"materialize", materialize ? 1 : 0}};

  if (!materialize) return ConceptClass::structural("ex-B5-blocks", dom, kept, std::move(meta), std::move(blocks));

  double count = 0;
  for (const auto& b : blocks)
    for (std::size_t s = b.min_positive; s <= b.points.size(); ++s) count += binom(b.points.size(), s);
  check_count(count, lim);
  Builder bld{dom, {}};
  for (const auto& b : blocks)
    for_each_subset(b.points, b.min_positive, [&](std::uint64_t mask, const std::vector<std::size_t>& ones) {
      bld.add("ex-B5-blocks", {b.index, static_cast<std::int64_t>(mask)}, ones);
    });
  return ConceptClass("ex-B5-blocks", dom, std::move(bld.hyps), kept, std::move(meta), std::move(blocks));
}

std::vector<std::size_t> triangular_sizes(std::int64_t k_max) {
  std::vector<std::size_t> s;
  for (std::int64_t k = 1; k <= k_max; ++k) s.push_back(k);
  return s;
}

std::vector<Block> as_blocks(const std::vector<std::vector<std::size_t>>& laid, std::int64_t first_index = 1) {
  std::vector<Block> out;
  for (std::size_t b = 0; b < laid.size(); ++b) out.push_back(Block{first_index + static_cast<std::int64_t>(b), laid[b], 0});
  return out;
}

std::vector<std::size_t> union_of(const std::vector<std::vector<std::size_t>>& laid, std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t b = from; b < to && b < laid.size(); ++b) out.insert(out.end(), laid[b].begin(), laid[b].end());
  return out;
}

ConceptClass ex_b7(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"k_max"});
  const auto k_max = param_in(p, "k_max", 4, 1, 360);
  auto laid = lay_blocks(triangular_sizes(k_max), 0);
  const std::size_t n = k_max * (k_max + 1) / 2;
  check_domain(n, lim);
  check_count(n, lim);
  auto dom = Domain::range(1, n);
  Builder b{dom, {}};
  for (std::size_t k = 0; k < laid.size(); ++k)
    for (std::size_t i = 0; i < laid[k].size(); ++i)
      b.add("ex-B7", {static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(i + 1)}, {laid[k][i]});
  ClassMetadata meta{"singletons over blocks X_k of size k", true};
  return ConceptClass("ex-B7", dom, std::move(b.hyps), {{"k_max", k_max}}, std::move(meta), as_blocks(laid));
}

ConceptClass ex_b8(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"k_max"});
  const auto k_max = param_in(p, "k_max", 4, 1, 20);
  auto laid = lay_blocks(triangular_sizes(k_max), 0);
  const std::size_t n = k_max * (k_max + 1) / 2;
  check_domain(n, lim);
  double count = 0;
  for (std::int64_t k = 1; k <= k_max; ++k) count += std::ldexp(1.0, static_cast<int>(k));
  check_count(count, lim);
  auto dom = Domain::range(1, n);
  Builder b{dom, {}};
  for (std::size_t k = 0; k < laid.size(); ++k)
    for_each_subset(laid[k], 0, [&](std::uint64_t mask, const std::vector<std::size_t>& ones) {
      b.add("ex-B8", {static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(mask)}, ones);
    });
  ClassMetadata meta{"all indicators 1_S with S inside one block X_k of size k", true};
  return ConceptClass("ex-B8", dom, std::move(b.hyps), {{"k_max", k_max}}, std::move(meta), as_blocks(laid));
}

ConceptClass ex_b9(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"k_max"});
  const auto k_max = param_in(p, "k_max", 4, 1, 360);
  auto laid = lay_blocks(triangular_sizes(k_max), 0);
  const std::size_t n = k_max * (k_max + 1) / 2;
  check_domain(n, lim);
  check_count(n, lim);
  auto dom = Domain::range(1, n);
  Builder b{dom, {}};
  for (std::size_t k = 0; k < laid.size(); ++k) {
    const auto below = union_of(laid, 0, k);
    for (std::size_t i = 0; i < laid[k].size(); ++i) {
      auto ones = below;
      ones.push_back(laid[k][i]);
      b.add("ex-B9", {static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(i + 1)}, ones);
    }
  }
  ClassMetadata meta{"h_{k,i}(x) = 1{x = x_{k,i} or x in X_{<k}}, |X_k| = k", true};
  return ConceptClass("ex-B9", dom, std::move(b.hyps), {{"k_max", k_max}}, std::move(meta), as_blocks(laid));
}

ConceptClass ex_b10(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"k_max", "t_max"});
  const auto k_max = param_in(p, "k_max", 3, 1, 64);
  const auto t_max = param_in(p, "t_max", 3, 1, 64);
  std::vector<std::size_t> sizes;
  for (std::int64_t k = 1; k <= k_max; ++k)
    for (std::int64_t t = 1; t <= t_max; ++t) sizes.push_back(k);
  auto laid = lay_blocks(sizes, 0);
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  check_domain(n, lim);
  check_count(static_cast<double>(n), lim);
  auto dom = Domain::range(1, n);
  auto cell = [&](std::int64_t k, std::int64_t t) { return static_cast<std::size_t>((k - 1) * t_max + (t - 1)); };
  Builder b{dom, {}};
  std::vector<Block> blocks;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const auto below = union_of(laid, 0, cell(k, 1));
    for (std::int64_t t = 1; t <= t_max; ++t) {
      blocks.push_back(Block{k * 1000 + t, laid[cell(k, t)], 0});
      auto base = below;
      const auto later = union_of(laid, cell(k, t) + 1, cell(k, t_max) + 1);
      base.insert(base.end(), later.begin(), later.end());
      for (std::int64_t j = 1; j <= k; ++j) {
        auto ones = base;
        ones.push_back(laid[cell(k, t)][j - 1]);
        b.add("ex-B10", {k, t, j}, ones);
      }
    }
  }
  ClassMetadata meta{"h_{k,t,j}(x) = 1{x = x_{k,t,j} or x in X_{k,>t} or x in X_{<k}}, |X_{k,t}| = k", true};
  meta.notes.push_back("block index encodes k*1000 + t");
  return ConceptClass("ex-B10", dom, std::move(b.hyps), {{"k_max", k_max}, {"t_max", t_max}}, std::move(meta),
                      std::move(blocks));
}

ConceptClass ex_c2(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"d", "k_max"});
  const auto d = param_in(p, "d", 3, 0, 20);
  const auto k_max = param_in(p, "k_max", 4, 1, 1 << 16);
  check_domain(d + k_max, lim);
  check_count(std::ldexp(1.0, static_cast<int>(d)) * static_cast<double>(k_max), lim);
  auto dom = Domain::range(1, d + k_max);  // ids 1..d form X1, d+1..d+k_max form X2
  std::vector<std::size_t> x1;
  for (std::int64_t j = 0; j < d; ++j) x1.push_back(j);
  Builder b{dom, {}};
  for (std::int64_t k = 0; k < k_max; ++k)
    for_each_subset(x1, 0, [&](std::uint64_t mask, const std::vector<std::size_t>& ones) {
      auto o = ones;
      o.push_back(static_cast<std::size_t>(d + k));
      b.add("ex-C2", {static_cast<std::int64_t>(mask), d + k + 1}, o);
    });
  std::vector<std::size_t> x2;
  for (std::int64_t k = 0; k < k_max; ++k) x2.push_back(d + k);
  ClassMetadata meta{"h_{S,k} = 1_{S u {k}} for S in X1 (|X1| = d), k in X2", true};
  return ConceptClass("ex-C2", dom, std::move(b.hyps), {{"d", d}, {"k_max", k_max}}, std::move(meta),
                      {Block{1, x1, 0}, Block{2, x2, 0}});
}

ConceptClass ex_c5(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"d", "k_max"});
  const auto d = param_in(p, "d", 3, 1, 4096);
  const auto k_max = param_in(p, "k_max", 4, 1, 4096);
  check_domain(d * k_max, lim);
  check_count(static_cast<double>(d * k_max), lim);
  auto laid = lay_blocks(std::vector<std::size_t>(k_max, d), 0);
  auto dom = Domain::range(1, d * k_max);
  Builder b{dom, {}};
  for (std::size_t k = 0; k < laid.size(); ++k) {
    const auto above = union_of(laid, k + 1, laid.size());
    for (std::size_t j = 0; j < laid[k].size(); ++j) {
      auto ones = above;
      ones.push_back(laid[k][j]);
      b.add("ex-C5", {static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(j + 1)}, ones);
    }
  }
  ClassMetadata meta{"h_{k,j}(x) = 1{x = x_{k,j} or x in X_{>k}}, |X_k| = d", true};
  return ConceptClass("ex-C5", dom, std::move(b.hyps), {{"d", d}, {"k_max", k_max}}, std::move(meta), as_blocks(laid));
}

ConceptClass ex_c6(const Params& p, const CatalogLimits& lim) {
  check_known(p, {"d", "k_max"});
  const auto d = param_in(p, "d", 3, 1, 20);
  const auto k_max = param_in(p, "k_max", 4, 1, 4096);
  check_domain(d * k_max, lim);
  check_count(std::ldexp(1.0, static_cast<int>(d)) * static_cast<double>(k_max), lim);
  auto laid = lay_blocks(std::vector<std::size_t>(k_max, d), 0);
  auto dom = Domain::range(1, d * k_max);
  Builder b{dom, {}};
  for (std::size_t k = 0; k < laid.size(); ++k) {
    const auto above = union_of(laid, k + 1, laid.size());
    for_each_subset(laid[k], 0, [&](std::uint64_t mask, const std::vector<std::size_t>& ones) {
      auto o = above;
      o.insert(o.end(), ones.begin(), ones.end());
      b.add("ex-C6", {static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(mask)}, o);
    });
  }
  ClassMetadata meta{"h_{k,S}(x) = 1{x in S or x in X_{>k}}, S in X_k, |X_k| = d", true};
  return ConceptClass("ex-C6", dom, std::move(b.hyps), {{"d", d}, {"k_max", k_max}}, std::move(meta), as_blocks(laid));
}

using Factory = ConceptClass (*)(const Params&, const CatalogLimits&);

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> r = {
      {"thresholds-N", thresholds}, {"singletons-N", singletons}, {"halfspaces-circle", halfspaces_circle},
      {"powerset", powerset},       {"ex-B5-blocks", b5_blocks},  {"ex-B7", ex_b7},
      {"ex-B8", ex_b8},             {"ex-B9", ex_b9},             {"ex-B10", ex_b10},
      {"ex-C2", ex_c2},             {"ex-C5", ex_c5},             {"ex-C6", ex_c6},
  };
  return r;
}

}  // namespace

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : registry()) ids.push_back(id);
  return ids;
}

ConceptClass build_catalog_class(std::string_view id, const Params& params, const CatalogLimits& limits) {
  for (const auto& [name, factory] : registry())
    if (name == id) return factory(params, limits);
  throw InputError("unknown catalog class '" + std::string(id) + "'");
}

}  // namespace ermrates
