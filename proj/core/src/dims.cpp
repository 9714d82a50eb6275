#include "ermrates/dims.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace ermrates {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::ShatteredSet:
      return "shattered-set";
    case WitnessKind::StarSet:
      return "star-set";
    case WitnessKind::EluderSequence:
      return "eluder-seq";
    case WitnessKind::SePrefix:
      return "se-prefix";
    case WitnessKind::VcePrefix:
      return "vce-prefix";
  }
  return "?";
}

int default_cap(const ConceptClass& c) { return static_cast<int>(c.domain().size()); }

namespace {

struct Columns {
  explicit Columns(const ConceptClass& c) : one(c.columns()), n(c.domain().size()), h(c.size()) {
    zero.reserve(one.size());
    for (const auto& col : one) zero.push_back(~col);
  }
  // Hypotheses labeling point x with `label`.
  const Bits& agree(std::size_t x, int label) const { return label ? one[x] : zero[x]; }

  const std::vector<Bits>& one;
  std::vector<Bits> zero;
  std::size_t n;
  std::size_t h;
};

int floor_log2(std::size_t v) { return v == 0 ? -1 : static_cast<int>(std::bit_width(v)) - 1; }

// ---- VC dimension -------------------------------------------------------------

struct VcSearch {
  const Columns& cols;
  int limit;
  int ceiling;
  int best = 0;
  std::vector<std::size_t> path;
  std::vector<Witness> first_of_size;  // first_of_size[d] is the lex-first shattered set of size d

  void record(const std::vector<Bits>& cells) {
    const int d = static_cast<int>(path.size());
    if (d < static_cast<int>(first_of_size.size())) return;
    Witness w;
    w.kind = WitnessKind::ShatteredSet;
    w.points = path;
    w.labels.assign(path.size(), 0);
    for (const auto& cell : cells) w.hypotheses.push_back(cell.find_first());
    first_of_size.push_back(std::move(w));
  }

  bool done() const { return best >= limit || best >= ceiling; }

  void extend(const std::vector<Bits>& cells, std::size_t from) {
    for (std::size_t y = from; y < cols.n && !done(); ++y) {
      const int d = static_cast<int>(path.size());
      if (d + static_cast<int>(cols.n - y) <= best) return;
      std::vector<Bits> next(cells.size() * 2);
      bool ok = true;
      for (std::size_t p = 0; p < cells.size() && ok; ++p) {
        next[p] = cells[p] & cols.zero[y];
        next[p + cells.size()] = cells[p] & cols.one[y];
        ok = next[p].any() && next[p + cells.size()].any();
      }
      if (!ok) continue;
      path.push_back(y);
      record(next);
      best = std::max(best, d + 1);
      extend(next, y + 1);
      path.pop_back();
    }
  }
};

}  // namespace

DimResult vc_dim(const ConceptClass& c, int cap) {
  Columns cols(c);
  VcSearch s{cols, cap + 1, std::min(floor_log2(cols.h), static_cast<int>(cols.n))};
  s.record({Bits(cols.h, true)});
  s.extend({Bits(cols.h, true)}, 0);
  DimResult r;
  r.value = std::min(s.best, cap);
  r.cap_reached = s.best > cap;
  r.witness = s.first_of_size[static_cast<std::size_t>(r.value)];
  return r;
}

DimResult vc_dim(const ConceptClass& c) { return vc_dim(c, default_cap(c)); }

// ---- star number ---------------------------------------------------------------

namespace {

struct StarSearch {
  const Columns& cols;
  const std::optional<Bits>& center;
  int limit;
  std::vector<std::size_t> cand;  // candidate points in index order

  int best = 0;
  Witness best_w;
  std::vector<std::size_t> pts;
  std::vector<int> labels;
  std::vector<Bits> wit;  // wit[j]: members isolating pts[j]

  void record() {
    best = static_cast<int>(pts.size());
    best_w.kind = WitnessKind::StarSet;
    best_w.points = pts;
    best_w.labels = labels;
    best_w.hypotheses.clear();
    for (const auto& w : wit) best_w.hypotheses.push_back(w.find_first());
  }

  void extend(const Bits& agree_all, std::size_t from) {
    for (std::size_t ci = from; ci < cand.size() && best < limit; ++ci) {
      if (static_cast<int>(pts.size() + cand.size() - ci) <= best) return;
      const std::size_t y = cand[ci];
      const int lo = center ? (center->test(y) ? 1 : 0) : 0;
      const int hi = center ? lo : 1;
      for (int label = lo; label <= hi && best < limit; ++label) {
        Bits own = agree_all & cols.agree(y, 1 - label);
        if (own.none()) continue;
        const Bits& keep = cols.agree(y, label);
        std::vector<Bits> next = wit;
        bool ok = true;
        for (auto& w : next) {
          w &= keep;
          if (w.none()) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        next.push_back(std::move(own));
        std::swap(wit, next);
        pts.push_back(y);
        labels.push_back(label);
        if (static_cast<int>(pts.size()) > best) record();
        extend(agree_all & keep, ci + 1);
        pts.pop_back();
        labels.pop_back();
        std::swap(wit, next);
      }
    }
  }
};

}  // namespace

DimResult star_max(const ConceptClass& c, const std::optional<Bits>& center, int cap) {
  if (center && center->size() != c.domain().size()) throw InputError("center must label every domain point");
  Columns cols(c);
  StarSearch s{cols, center, cap + 1, {}};
  for (std::size_t x = 0; x < cols.n; ++x) {
    // x can join a star set only if some member disagrees with the center there
    // (for a free center: some member labels x either way).
    const bool useful = center ? cols.agree(x, center->test(x) ? 0 : 1).any() : cols.one[x].any() || cols.zero[x].any();
    if (useful) s.cand.push_back(x);
  }
  s.best_w.kind = WitnessKind::StarSet;
  s.extend(Bits(cols.h, true), 0);
  DimResult r;
  r.value = std::min(s.best, cap);
  r.cap_reached = s.best > cap;
  r.witness = s.best_w;
  if (r.cap_reached) {
    r.witness.points.resize(cap);
    r.witness.labels.resize(cap);
    // Dropping a point keeps every remaining isolation valid.
    r.witness.hypotheses.resize(cap);
  }
  return r;
}

DimResult star_max(const ConceptClass& c, const std::optional<Bits>& center) {
  return star_max(c, center, default_cap(c));
}

// ---- eluder and Littlestone ---------------------------------------------------------

namespace {

std::vector<std::size_t> disagreement(const Columns& cols, const Bits& v) {
  const std::size_t total = v.count();
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < cols.n; ++x) {
    const std::size_t ones = v.and_count(cols.one[x]);
    if (ones > 0 && ones < total) out.push_back(x);
  }
  return out;
}

constexpr std::size_t kMaxStates = 4'000'000;

struct EluderSearch {
  const Columns& cols;
  int limit;
  struct Entry {
    int value;
    std::size_t x;
    int y;
  };
  std::unordered_map<Bits, Entry, BitsHash> memo;

  int solve(const Bits& v) {
    if (auto it = memo.find(v); it != memo.end()) return it->second.value;
    if (memo.size() > kMaxStates) throw ResourceError("eluder search exceeded its state budget");
    const auto dis = disagreement(cols, v);
    const int ub = std::min({static_cast<int>(v.count()) - 1, static_cast<int>(dis.size()), limit});
    Entry e{0, 0, 0};
    for (std::size_t x : dis) {
      if (e.value >= ub) break;
      for (int y = 0; y <= 1 && e.value < ub; ++y) {
        Bits next = v & cols.agree(x, y);
        if (static_cast<int>(next.count()) <= e.value) continue;  // 1 + (|V'| - 1) cannot beat it
        const int val = std::min(1 + solve(next), limit);
        if (val > e.value) e = Entry{val, x, y};
      }
    }
    memo.emplace(v, e);
    return e.value;
  }
};

struct LittlestoneSearch {
  const Columns& cols;
  int limit;
  std::unordered_map<Bits, int, BitsHash> memo;

  int solve(const Bits& v) {
    const std::size_t size = v.count();
    if (size <= 1) return 0;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    if (memo.size() > kMaxStates) throw ResourceError("Littlestone search exceeded its state budget");
    const int ub = std::min(floor_log2(size), limit);
    int best = 0;
    for (std::size_t x : disagreement(cols, v)) {
      if (best >= ub) break;
      Bits a = v & cols.one[x];
      Bits b = v & cols.zero[x];
      if (a.count() > b.count()) std::swap(a, b);
      if (floor_log2(a.count()) + 1 <= best) continue;
      const int la = solve(a);
      if (la + 1 <= best) continue;
      const int lb = solve(b);
      best = std::max(best, std::min(1 + std::min(la, lb), limit));
    }
    memo.emplace(v, best);
    return best;
  }
};

}  // namespace

DimResult eluder_dim(const ConceptClass& c, int cap) {
  Columns cols(c);
  EluderSearch s{cols, cap + 1, {}};
  Bits v(cols.h, true);
  const int full = s.solve(v);
  DimResult r;
  r.value = std::min(full, cap);
  r.cap_reached = full > cap;
  r.witness.kind = WitnessKind::EluderSequence;
  for (int step = 0; step < r.value; ++step) {
    const auto& e = s.memo.at(v);
    Bits err = v & cols.agree(e.x, 1 - e.y);
    r.witness.points.push_back(e.x);
    r.witness.labels.push_back(e.y);
    r.witness.hypotheses.push_back(err.find_first());
    v &= cols.agree(e.x, e.y);
  }
  return r;
}

DimResult eluder_dim(const ConceptClass& c) { return eluder_dim(c, default_cap(c)); }

DimResult littlestone_dim(const ConceptClass& c, int cap) {
  Columns cols(c);
  LittlestoneSearch s{cols, cap + 1, {}};
  const int full = s.solve(Bits(cols.h, true));
  DimResult r;
  r.value = std::min(full, cap);
  r.cap_reached = full > cap;
  return r;
}

DimResult littlestone_dim(const ConceptClass& c) { return littlestone_dim(c, default_cap(c)); }

// ---- star-eluder / VC-eluder prefixes ----------------------------------------------------

namespace {

struct Aborted {};

struct PrefixSearch {
  const Columns& cols;
  const Bits& center;
  bool shatter;
  std::optional<int> d;
  int K;
  SearchCaps caps;

  std::uint64_t nodes = 0;
  bool cut = false;
  bool budget = false;
  int best = 0;
  Witness best_w;

  // Current path: per block points and witnessing hypotheses.
  std::vector<std::vector<std::size_t>> path_pts;
  std::vector<std::vector<std::size_t>> path_hyps;

  struct KeyHash {
    std::size_t operator()(const std::pair<Bits, int>& k) const { return k.first.hash() * 31 + k.second; }
  };
  std::unordered_map<std::pair<Bits, int>, int, KeyHash> memo;

  int size_of(int k) const { return d ? *d : k; }

  void tick() {
    if (++nodes > caps.nodes) {
      budget = true;
      cut = true;
      throw Aborted{};
    }
  }

  void record(int depth) {
    if (depth <= best) return;
    best = depth;
    best_w.kind = shatter ? WitnessKind::VcePrefix : WitnessKind::SePrefix;
    best_w.points.clear();
    best_w.labels.clear();
    best_w.hypotheses.clear();
    best_w.block_sizes.clear();
    for (std::size_t b = 0; b < path_pts.size(); ++b) {
      for (auto x : path_pts[b]) {
        best_w.points.push_back(x);
        best_w.labels.push_back(center.test(x) ? 1 : 0);
      }
      best_w.hypotheses.insert(best_w.hypotheses.end(), path_hyps[b].begin(), path_hyps[b].end());
      best_w.block_sizes.push_back(path_pts[b].size());
    }
  }

  // A complete block was found: recurse into the child version space.
  struct Child {
    Bits v;
    std::vector<std::size_t> pts;
    std::vector<std::size_t> hyps;
  };

  // Enumerates blocks of `s` points (lex order) valid for version space v; calls visit(child)
  // for each block whose induced version space was not produced before. visit returns false to stop.
  template <class Visit>
  void blocks(const Bits& v, int s, Visit&& visit) {
    std::vector<std::size_t> cand;
    for (std::size_t x = 0; x < cols.n; ++x) {
      const int cx = center.test(x) ? 1 : 0;
      if (v.intersects(cols.agree(x, 1 - cx)) && v.intersects(cols.agree(x, cx))) cand.push_back(x);
    }
    std::vector<std::size_t> pts;
    bool stop = false;
    if (!shatter) {
      std::vector<Bits> wit;
      auto rec = [&](auto&& self, const Bits& agree_all, std::size_t from) -> void {
        if (static_cast<int>(pts.size()) == s) {
          std::vector<std::size_t> hyps;
          for (const auto& w : wit) hyps.push_back(w.find_first());
          stop = !visit(Child{agree_all, pts, std::move(hyps)});
          return;
        }
        for (std::size_t ci = from; ci < cand.size() && !stop; ++ci) {
          if (pts.size() + (cand.size() - ci) < static_cast<std::size_t>(s)) return;
          tick();
          const std::size_t y = cand[ci];
          const int cy = center.test(y) ? 1 : 0;
          Bits own = agree_all & cols.agree(y, 1 - cy);
          if (own.none()) continue;
          const Bits& keep = cols.agree(y, cy);
          std::vector<Bits> saved = wit;
          bool ok = true;
          for (auto& w : wit) {
            w &= keep;
            ok = ok && w.any();
          }
          if (ok) {
            wit.push_back(std::move(own));
            pts.push_back(y);
            self(self, agree_all & keep, ci + 1);
            pts.pop_back();
          }
          wit = std::move(saved);
        }
      };
      rec(rec, v, 0);
    } else {
      auto rec = [&](auto&& self, const std::vector<Bits>& cells, std::size_t from) -> void {
        if (static_cast<int>(pts.size()) == s) {
          std::size_t pattern = 0;
          for (std::size_t j = 0; j < pts.size(); ++j)
            if (center.test(pts[j])) pattern |= std::size_t{1} << j;
          std::vector<std::size_t> hyps;
          for (const auto& cell : cells) hyps.push_back(cell.find_first());
          stop = !visit(Child{cells[pattern], pts, std::move(hyps)});
          return;
        }
        for (std::size_t ci = from; ci < cand.size() && !stop; ++ci) {
          if (pts.size() + (cand.size() - ci) < static_cast<std::size_t>(s)) return;
          tick();
          const std::size_t y = cand[ci];
          std::vector<Bits> next(cells.size() * 2);
          bool ok = true;
          for (std::size_t p = 0; p < cells.size() && ok; ++p) {
            next[p] = cells[p] & cols.zero[y];
            next[p + cells.size()] = cells[p] & cols.one[y];
            ok = next[p].any() && next[p + cells.size()].any();
          }
          if (!ok) continue;
          pts.push_back(y);
          self(self, next, ci + 1);
          pts.pop_back();
        }
      };
      rec(rec, {v}, 0);
    }
  }

  // Max number of further blocks achievable from version space v before block k.
  int dfs(const Bits& v, int k, int depth) {
    record(depth);
    if (k > K || best >= K) return 0;
    const std::pair<Bits, int> key{v, k};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    tick();
    const bool cut_before = cut;
    cut = false;
    int extra = 0;
    std::size_t children = 0;
    std::unordered_map<Bits, bool, BitsHash> seen;
    blocks(v, size_of(k), [&](Child ch) {
      if (best >= K) return false;
      if (ch.v.none()) return true;  // the prefix must stay realizable
      if (!seen.emplace(ch.v, true).second) return true;
      if (++children > caps.branching) {
        cut = true;
        return false;
      }
      path_pts.push_back(std::move(ch.pts));
      path_hyps.push_back(std::move(ch.hyps));
      extra = std::max(extra, 1 + dfs(ch.v, k + 1, depth + 1));
      path_pts.pop_back();
      path_hyps.pop_back();
      return extra < K - k + 1;
    });
    if (!cut) memo.emplace(key, extra);
    cut = cut || cut_before;
    return extra;
  }
};

PrefixResult run_prefix(const ConceptClass& c, const Bits& center, std::optional<int> d, int K,
                        const SearchCaps& caps, bool shatter) {
  if (center.size() != c.domain().size()) throw InputError("center must label every domain point");
  if (K < 0) throw InputError("block count must be non-negative");
  if (d && *d < 1) throw InputError("block size must be positive");
  Columns cols(c);
  PrefixSearch s{cols, center, shatter, d, K, caps};
  s.best_w.kind = shatter ? WitnessKind::VcePrefix : WitnessKind::SePrefix;
  try {
    s.dfs(Bits(cols.h, true), 1, 0);
  } catch (const Aborted&) {
  }
  PrefixResult r;
  r.depth = s.best;
  r.K = K;
  r.block_size = d;
  r.budget_exhausted = s.budget;
  r.exhaustive = !s.cut || r.depth == K;
  r.nodes = s.nodes;
  r.witness = s.best_w;
  return r;
}

}  // namespace

PrefixResult se_prefix(const ConceptClass& c, const Bits& center, std::optional<int> block_size, int K,
                       const SearchCaps& caps) {
  return run_prefix(c, center, block_size, K, caps, false);
}

PrefixResult vce_prefix(const ConceptClass& c, const Bits& center, std::optional<int> block_size, int K,
                        const SearchCaps& caps) {
  return run_prefix(c, center, block_size, K, caps, true);
}

}  // namespace ermrates
