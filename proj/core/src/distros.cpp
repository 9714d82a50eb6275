#include "ermrates/distros.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace ermrates {

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -exp); }

namespace {

Dyadic reduce(Dyadic d) {
  if (d.num == 0) return {0, 0};
  while (d.exp > 0 && (d.num & 1u) == 0) {
    d.num >>= 1;
    --d.exp;
  }
  return d;
}

Dyadic pow2(int neg_exp) { return {1, neg_exp}; }

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }
int log2_exact(std::uint64_t v) { return std::countr_zero(v); }

std::vector<std::size_t> block_points(const Witness& w, std::size_t block) {
  std::size_t offset = 0;
  for (std::size_t b = 0; b < block; ++b) offset += w.block_sizes.at(b);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < w.block_sizes.at(block); ++j) out.push_back(w.points.at(offset + j));
  return out;
}

Bits center_from_labels(const ConceptClass& c, const Witness& w) {
  Bits b(c.domain().size());
  for (std::size_t i = 0; i < w.points.size(); ++i)
    if (w.labels[i]) b.set(w.points[i]);
  return b;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::optional<Dyadic> dyadic_sum(const std::vector<Dyadic>& terms) {
  int e = 0;
  for (const auto& t : terms) e = std::max(e, t.exp);
  if (e > 63) return std::nullopt;
  unsigned __int128 acc = 0;
  for (const auto& t : terms) {
    acc += static_cast<unsigned __int128>(t.num) << (e - t.exp);
    if (acc >> 64) return std::nullopt;
  }
  return reduce(Dyadic{static_cast<std::uint64_t>(acc), e});
}

RealizableDistribution::RealizableDistribution(std::vector<Atom> support, std::string target,
                                               std::string construction, std::map<std::string, double> params)
    : support_(std::move(support)),
      target_(std::move(target)),
      construction_(std::move(construction)),
      params_(std::move(params)) {
  if (support_.empty()) throw InputError("distribution needs at least one atom");
  std::set<PointId> ids;
  bool all_exact = true;
  std::vector<Dyadic> exact;
  double sum = 0;
  for (auto& a : support_) {
    if (!(a.p > 0)) throw InputError("atom mass must be positive");
    if (a.label != 0 && a.label != 1) throw InputError("atom label must be 0 or 1");
    if (!ids.insert(a.point.id).second) throw InputError("point " + std::to_string(a.point.id) + " appears twice");
    if (a.exact) {
      a.exact = reduce(*a.exact);
      if (a.exact->value() != a.p) throw InputError("exact mass disagrees with its floating value");
      exact.push_back(*a.exact);
    } else {
      all_exact = false;
    }
    sum += a.p;
  }
  if (all_exact) {
    auto s = dyadic_sum(exact);
    if (!s || !(*s == Dyadic{1, 0})) throw InputError("dyadic masses do not sum to 1");
  } else if (std::abs(sum - 1.0) > kMassTolerance) {
    throw InputError("masses sum to " + fmt(sum) + ", not 1");
  }
}

std::vector<double> RealizableDistribution::masses() const {
  std::vector<double> out;
  out.reserve(support_.size());
  for (const auto& a : support_) out.push_back(a.p);
  return out;
}

bool RealizableDistribution::exact() const {
  return std::all_of(support_.begin(), support_.end(), [](const Atom& a) { return a.exact.has_value(); });
}

bool RealizableDistribution::centered_at(const Hypothesis& h) const {
  for (const auto& a : support_) {
    auto idx = h.domain().index_of(a.point.id);
    if (!idx || h.at(*idx) != a.label) return false;
  }
  return true;
}

bool realizable_in(const ConceptClass& c, const RealizableDistribution& p) {
  for (const auto& h : c.hypotheses())
    if (p.centered_at(h)) return true;
  return false;
}

RealizableDistribution geometric_eluder(const ConceptClass& c, const Witness& seq) {
  if (seq.kind != WitnessKind::EluderSequence || seq.points.empty() || !verify_witness(c, seq))
    throw InputError("geometric_eluder needs a verified, nonempty eluder sequence");
  const std::size_t m = seq.points.size();
  std::vector<Atom> atoms;
  for (std::size_t i = 1; i <= m; ++i) {
    const int e = static_cast<int>(i == m ? m - 1 : i);
    Atom a{c.domain().point(seq.points[i - 1]), seq.labels[i - 1], std::ldexp(1.0, -e), std::nullopt};
    if (e <= 63) a.exact = pow2(e);
    atoms.push_back(std::move(a));
  }
  return RealizableDistribution(std::move(atoms), "eluder-sequence labels", "geometric_eluder",
                                {{"m", static_cast<double>(m)}});
}

RealizableDistribution block_star_eluder(const ConceptClass& c, const Witness& seq, int t_max) {
  if (t_max < 1) throw InputError("t_max must be at least 1");
  std::vector<std::size_t> blocks;
  for (int t = 0; t < t_max; ++t) blocks.push_back(static_cast<std::size_t>(t));
  return block_star_eluder(c, seq, blocks);
}

RealizableDistribution block_star_eluder(const ConceptClass& c, const Witness& seq,
                                         const std::vector<std::size_t>& blocks) {
  if (seq.kind != WitnessKind::SePrefix || !verify_witness(c, seq, center_from_labels(c, seq)))
    throw InputError("block_star_eluder needs a verified star-eluder prefix witness");
  if (blocks.empty()) throw InputError("at least one block is required");
  if (std::set<std::size_t>(blocks.begin(), blocks.end()).size() != blocks.size())
    throw InputError("chosen blocks must be disjoint");
  for (auto b : blocks)
    if (b >= seq.block_sizes.size()) throw InputError("witness has no block " + std::to_string(b + 1));
  const std::size_t T = blocks.size();
  std::vector<Atom> atoms;
  for (std::size_t t = 1; t <= T; ++t) {
    const int e = static_cast<int>(t == T ? T - 1 : t);
    const auto pts = block_points(seq, blocks[t - 1]);
    const double mass = std::ldexp(1.0, -e) / static_cast<double>(pts.size());
    for (auto x : pts) {
      const auto pos = static_cast<std::size_t>(std::find(seq.points.begin(), seq.points.end(), x) - seq.points.begin());
      Atom a{c.domain().point(x), seq.labels[pos], mass, std::nullopt};
      if (is_pow2(pts.size()) && e + log2_exact(pts.size()) <= 63) a.exact = pow2(e + log2_exact(pts.size()));
      atoms.push_back(std::move(a));
    }
  }
  return RealizableDistribution(std::move(atoms), "star-eluder center", "block_star_eluder",
                                {{"t_max", static_cast<double>(T)}});
}

RateFunction rate_inverse_n() {
  return {"1/n", [](double n) { return 1.0 / n; }};
}
RateFunction rate_inverse_sqrt() {
  return {"n^-1/2", [](double n) { return 1.0 / std::sqrt(n); }};
}
RateFunction rate_power(double alpha) {
  std::ostringstream os;
  os << "n^-" << alpha;
  return {os.str(), [alpha](double n) { return std::pow(n, -alpha); }};
}
RateFunction rate_inverse_log() {
  return {"1/log(n)", [](double n) { return 1.0 / std::log(n + 1.0); }};
}

RateFunction parse_rate(const std::string& name) {
  if (name == "1/n") return rate_inverse_n();
  if (name == "n^-1/2" || name == "1/sqrt(n)") return rate_inverse_sqrt();
  if (name == "1/log(n)") return rate_inverse_log();
  if (name.rfind("n^-", 0) == 0) {
    try {
      std::size_t used = 0;
      const double a = std::stod(name.substr(3), &used);
      if (used == name.size() - 3 && a > 0 && a <= 1) return rate_power(a);
    } catch (const std::exception&) {
    }
  }
  throw InputError("unknown rate function '" + name + "'");
}

ScheduleCheck check_schedule(const SlowSchedule& s, const RateFunction& r) {
  ScheduleCheck out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.violations.push_back(msg);
  };
  const std::size_t T = s.p.size();
  if (s.k.size() != T || s.n.size() != T) {
    fail("p, k and n have different lengths");
    return out;
  }
  if (!(s.C >= 0.5 && s.C <= 1.0)) fail("C = " + fmt(s.C) + " outside [1/2, 1]");
  double total = 0;
  for (std::size_t t = 0; t < T; ++t) {
    const std::string at = " at t=" + std::to_string(t + 1);
    total += s.p[t];
    if (!(s.p[t] > 0)) fail("p must be positive" + at);
    if (s.n[t] < 1) fail("n must be positive" + at);
    if (t > 0 && s.k[t] <= s.k[t - 1]) fail("k not strictly increasing" + at);
    if (t > 0 && s.n[t] <= s.n[t - 1]) fail("n not strictly increasing" + at);
    double tail = 0;
    for (std::size_t j = T; j-- > t + 1;)
      if (s.k[j] > s.k[t]) tail += s.p[j];
    if (!(tail <= 1.0 / static_cast<double>(s.n[t]))) fail("condition (1) tail mass " + fmt(tail) + " > 1/n" + at);
    if (!(static_cast<double>(s.n[t]) * s.p[t] <= static_cast<double>(s.k[t])))
      fail("condition (2) n*p > k" + at);
    if (s.p[t] != s.C * r.R(static_cast<double>(s.n[t]))) fail("condition (3) p != C*R(n)" + at);
  }
  if (total > 1.0) fail("masses sum to " + fmt(total) + " > 1");
  return out;
}

namespace {

// Smallest n in [lo, n_max] with ok(n), assuming ok is monotone in n; nullopt if none.
template <class Pred>
std::optional<std::int64_t> smallest(std::int64_t lo, std::int64_t n_max, Pred ok) {
  if (lo > n_max) return std::nullopt;
  if (ok(lo)) return lo;
  std::int64_t bad = lo;
  std::int64_t step = 1;
  std::int64_t probe = lo;
  while (true) {
    probe = (n_max - bad > step) ? bad + step : n_max;
    if (ok(probe)) break;
    if (probe == n_max) return std::nullopt;
    bad = probe;
    step *= 2;
  }
  std::int64_t good = probe;
  while (good - bad > 1) {
    const std::int64_t mid = bad + (good - bad) / 2;
    (ok(mid) ? good : bad) = mid;
  }
  return good;
}

std::optional<SlowSchedule> greedy(const RateFunction& r, int t_max, double C, std::int64_t n_max) {
  SlowSchedule s;
  s.C = C;
  s.rate = r.name;
  for (int t = 0; t < t_max; ++t) {
    double bound = 0.5;
    std::int64_t lo = 1;
    if (t > 0) {
      bound = std::min(0.5 / static_cast<double>(s.n.back()), s.p.back() / 2);
      lo = std::max(s.n.back() + 1, 2 * s.n.back());
    }
    auto n = smallest(lo, n_max, [&](std::int64_t v) { return C * r.R(static_cast<double>(v)) <= bound; });
    if (!n) return std::nullopt;
    const double p = C * r.R(static_cast<double>(*n));
    std::int64_t k = static_cast<std::int64_t>(std::ceil(static_cast<double>(*n) * p));
    k = std::max<std::int64_t>(k, 1);
    if (!s.k.empty()) k = std::max(k, s.k.back() + 1);
    s.p.push_back(p);
    s.n.push_back(*n);
    s.k.push_back(k);
  }
  return s;
}

}  // namespace

SlowSchedule slow_schedule(const RateFunction& r, int t_max, const ScheduleOptions& opt) {
  if (t_max < 0) throw InputError("t_max must be non-negative");
  std::vector<std::string> why;
  for (double C : {0.5, 0.75, 1.0}) {
    auto s = greedy(r, t_max, C, opt.n_max);
    if (!s) {
      why.push_back("C=" + fmt(C) + ": no n <= n_max satisfies C*R(n) <= budget (conditions (1)/(3))");
      continue;
    }
    auto check = check_schedule(*s, r);
    if (check.ok) return *s;
    for (auto& v : check.violations) why.push_back("C=" + fmt(C) + ": " + v);
  }
  std::string msg = "slow_schedule infeasible for R=" + r.name;
  for (auto& w : why) msg += "; " + w;
  throw InputError(msg);
}

RealizableDistribution slow_distribution(const ConceptClass& c, const Witness& seq, const Bits& center,
                                         const SlowSchedule& sched, PointId sink) {
  if (seq.kind != WitnessKind::VcePrefix || !verify_witness(c, seq, center))
    throw InputError("slow_distribution needs a verified VC-eluder prefix witness");
  std::vector<Atom> atoms;
  std::set<std::size_t> used;
  double total = 0;
  for (std::size_t t = 0; t < sched.p.size(); ++t) {
    const auto k = sched.k[t];
    if (k < 1 || static_cast<std::size_t>(k) > seq.block_sizes.size() ||
        seq.block_sizes[static_cast<std::size_t>(k - 1)] != static_cast<std::size_t>(k))
      throw InputError("witness has no block of size " + std::to_string(k) + " at position " + std::to_string(k));
    const auto pts = block_points(seq, static_cast<std::size_t>(k - 1));
    for (auto x : pts) {
      used.insert(x);
      atoms.push_back(Atom{c.domain().point(x), center.test(x) ? 1 : 0, sched.p[t] / static_cast<double>(k), std::nullopt});
    }
    total += sched.p[t];
  }
  const double rest = 1.0 - total;
  if (rest < -kMassTolerance) throw InputError("schedule masses exceed 1");
  if (rest > kMassTolerance) {
    const std::size_t s = c.domain().require_index(sink);
    if (used.count(s)) throw InputError("sink point lies inside a scheduled block");
    atoms.push_back(Atom{c.domain().point(s), center.test(s) ? 1 : 0, rest, std::nullopt});
  }
  return RealizableDistribution(std::move(atoms), "VC-eluder center", "slow_distribution",
                                {{"t_max", static_cast<double>(sched.p.size())}, {"C", sched.C}});
}

namespace {

double block_mass(int i, std::int64_t n) { return std::ldexp(1.0, i - 2) / static_cast<double>(n); }

}  // namespace

ScheduleCheck check_block_design(const BlockDesign& d, const RateFunction& r) {
  ScheduleCheck out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.violations.push_back(msg);
  };
  if (d.i.size() != d.n.size() || d.i.size() != d.p.size()) {
    fail("i, n and p have different lengths");
    return out;
  }
  double total = 0;
  for (std::size_t t = 0; t < d.p.size(); ++t) {
    const std::string at = " at t=" + std::to_string(t + 1);
    total += d.p[t];
    if (d.p[t] != block_mass(d.i[t], d.n[t])) fail("p != 2^(i-2)/n" + at);
    if (t > 0 && d.i[t] <= d.i[t - 1]) fail("i not strictly increasing" + at);
    if (t > 0 && d.n[t] <= d.n[t - 1]) fail("n not strictly increasing" + at);
    if (t > 0 && !(d.p[t] < d.p[t - 1])) fail("p not decreasing" + at);
    if (!(d.p[t] >= 4 * r.R(static_cast<double>(d.n[t])))) fail("p < 4R(n)" + at);
  }
  if (total > 1.0) fail("masses sum to " + fmt(total) + " > 1");
  return out;
}

BlockDesign block_design(const RateFunction& r, int t_max, const ScheduleOptions& opt) {
  BlockDesign d;
  d.rate = r.name;
  double used = 0;
  for (int t = 0; t < t_max; ++t) {
    bool placed = false;
    const int i_from = d.i.empty() ? 1 : d.i.back() + 1;
    for (int i = i_from; i <= 62 && !placed; ++i) {
      auto big_enough = [&](std::int64_t n) { return block_mass(i, n) >= 4 * r.R(static_cast<double>(n)); };
      if (!big_enough(1)) continue;
      // Largest n keeping p >= 4R(n): first failure minus one.
      auto first_bad = smallest(1, opt.n_max, [&](std::int64_t n) { return !big_enough(n); });
      const std::int64_t n_hi = first_bad ? *first_bad - 1 : opt.n_max;
      const double budget = (1.0 - used) / 2;
      const std::int64_t n_prev = d.n.empty() ? 0 : d.n.back();
      auto fits = [&](std::int64_t n) {
        const double p = block_mass(i, n);
        return p <= budget && (d.p.empty() || p < d.p.back());
      };
      auto n_lo = smallest(n_prev + 1, opt.n_max, fits);
      if (!n_lo || *n_lo > n_hi) continue;
      d.i.push_back(i);
      d.n.push_back(*n_lo);
      d.p.push_back(block_mass(i, *n_lo));
      used += d.p.back();
      placed = true;
    }
    if (!placed) throw InputError("block_design: no (i, n) fits at t=" + std::to_string(t + 1) + " for R=" + r.name);
  }
  auto check = check_block_design(d, r);
  if (!check.ok) throw InputError("block_design produced an invalid design: " + check.violations.front());
  return d;
}

RealizableDistribution block_distribution(const ConceptClass& c, const BlockDesign& d) {
  std::vector<Atom> atoms;
  std::vector<Dyadic> exact_block;
  bool all_exact = true;
  double total = 0;
  for (std::size_t t = 0; t < d.i.size(); ++t) {
    const Block* blk = nullptr;
    for (const auto& b : c.blocks())
      if (b.index == d.i[t] && b.min_positive > 0) blk = &b;
    if (!blk) throw InputError("class has no block X_" + std::to_string(d.i[t]));
    const std::size_t size = blk->points.size();
    const double mass = d.p[t] / static_cast<double>(size);
    const std::uint64_t denom = static_cast<std::uint64_t>(d.n[t]) * size;
    const bool exact = d.i[t] >= 2 && is_pow2(static_cast<std::uint64_t>(d.n[t])) && is_pow2(size);
    for (auto x : blk->points) {
      Atom a{c.domain().point(x), 0, mass, std::nullopt};
      if (exact) {
        const int e = log2_exact(denom) - (d.i[t] - 2);
        if (e >= 0 && e <= 63) a.exact = pow2(e);
      }
      all_exact = all_exact && a.exact.has_value();
      if (a.exact) exact_block.push_back(*a.exact);
      atoms.push_back(std::move(a));
    }
    total += d.p[t];
  }
  const std::size_t sink = c.domain().require_index(0);
  if (all_exact) {
    auto s = dyadic_sum(exact_block);
    if (!s) throw InputError("block masses overflow exact arithmetic");
    if (!(*s == Dyadic{1, 0})) {
      const Dyadic one{std::uint64_t{1} << s->exp, s->exp};
      if (s->num > one.num) throw InputError("block masses exceed 1");
      Dyadic rest = reduce({one.num - s->num, s->exp});
      atoms.push_back(Atom{c.domain().point(sink), 0, rest.value(), rest});
    }
  } else if (1.0 - total > kMassTolerance) {
    atoms.push_back(Atom{c.domain().point(sink), 0, 1.0 - total, std::nullopt});
  }
  return RealizableDistribution(std::move(atoms), "all-0 labeling", "block_distribution",
                                {{"t_max", static_cast<double>(d.i.size())}});
}

RealizableDistribution uniform_singleton(std::int64_t m) {
  if (m < 1) throw InputError("m must be at least 1");
  std::vector<Atom> atoms;
  const bool exact = is_pow2(static_cast<std::uint64_t>(m));
  for (std::int64_t i = 1; i <= m; ++i) {
    Atom a{Point{static_cast<PointId>(i), std::nullopt}, 0, 1.0 / static_cast<double>(m), std::nullopt};
    if (exact) a.exact = pow2(log2_exact(static_cast<std::uint64_t>(m)));
    atoms.push_back(std::move(a));
  }
  return RealizableDistribution(std::move(atoms), "all-0 labeling", "uniform_singleton",
                                {{"m", static_cast<double>(m)}});
}

TwoPointPair two_point_pair(const ConceptClass& c) {
  const auto& tables = c.tables();
  const std::size_t n = c.domain().size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xp = 0; xp < n; ++xp) {
      if (xp == x) continue;
      for (std::size_t a = 0; a < tables.size(); ++a)
        for (std::size_t b = a + 1; b < tables.size(); ++b) {
          if (tables[a].test(x) != tables[b].test(x) || tables[a].test(xp) == tables[b].test(xp)) continue;
          const std::size_t h0 = tables[a].test(xp) ? b : a;
          const std::size_t h1 = tables[a].test(xp) ? a : b;
          const int y = tables[a].test(x) ? 1 : 0;
          auto make = [&](int i, std::size_t h) {
            std::vector<Atom> atoms{Atom{c.domain().point(x), y, 0.5, pow2(1)},
                                    Atom{c.domain().point(xp), i, 0.5, pow2(1)}};
            return RealizableDistribution(std::move(atoms), "hyp:" + std::to_string(h), "two_point_pair",
                                          {{"label", static_cast<double>(i)}});
          };
          return TwoPointPair{make(0, h0), make(1, h1), x, xp, h0, h1};
        }
    }
  throw InputError("two_point_pair: no points x, x' and members agreeing at x but not at x'");
}

}  // namespace ermrates
