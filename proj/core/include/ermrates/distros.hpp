#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ermrates/classcat.hpp"
#include "ermrates/dims.hpp"

namespace ermrates {

// num / 2^exp, exp <= 63.
struct Dyadic {
  std::uint64_t num = 0;
  int exp = 0;

  double value() const;
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
};
// Exact sum when every term is dyadic; nullopt on overflow.
std::optional<Dyadic> dyadic_sum(const std::vector<Dyadic>& terms);

struct Atom {
  Point point;
  int label = 0;
  double p = 0;
  std::optional<Dyadic> exact;
};

inline constexpr double kMassTolerance = 1e-12;

class RealizableDistribution {
 public:
  // Throws InputError unless masses are positive, sum to 1 (exactly when all dyadic,
  // else within kMassTolerance) and each point appears once.
  RealizableDistribution(std::vector<Atom> support, std::string target, std::string construction,
                         std::map<std::string, double> params = {});

  const std::vector<Atom>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  const std::string& target() const { return target_; }
  const std::string& construction() const { return construction_; }
  const std::map<std::string, double>& params() const { return params_; }
  std::vector<double> masses() const;
  bool exact() const;

  // Labels of the support agree with h (realizability centered at h).
  bool centered_at(const Hypothesis& h) const;

 private:
  std::vector<Atom> support_;
  std::string target_;
  std::string construction_;
  std::map<std::string, double> params_;
};

// Some member of C has zero error under P.
bool realizable_in(const ConceptClass& c, const RealizableDistribution& p);

RealizableDistribution geometric_eluder(const ConceptClass& c, const Witness& seq);

// Block t (1-based) of the chosen witness blocks carries 2^-t, the last one also the residual.
RealizableDistribution block_star_eluder(const ConceptClass& c, const Witness& seq, int t_max);
// blocks[t-1] is the 0-based index of the witness block used as X_{k_t}.
RealizableDistribution block_star_eluder(const ConceptClass& c, const Witness& seq,
                                         const std::vector<std::size_t>& blocks);

struct RateFunction {
  std::string name;
  std::function<double(double)> R;
};
RateFunction rate_inverse_n();
RateFunction rate_inverse_sqrt();
RateFunction rate_power(double alpha);
RateFunction rate_inverse_log();
// Accepts 1/n, n^-1/2, n^-a (a in (0,1]) and 1/log(n).
RateFunction parse_rate(const std::string& name);

struct SlowSchedule {
  std::vector<double> p;
  std::vector<std::int64_t> k;
  std::vector<std::int64_t> n;
  double C = 0.5;
  std::string rate;
};

struct ScheduleOptions {
  std::int64_t n_max = std::int64_t{1} << 40;
};

struct ScheduleCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Independent check of the three design conditions plus sum(p) <= 1 and monotone k, n.
ScheduleCheck check_schedule(const SlowSchedule& s, const RateFunction& r);

// Greedy construction; throws InputError naming the violated condition when infeasible.
SlowSchedule slow_schedule(const RateFunction& r, int t_max, const ScheduleOptions& opt = {});

// Block k_t of a strong VC-eluder witness carries p_t uniformly; 1 - sum(p) goes to `sink`.
RealizableDistribution slow_distribution(const ConceptClass& c, const Witness& seq, const Bits& center,
                                         const SlowSchedule& sched, PointId sink);

// Block schedule for the block class: p_t = 2^{i_t - 2} / n_t, decreasing, sum <= 1, p_t >= 4 R(n_t).
struct BlockDesign {
  std::vector<int> i;
  std::vector<std::int64_t> n;
  std::vector<double> p;
  std::string rate;
};
BlockDesign block_design(const RateFunction& r, int t_max, const ScheduleOptions& opt = {});
ScheduleCheck check_block_design(const BlockDesign& d, const RateFunction& r);

// All-0 distribution on the blocks X_{i_t} of an ex-B5-blocks class (any materialization),
// P{(x,0)} = 2^{-i_t} p_t, and 1 - sum(p) on the sink point id 0.
RealizableDistribution block_distribution(const ConceptClass& c, const BlockDesign& d);

RealizableDistribution uniform_singleton(std::int64_t m);

struct TwoPointPair {
  RealizableDistribution p0;
  RealizableDistribution p1;
  std::size_t x = 0;       // domain index where h1, h2 agree
  std::size_t x_prime = 0; // domain index where they differ
  std::size_t h0 = 0;      // member labeling x' with 0
  std::size_t h1 = 0;      // member labeling x' with 1
};
TwoPointPair two_point_pair(const ConceptClass& c);

}  // namespace ermrates
