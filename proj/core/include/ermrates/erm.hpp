#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ermrates/classcat.hpp"
#include "ermrates/distros.hpp"

namespace ermrates {

// The consistent members of a materialized class. Holds a reference to `base`,
// which must outlive it.
class VersionSpace {
 public:
  // Throws DomainError if a sample point is outside the class domain.
  VersionSpace(const ConceptClass& base, Sample constraints);

  const ConceptClass& base() const { return *base_; }
  const Sample& constraints() const { return constraints_; }
  // Bit i set iff hypothesis i is consistent.
  const Bits& mask() const { return mask_; }
  std::vector<std::size_t> members() const { return mask_.indices(); }
  std::size_t size() const { return mask_.count(); }
  bool empty() const { return mask_.none(); }
  bool realizable() const { return !empty(); }

 private:
  const ConceptClass* base_;
  Sample constraints_;
  Bits mask_;
};

VersionSpace version_space(const ConceptClass& c, const Sample& s);

// Hypotheses eliminated by a single labeled example, over hypothesis indices.
Bits eliminated_by(const ConceptClass& c, std::size_t x, int label);

double true_error(const Hypothesis& h, const RealizableDistribution& p);
// true_error of every member of c, in enumeration order.
std::vector<double> member_errors(const ConceptClass& c, const RealizableDistribution& p);
// Smallest strictly positive member error; 0 if every member has zero error.
double min_positive_error(const ConceptClass& c, const RealizableDistribution& p);

// Argmax / argmin of true error over V, first in enumeration order on ties.
// Throw InputError on an empty version space.
std::size_t worst_case_index(const VersionSpace& v, const std::vector<double>& errors);
std::size_t best_case_index(const VersionSpace& v, const std::vector<double>& errors);
const Hypothesis& worst_case_erm(const VersionSpace& v, const RealizableDistribution& p);
const Hypothesis& best_case_erm(const VersionSpace& v, const RealizableDistribution& p);

enum class ScriptedRule { ThresholdMaxPlus1, B5MinConsistentBlock };
std::string to_string(ScriptedRule r);
ScriptedRule parse_scripted_rule(const std::string& name);

// threshold-maxplus1: Threshold(max sample id + 1); the empty sample gives Threshold(1).
// b5-min-consistent-block: indicator of every unseen point of the first block whose unseen
// count reaches its minimum positive size. Works on structural (non-materialized) classes.
// Both expect an all-0 labeled sample. Throw InputError when the rule does not apply.
Hypothesis scripted_erm(ScriptedRule rule, const ConceptClass& c, const Sample& s);

struct CompressionSet {
  std::vector<std::size_t> subset;  // indices into the sample, ascending
  bool exact = false;
};

// Greedy backward elimination, then an exact search for anything smaller limited to
// `budget` search nodes. exact is false when the budget ran out first.
CompressionSet compression_set(const ConceptClass& c, const Sample& s, std::uint64_t budget = 1'000'000);

// Domain indices on which members of V disagree, ascending.
std::vector<std::size_t> disagreement_region(const VersionSpace& v);

}  // namespace ermrates
