#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ermrates/classcat.hpp"

namespace ermrates {

enum class WitnessKind { ShatteredSet, StarSet, EluderSequence, SePrefix, VcePrefix };

std::string to_string(WitnessKind k);

// Points are domain indices. Labels are the center's labels on the points
// (star sets, prefixes) or the sequence labels (eluder sequences).
//  - ShatteredSet: hypotheses[p] realizes pattern p (bit j = label on points[j]).
//  - StarSet: hypotheses[j] isolates points[j].
//  - EluderSequence: hypotheses[k] agrees on the first k examples and errs on the k-th.
//  - SePrefix: hypotheses[j] isolates points[j] inside its block, drawn from the
//    version space of the preceding blocks.
//  - VcePrefix: for each block, 2^size hypotheses in pattern order, concatenated.
struct Witness {
  WitnessKind kind = WitnessKind::ShatteredSet;
  std::vector<std::size_t> points;
  std::vector<int> labels;
  std::vector<std::size_t> hypotheses;
  std::vector<std::size_t> block_sizes;
};

struct DimResult {
  int value = 0;
  // The search stopped at `cap`; the true value may be larger.
  bool cap_reached = false;
  Witness witness;
};

struct SearchCaps {
  std::size_t branching = 64;
  std::uint64_t nodes = 1'000'000;
};

int default_cap(const ConceptClass& c);

DimResult vc_dim(const ConceptClass& c, int cap);
DimResult vc_dim(const ConceptClass& c);

// Without a center the search ranges jointly over point sets and center labelings of them.
DimResult star_max(const ConceptClass& c, const std::optional<Bits>& center, int cap);
DimResult star_max(const ConceptClass& c, const std::optional<Bits>& center = std::nullopt);

DimResult eluder_dim(const ConceptClass& c, int cap);
DimResult eluder_dim(const ConceptClass& c);

DimResult littlestone_dim(const ConceptClass& c, int cap);
DimResult littlestone_dim(const ConceptClass& c);

struct PrefixResult {
  int depth = 0;
  int K = 0;
  std::optional<int> block_size;  // nullopt: strong variant (block k has size k)
  // True iff no branching or node cap cut the search: depth is then the exact maximum.
  bool exhaustive = true;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
  Witness witness;
};

PrefixResult se_prefix(const ConceptClass& c, const Bits& center, std::optional<int> block_size, int K,
                       const SearchCaps& caps = {});
PrefixResult vce_prefix(const ConceptClass& c, const Bits& center, std::optional<int> block_size, int K,
                        const SearchCaps& caps = {});

// Rewrites a VC-eluder prefix witness in star-eluder form: inside each block the member
// realizing "center with point j flipped" isolates point j.
Witness vce_to_se_witness(const Witness& vce, const Bits& center);

// Re-checks a witness from the raw definitions. `center` is required for star sets and prefixes.
bool verify_witness(const ConceptClass& c, const Witness& w, const std::optional<Bits>& center = std::nullopt);

struct PrefixEvidence {
  std::string center;
  std::optional<int> block_size;
  int K = 0;
  int depth = 0;
  bool exhaustive = true;
  bool budget_exhausted = false;
  Witness witness;
};

struct DimensionReport {
  std::string class_name;
  Params params;
  std::size_t domain_size = 0;
  std::size_t hypotheses = 0;
  bool truncated_from_infinite = false;
  int cap = 0;
  SearchCaps caps;

  DimResult vc;
  DimResult star_global;
  std::map<std::string, DimResult> star_centered;
  DimResult eluder;
  DimResult littlestone;
  std::vector<PrefixEvidence> se_evidence;
  std::vector<PrefixEvidence> vce_evidence;

  bool any_budget_exhausted() const;
};

struct NamedCenter {
  std::string name;
  Bits labels;
};

// Parses all0 | all1 | hyp:i. File centers are resolved by the caller.
NamedCenter parse_center(const ConceptClass& c, const std::string& spec);

struct ReportOptions {
  int cap = 0;  // 0: default_cap
  std::vector<NamedCenter> centers;
  int se_blocks = 0;
  int vce_blocks = 0;
  std::vector<int> block_sizes;  // d-variants evaluated in addition to the strong variant
  SearchCaps caps;
};

DimensionReport compute_report(const ConceptClass& c, const ReportOptions& opt);

enum class RateCategory { Exponential, Linear, LogLinear, ArbitrarilySlow };
std::string to_string(RateCategory c);

struct RateClassification {
  RateCategory category = RateCategory::Exponential;
  std::vector<std::string> notes;
};

// Reports ordered by increasing truncation. A single report falls back to metadata.
RateClassification classify_rate(const std::vector<DimensionReport>& trend);
RateClassification classify_rate(const DimensionReport& report);

}  // namespace ermrates
