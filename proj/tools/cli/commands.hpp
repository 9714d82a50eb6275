#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ermrates/classcat.hpp"
#include "ermrates/curves.hpp"
#include "ermrates/dims.hpp"

namespace ermrates::cli {

enum ExitCode : int { kOk = 0, kBadInput = 2, kBudgetExhausted = 3 };

struct Common {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::filesystem::path out = "out";
};

// Either a class-spec file or a catalog id with name=value parameters.
struct ClassSource {
  std::string spec_file;
  std::string id;
  std::vector<std::string> params;
};
ConceptClass load_class(const ClassSource& src);
Params parse_params(const std::vector<std::string>& kv);

// "lo:hi" for 2^lo..2^hi, or a comma-separated list.
std::vector<std::int64_t> parse_grid(const std::string& text);

struct DimsConfig {
  ClassSource cls;
  int cap = 0;
  std::vector<std::string> centers;
  int se_blocks = 0;
  int vce_blocks = 0;
  std::vector<int> block_sizes;
  std::uint64_t max_nodes = 1'000'000;
  std::size_t max_branching = 64;
  std::string report;  // default: <out>/dims.json
};
int cmd_dims(const Common& common, const DimsConfig& cfg, std::ostream& log);

struct CurveConfig {
  ClassSource cls;
  std::string distribution_file;
  // geometric | block-star | uniform-singleton | two-point | block-design | slow
  std::string construct;
  std::vector<std::string> construct_params;
  std::string rule = "worst-case";
  std::string grid = "4:14";
  std::int64_t trials = 20000;
  bool compression = false;
};
int cmd_curve(const Common& common, const CurveConfig& cfg, std::ostream& log);

struct ClassifyConfig {
  std::vector<std::string> spec_files;  // increasing truncation
  std::string id;
  std::vector<std::string> params;
  std::string vary;                  // parameter varied along the trend
  std::vector<std::int64_t> values;  // its values
  int se_blocks = 4;
};
int cmd_classify(const Common& common, const ClassifyConfig& cfg, std::ostream& log);

struct ScheduleConfig {
  std::string rate = "n^-1/2";
  int t_max = 4;
  bool blocks = false;  // block design of the block-class example instead of the generic schedule
  std::int64_t n_max = std::int64_t{1} << 40;
};
int cmd_schedule(const Common& common, const ScheduleConfig& cfg, std::ostream& log);

struct ReproduceConfig {
  std::string id;
  std::optional<std::int64_t> trials;
};
int cmd_reproduce(const Common& common, const ReproduceConfig& cfg, std::ostream& log);

struct BundleInfo {
  std::string id;
  std::string title;
  std::vector<std::string> classes;  // catalog ids exercised
};
const std::vector<BundleInfo>& bundles();

// Building blocks shared by the bundles and the acceptance checks.
// (1,0),(2,0),...,(m,0) on thresholds-N, witnessed by Threshold(k) at step k.
Witness threshold_eluder_witness(const ConceptClass& thresholds);
// Strong star-eluder prefix with K blocks on singletons-N centered at all-0 (needs m > K(K+1)/2
// so the all-0 labeled prefix stays realizable).
Witness singleton_star_eluder_witness(const ConceptClass& singletons, int K);
// The 8 even-parity labelings of 4 points.
ConceptClass parity_class();

int run(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace ermrates::cli
