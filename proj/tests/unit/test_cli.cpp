#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace ermrates;

namespace {

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "ermrates");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream log, err;
  const int rc = cli::run(static_cast<int>(argv.size()), argv.data(), log, err);
  if (out) *out = log.str() + err.str();
  return rc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("ermrates-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, HelpAndBadArguments) {
  EXPECT_EQ(run_cli({"--help"}), 0);
  EXPECT_EQ(run_cli({"nonsense"}), cli::kBadInput);
  EXPECT_EQ(run_cli({"dims", "--class", "no-such-class"}), cli::kBadInput);
  EXPECT_EQ(run_cli({"dims", "--class", "thresholds-N", "--param", "m"}), cli::kBadInput);
  EXPECT_EQ(run_cli({"curve", "--class", "thresholds-N", "--construct", "geometric", "--grid", "x:y"}), cli::kBadInput);
  EXPECT_EQ(run_cli({"dims", "--class-spec", "/nonexistent/spec.json"}), cli::kBadInput);
  EXPECT_EQ(run_cli({"schedule", "--rate", "exp"}), cli::kBadInput);
}

TEST(Cli, ResourceCapIsExitThree) {
  auto out = scratch("cap");
  EXPECT_EQ(run_cli({"dims", "--out", out.string(), "--class", "ex-B8", "--param", "k_max=20"}), cli::kBudgetExhausted);
  EXPECT_EQ(run_cli({"dims", "--out", out.string(), "--class", "ex-B8", "--param", "k_max=6", "--vce-blocks", "4",
                     "--max-nodes", "3"}),
            cli::kBudgetExhausted);
}

TEST(Cli, DimsReport) {
  auto out = scratch("dims");
  ASSERT_EQ(run_cli({"dims", "--out", out.string(), "--class", "singletons-N", "--param", "m=6"}), 0);
  auto j = nlohmann::json::parse(slurp(out / "dims.json"));
  EXPECT_EQ(j["vc"]["value"], 1);
  EXPECT_EQ(j["littlestone"]["value"], 1);
}

TEST(Cli, ClassSpecFile) {
  auto out = scratch("spec");
  fs::create_directories(out);
  std::ofstream(out / "c.json") << R"({"explicit": {"domain": [1, 2, 3], "hypotheses": [[0,0,0],[1,1,0],[0,1,1],[1,0,1]]}})";
  ASSERT_EQ(run_cli({"dims", "--out", out.string(), "--class-spec", (out / "c.json").string()}), 0);
  auto j = nlohmann::json::parse(slurp(out / "dims.json"));
  EXPECT_EQ(j["vc"]["value"], 2);
}

TEST(Cli, CurveIsIdempotentAcrossThreads) {
  auto a = scratch("curve-a"), b = scratch("curve-b");
  std::vector<std::string> base{"curve", "--class", "thresholds-N", "--param", "m=20", "--construct", "geometric",
                                "--grid", "0:6", "--trials", "2000", "--seed", "99"};
  auto with = [&](const fs::path& out, const std::string& threads) {
    auto args = base;
    args.insert(args.end(), {"--out", out.string(), "--threads", threads});
    return run_cli(args);
  };
  ASSERT_EQ(with(a, "1"), 0);
  ASSERT_EQ(with(b, "3"), 0);
  for (auto f : {"curve.csv", "curve.json", "fit.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  ASSERT_EQ(with(b, "1"), 0);
  EXPECT_EQ(slurp(a / "curve.csv"), slurp(b / "curve.csv"));
}

TEST(Cli, ReproduceListAndUnknown) {
  std::string text;
  ASSERT_EQ(run_cli({"reproduce", "--list"}, &text), 0);
  for (const auto& b : cli::bundles()) EXPECT_NE(text.find(b.id), std::string::npos) << b.id;
  EXPECT_EQ(run_cli({"reproduce", "Z.99"}), cli::kBadInput);
}

TEST(Cli, ParseGrid) {
  EXPECT_EQ(cli::parse_grid("2:4"), (std::vector<std::int64_t>{4, 8, 16}));
  EXPECT_EQ(cli::parse_grid("3,5,9"), (std::vector<std::int64_t>{3, 5, 9}));
  EXPECT_THROW(cli::parse_grid("5:2"), std::invalid_argument);
}
