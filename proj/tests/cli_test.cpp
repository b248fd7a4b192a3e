#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "nfold/io.hpp"
#include "support/process.hpp"

namespace nfold {
namespace {

using testing::run_command;

const std::string kCli = NFOLD_CLI_PATH;
const std::string kSamples = NFOLD_SAMPLES_DIR;
const std::string kGolden = NFOLD_GOLDEN_DIR;

testing::RunResult cli(const std::string& args) { return run_command("cd '" + kSamples + "' && '" + kCli + "' " + args); }

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("nfold_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

class Golden : public ::testing::TestWithParam<testing::GoldenCase> {};

TEST_P(Golden, MatchesFileAndRepeats) {
  const auto& c = GetParam();
  auto first = run_command(testing::golden_command(kCli, kSamples, c));
  auto second = run_command(testing::golden_command(kCli, kSamples, c));
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out, testing::slurp(kGolden + "/" + c.name + ".json"));
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(testing::kGoldenCases),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Cli, SolveToy) {
  auto r = cli("solve toy.json");
  ASSERT_EQ(r.exit_code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_EQ(doc["objective"], 6);
}

TEST(Cli, InfeasibleIsSuccess) {
  auto r = cli("solve toy_infeasible.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "infeasible");
}

TEST(Cli, OutputRoundTripsThroughFeasibility) {
  for (const char* file : {"toy.json", "mixed.json"}) {
    auto r = cli(std::string("solve ") + file);
    ASSERT_EQ(r.exit_code, 0);
    auto x = io::parse_result_x(r.out);
    ASSERT_TRUE(x);
    auto inst = io::load_instance(kSamples + "/" + file);
    EXPECT_TRUE(check_feasible(inst, *x)) << file;
    EXPECT_EQ(objective_value(inst, *x), nlohmann::json::parse(r.out)["objective"].get<Int>());
  }
}

TEST(Cli, StatsArePrinted) {
  auto r = cli("solve toy.json --stats");
  ASSERT_EQ(r.exit_code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["stats"]["layers"], 3);
  EXPECT_LE(doc["stats"]["vertices"].get<int>(), 25);
}

TEST(Cli, MalformedInputExitsTwo) {
  auto bad = write_temp("bad.json", "{ not json");
  EXPECT_EQ(cli("solve '" + bad + "'").exit_code, 2);
  auto invalid = write_temp("invalid.json",
                            R"({"n": 1, "t": 2, "r": 1, "blocks": [[[1, 0]]], "b_top": [1], "b_local": [-1], "cost": [[5, 1]]})");
  EXPECT_EQ(cli("solve '" + invalid + "'").exit_code, 2);
  EXPECT_EQ(cli("solve /nonexistent/file.json").exit_code, 2);
  auto matrix = write_temp("matrix.txt", "012\n");
  EXPECT_EQ(cli("lobbying '" + matrix + "' --k 1").exit_code, 2);
  EXPECT_EQ(cli("eqcolor star_k13.txt --colors 2 --cover a").exit_code, 2);
}

TEST(Cli, OracleBudgetExitsThree) {
  auto big = write_temp("big.json",
                        R"({"n": 1, "t": 3, "r": 0, "blocks": [[]], "b_top": [], "b_local": [10], "cost": [[1, 2, 3]]})");
  EXPECT_EQ(run_command("NFOLD_ENUM_BUDGET=10 '" + kCli + "' oracle '" + big + "'").exit_code, 3);
  EXPECT_EQ(run_command("NFOLD_ENUM_BUDGET=10 '" + kCli + "' solve --oracle '" + big + "'").exit_code, 3);
  EXPECT_EQ(run_command("NFOLD_ENUM_BUDGET=100 '" + kCli + "' oracle '" + big + "'").exit_code, 0);
}

TEST(Cli, OverflowExitsFour) {
  auto huge = write_temp("huge.json", R"({"n": 1, "t": 1, "r": 0, "blocks": [[]], "b_top": [], "b_local": [3],
                                          "cost": [[4611686018427387904]]})");
  EXPECT_EQ(cli("solve '" + huge + "'").exit_code, 4);
}

TEST(Cli, DomainAnswers) {
  EXPECT_EQ(nlohmann::json::parse(cli("lobbying lobbying_3x2.txt --k 1").out)["answer"], "yes");
  EXPECT_EQ(nlohmann::json::parse(cli("eqcolor star_k13.txt --colors 2 --cover center").out)["answer"], "no");
  auto strings = nlohmann::json::parse(cli("closest-string two_strings.txt --d 1").out);
  EXPECT_EQ(strings["status"], "found");
  EXPECT_EQ(strings["output"].get<std::string>().size(), 2u);
}

}  // namespace
}  // namespace nfold
