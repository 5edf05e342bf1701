#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "sd/cli.hpp"

using namespace sd;
using sd::cli::json;

namespace {

const std::string kFixtures = SD_FIXTURE_DIR;

cli::RunResult run(std::vector<std::string> args) { return cli::dispatch(args); }

json report(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_NE(r.exit_code, cli::kError) << r.output;
  return json::parse(r.output);
}

struct Process {
  int exit_code;
  std::string out;
};

Process spawn(const std::string& args) {
  const std::string cmd = std::string(SD_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, TreeDepthOfPath) {
  const auto r = report({"td", "--in", kFixtures + "/p4.g6"});
  EXPECT_EQ(r["schema"], "sd-report/1");
  EXPECT_EQ(r["command"], "td");
  ASSERT_EQ(r["results"].size(), 1u);
  EXPECT_EQ(r["results"][0]["value"], 3);
  EXPECT_EQ(r["results"][0]["verified"], true);
  const auto edges = report({"td", "--in", kFixtures + "/p4.edges", "--format", "edges"});
  EXPECT_EQ(edges["results"][0]["value"], 3);
}

TEST(Cli, DualVerifyOnSubcubicFixture) {
  const auto r = run({"dual-verify", "--in", kFixtures + "/subcubic5.g6", "--forbid", kFixtures + "/k3.g6"});
  ASSERT_EQ(r.exit_code, cli::kPass) << r.output;
  const auto j = json::parse(r.output);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["results"].size(), 20u);
  EXPECT_EQ(j["summary"]["forbidden_to_dual"][0], "none");
  EXPECT_EQ(j["summary"]["provenance"]["p"], 3);
  EXPECT_EQ(j["summary"]["provenance"]["forbidden_excluded_by_construction"], true);
}

TEST(Cli, GeneratorInputMatchesFixture) {
  const auto gen = report({"td", "--in", "gen:5", "--connected", "--max-degree", "3", "--min-order", "1"});
  const auto file = report({"td", "--in", kFixtures + "/subcubic5.g6"});
  std::set<std::string> a, b;
  for (const auto& r : gen["results"]) a.insert(to_graph6(canonical_form(parse_graph6(r["graph"]["graph6"].get<std::string>()))));
  for (const auto& r : file["results"]) b.insert(to_graph6(canonical_form(parse_graph6(r["graph"]["graph6"].get<std::string>()))));
  EXPECT_EQ(a, b);
}

TEST(Cli, VerdictFailGivesExitOne) {
  const auto bad = run({"centered-verify", "--in", kFixtures + "/p4.g6", "--p", "3", "--colors", "0,1,0,1"});
  EXPECT_EQ(bad.exit_code, cli::kFail);
  EXPECT_EQ(json::parse(bad.output)["verdict"], "fail");
  const auto good = run({"centered-verify", "--in", kFixtures + "/p4.g6", "--p", "3", "--colors", "1,0,2,1"});
  EXPECT_EQ(good.exit_code, cli::kPass);
  // a triangle is not a valid dual for {K_3}
  const auto dual = run({"dual-verify", "--in", kFixtures + "/subcubic5.g6", "--forbid", kFixtures + "/k3.g6", "--dual",
                         kFixtures + "/k3.g6"});
  EXPECT_EQ(dual.exit_code, cli::kFail);
}

TEST(Cli, ErrorsGiveExitTwo) {
  EXPECT_EQ(run({"td", "--in", kFixtures + "/missing.g6"}).exit_code, cli::kError);
  EXPECT_EQ(run({"frobnicate"}).exit_code, cli::kError);
  EXPECT_EQ(run({"td", "--bogus-flag"}).exit_code, cli::kError);
  EXPECT_EQ(run({"td"}).exit_code, cli::kError);
  EXPECT_EQ(run({"grad", "--in", kFixtures + "/p4.g6", "--rank", "x"}).exit_code, cli::kError);
  EXPECT_EQ(run({"lowtd-find", "--in", kFixtures + "/p4.g6"}).exit_code, cli::kError);
  EXPECT_EQ(run({"td", "--in", "gen:9"}).exit_code, cli::kError);
}

TEST(Cli, EveryCommandRuns) {
  const std::string p4 = kFixtures + "/p4.g6", k3 = kFixtures + "/k3.g6", sub = kFixtures + "/subcubic5.g6";
  const std::vector<std::vector<std::string>> cases{
      {"td", "--in", sub},
      {"grad", "--in", sub, "--rank", "1"},
      {"orient", "--in", sub},
      {"centered-verify", "--in", p4, "--p", "2", "--colors", "0,1,0,1"},
      {"lowtd-find", "--in", sub, "--p", "2"},
      {"power", "--in", kFixtures + "/k3.g6", "--complete", "4", "--p", "2"},
      {"power", "--in", p4, "--template", k3, "--p", "2"},
      {"dual-build", "--in", sub, "--forbid", k3},
      {"dual-verify", "--in", sub, "--forbid", k3, "--jobs", "3"},
      {"exact-power", "--in", sub, "--p", "3", "--kind", "distance"},
      {"experiment-odd-power", "--in", sub, "--p", "3", "--claim-from-dual"},
      {"regular-partition", "--in", p4, "--p", "2", "--colors", "0,1,2,0", "--rep-order", "4"},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    EXPECT_EQ(r.exit_code, cli::kPass) << args[0] << ": " << r.output;
    if (r.exit_code != cli::kError) {
      const auto j = json::parse(r.output);
      for (const char* key : {"schema", "command", "parameters", "results", "summary", "verdict", "provenance"})
        EXPECT_TRUE(j.contains(key)) << args[0] << " lacks " << key;
    }
  }
}

TEST(Cli, ReportsAreDeterministicAndIndependentOfJobs) {
  const std::string sub = kFixtures + "/subcubic5.g6";
  const auto a = run({"lowtd-find", "--in", sub, "--p", "3"});
  const auto b = run({"lowtd-find", "--in", sub, "--p", "3"});
  EXPECT_EQ(a.output, b.output);
  const auto c = run({"grad", "--in", sub, "--rank", "1", "--jobs", "1"});
  const auto d = run({"grad", "--in", sub, "--rank", "1", "--jobs", "4"});
  EXPECT_EQ(c.output, d.output);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "sd_cli_test_report.json";
  std::filesystem::remove(path);
  const auto r = run({"td", "--in", kFixtures + "/p4.g6", "--out", path.string()});
  ASSERT_EQ(r.exit_code, cli::kPass);
  std::ifstream in(path);
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  EXPECT_EQ(text, r.output);
  std::filesystem::remove(path);
}

TEST(Cli, ExhaustiveFlagRefusesHeuristics) {
  const auto path = std::filesystem::temp_directory_path() / "sd_cli_test_long.g6";
  std::ofstream(path) << to_graph6(graphs::path(13)) << "\n";
  EXPECT_EQ(run({"grad", "--in", path.string(), "--rank", "1"}).exit_code, cli::kPass);
  EXPECT_EQ(run({"grad", "--in", path.string(), "--rank", "1", "--exhaustive"}).exit_code, cli::kError);
  std::filesystem::remove(path);
}

TEST(Cli, ExecutableExitCodes) {
  const auto ok = spawn("td --in " + kFixtures + "/p4.g6");
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(json::parse(ok.out)["results"][0]["value"], 3);
  EXPECT_EQ(spawn("td --in " + kFixtures + "/missing.g6").exit_code, 2);
  EXPECT_EQ(spawn("centered-verify --in " + kFixtures + "/p4.g6 --p 3 --colors 0,1,0,1").exit_code, 1);
  EXPECT_EQ(spawn("").exit_code, 2);
}
