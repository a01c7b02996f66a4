#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "halfline_cli/commands.hpp"
#include "halfline_cli/reproduce.hpp"

using namespace halfline::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("halfline_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_tool(const std::string& args) {
  std::string cmd = std::string(HALFLINE_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& name, const nlohmann::json& j) {
  fs::path p = dir / name;
  std::ofstream(p) << j.dump();
  return p;
}

const nlohmann::json kThreePeriodic = {{"kind", "periodic"}, {"word", {"1/2", 2, "1/2"}}};

}  // namespace

TEST(Reproductions, AllPass) {
  EXPECT_TRUE(three_periodic_singular_half_line().passed());
  EXPECT_TRUE(eventually_periodic_kernel().passed());
  EXPECT_TRUE(fibonacci_prefix(2000).passed());
  EXPECT_TRUE(integer_avoidance(3, 50).passed());
}

TEST(Reproductions, SubstitutionWordPrefix) {
  EXPECT_EQ(fibonacci_substitution_word(5), (std::vector<int>{1, 0, 1, 1, 0}));
}

TEST(Commands, BandsIsByteDeterministic) {
  fs::path a = scratch("bands_a"), b = scratch("bands_b");
  ExperimentConfig cfg;
  cfg.command = "bands";
  cfg.potential = kThreePeriodic;
  cfg.sizes = {30, 60, 90};
  cfg.out = a;
  ASSERT_EQ(run_command(cfg).exit_code, kPass);
  cfg.out = b;
  ASSERT_EQ(run_command(cfg).exit_code, kPass);
  for (const char* f : {"bands.json", "dirichlet.json", "bands.csv", "pollution.json", "pollution.csv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    EXPECT_FALSE(slurp(a / f).empty()) << f;
  }
  auto j = nlohmann::json::parse(slurp(a / "bands.json"));
  EXPECT_EQ(j["period"], 3);
}

TEST(Commands, UsageErrors) {
  ExperimentConfig cfg;
  cfg.command = "bands";
  cfg.out = scratch("usage");
  EXPECT_EQ(run_command(cfg).exit_code, kUsage);
  cfg.potential = nlohmann::json{{"kind", "sturmian"}};
  EXPECT_EQ(run_command(cfg).exit_code, kUsage);
  cfg.command = "nonsense";
  EXPECT_EQ(run_command(cfg).exit_code, kUsage);
  ExperimentConfig rep;
  rep.command = "reproduce";
  rep.name = "no-such-reproduction";
  rep.out = cfg.out;
  EXPECT_EQ(run_command(rep).exit_code, kUsage);
}

TEST(Commands, FsmExpectationsAndExploratory) {
  fs::path dir = scratch("fsm");
  ExperimentConfig cfg;
  cfg.command = "fsm";
  cfg.potential = kThreePeriodic;
  cfg.z = "0";
  cfg.scheme = nlohmann::json::parse(
      R"({"side":"half_line","rows":25,"cutoffs":{"right":{"kind":"arithmetic","start":2,"step":3}}})");
  cfg.out = dir;
  cfg.expect = "failure_observed";
  EXPECT_EQ(run_command(cfg).exit_code, kPass);
  cfg.expect = "applicable_observed";
  EXPECT_EQ(run_command(cfg).exit_code, kCheckFailed);
  cfg.exploratory = true;
  EXPECT_EQ(run_command(cfg).exit_code, kPass);
  EXPECT_TRUE(fs::exists(dir / "fsm_report.json"));
  EXPECT_TRUE(fs::exists(dir / "stability.csv"));
}

TEST(Tool, ExitCodes) {
  fs::path dir = scratch("tool");
  nlohmann::json fsm = {
      {"potential", {{"kind", "periodic"}, {"word", {4}}}},
      {"z", 0},
      {"scheme", nlohmann::json::parse(R"({"side":"full_line","rows":20,"cutoffs":{
          "left":{"kind":"arithmetic","start":-5,"step":-7},
          "right":{"kind":"arithmetic","start":5,"step":9}}})")}};
  fs::path cfg = write_config(dir, "fsm.json", fsm);
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(run_tool("fsm --config " + cfg.string() + out + " --expect applicable_observed"), 0);
  EXPECT_EQ(run_tool("fsm --config " + cfg.string() + out + " --expect failure_observed"), 1);
  EXPECT_EQ(run_tool("fsm" + out), 2);
  EXPECT_EQ(run_tool("frobnicate"), 2);
  EXPECT_EQ(run_tool("fsm --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_tool("reproduce --name example-4-1" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "example-4-1.json"));
}

TEST(Tool, SeedOverrideIsDeterministic) {
  fs::path a = scratch("seed_a"), b = scratch("seed_b");
  EXPECT_EQ(run_tool("reproduce --name integer-avoidance --seed 9 --out " + a.string()), 0);
  EXPECT_EQ(run_tool("reproduce --name integer-avoidance --seed 9 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "integer-avoidance.json"), slurp(b / "integer-avoidance.json"));
}

TEST(Commands, BandsDocumentedWords) {
  struct Case {
    nlohmann::json word;
    std::size_t bands;
    double lo, hi;
    std::size_t eigenvalues;
  };
  const std::vector<Case> cases = {{{4}, 1, 2.0, 6.0, 0}, {{0}, 1, -2.0, 2.0, 0}};
  for (const auto& c : cases) {
    fs::path dir = scratch("bands_word");
    ExperimentConfig cfg;
    cfg.command = "bands";
    cfg.potential = nlohmann::json{{"kind", "periodic"}, {"word", c.word}};
    cfg.out = dir;
    ASSERT_EQ(run_command(cfg).exit_code, kPass);
    auto b = nlohmann::json::parse(slurp(dir / "bands.json"));
    auto d = nlohmann::json::parse(slurp(dir / "dirichlet.json"));
    ASSERT_EQ(b["bands"].size(), c.bands);
    EXPECT_EQ(b["bands"][0]["lo"].get<double>(), c.lo);
    EXPECT_EQ(b["bands"][0]["hi"].get<double>(), c.hi);
    EXPECT_EQ(d["eigenvalues"].size(), c.eigenvalues);
  }
  fs::path dir = scratch("bands_three");
  ExperimentConfig cfg;
  cfg.command = "bands";
  cfg.potential = kThreePeriodic;
  cfg.out = dir;
  ASSERT_EQ(run_command(cfg).exit_code, kPass);
  auto b = nlohmann::json::parse(slurp(dir / "bands.json"));
  auto d = nlohmann::json::parse(slurp(dir / "dirichlet.json"));
  EXPECT_EQ(b["bands"].size(), 3u);
  bool zero = false;
  for (const auto& e : d["eigenvalues"]) zero = zero || e["value"].get<double>() == 0.0;
  EXPECT_TRUE(zero);
}
