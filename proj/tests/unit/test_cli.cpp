#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "ramanecho/cli.hpp"
#include "ramanecho/io/csv.hpp"

using namespace ramanecho;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ramanecho");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("ramanecho_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

const std::string scenarios = RAMANECHO_SCENARIO_DIR;

}  // namespace

TEST_F(Cli, ScenarioFig1Csv) {
  const auto r = run({"scenario", "fig1", "--csv", "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(dir / "fig1.csv"));
  EXPECT_EQ(io::read_csv(dir / "fig1.csv").rows.size(), run_scenario(scenario_fig1()).size());
  EXPECT_NE(r.out.find("D "), std::string::npos);
}

TEST_F(Cli, DeterministicBytes) {
  ASSERT_EQ(run({"scenario", "fig1", "--csv", "--seedless", "--out-dir", (dir / "a").string()}).code, 0);
  ASSERT_EQ(run({"--threads", "1", "scenario", "fig1", "--csv", "--out-dir", (dir / "b").string()}).code, 0);
  std::ifstream a(dir / "a" / "fig1.csv"), b(dir / "b" / "fig1.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Cli, RunFileWithSvgAndPerGroup) {
  const auto r = run({"run", scenarios + "/fig4.yaml", "--svg", "--csv", "--per-group", "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fig4.svg"));
  EXPECT_EQ(io::read_csv(dir / "fig4.csv").header.size(), 8u + 7u * 121u);
}

TEST_F(Cli, RunMissingFile) {
  const auto r = run({"run", (dir / "missing.file").string(), "--csv", "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(fs::exists(dir));
}

TEST_F(Cli, InvalidFileExitCode) {
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "bad.yaml");
    f << "name: bad\nsystem: {Gamma31: 1 furlong}\n";
  }
  const auto r = run({"run", (dir / "bad.yaml").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(CliUsage, UnknownSubcommand) {
  const auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"scenario"}).code, 1);
}

TEST(CliUsage, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST(CliUsage, UnknownScenarioIsValidation) { EXPECT_EQ(run({"scenario", "fig9"}).code, 2); }

TEST(CliSweep, AreaTable) {
  const auto r = run({"--threads", "1", "sweep", "--areas", "2pi,1.8pi,1.6pi,1.2pi,1pi"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  std::vector<double> rel;
  double area, rp, rc, t, eff, relative;
  while (in >> area >> rp >> rc >> t >> eff >> relative) rel.push_back(relative);
  ASSERT_EQ(rel.size(), 5u);
  const double expected[] = {1.0, 0.91, 0.77, 0.41, 0.27};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(rel[i], expected[i], 0.10) << i;
}

TEST(CliSweep, BadInput) {
  EXPECT_EQ(run({"sweep", "--areas", "2 parsecs"}).code, 2);
  EXPECT_EQ(run({"sweep", "--ratios", "30-40"}).code, 2);
}

TEST(CliChannels, CountAndFile) {
  auto r = run({"channels", "--delta-opt", "4 GHz", "--omega", "4 MHz"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("channels: 1000"), std::string::npos);
  EXPECT_EQ(run({"channels", "--delta-opt", "1 MHz", "--omega", "4 MHz"}).code, 2);
  EXPECT_EQ(run({"channels"}).code, 2);
  r = run({"channels", scenarios + "/channels.yaml"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("channels: 3"), std::string::npos);
  EXPECT_EQ(run({"channels", scenarios + "/fig1.yaml"}).code, 2);
}

TEST(CliEcho, Echo2AndAlias) {
  const auto r = run({"echo2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2pi / pi"), std::string::npos);
  EXPECT_EQ(run({"scenario", "fig5"}).code, 0);
  EXPECT_EQ(run({"echo2", "--gamma-opt", "25"}).code, 2);
}

TEST(CliCheck, PropertySuitePasses) {
  const auto r = run({"check"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
