#include <unistd.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rescon_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string data(const std::string& name) { return std::string(RESCON_DATA_DIR) + "/" + name; }

Result run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd =
      std::string("\"") + RESCON_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

TEST(Cli, SimulateNominalReachesConsensus) {
  const auto r = run("simulate --scenario " + data("p2_nominal.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j["consensus_error"].get<double>(), 1e-6);
  EXPECT_NEAR(j["agreement_value"].get<double>(), 0.5, 1e-6);
  EXPECT_TRUE(j["sup_x_tilde"].is_null());
}

TEST(Cli, SimulateAdaptiveRecoversDisturbance) {
  const auto r = run("simulate --scenario " + data("p2_adaptive.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j["w_hat_error_inf"].get<double>(), 1e-4);
  EXPECT_TRUE(j["bound_holds"].get<bool>());
  EXPECT_TRUE(j["stability_verdict"].get<bool>());
  EXPECT_NE(r.err.find("consensus"), std::string::npos);
}

TEST(Cli, SimulateThenAnalyzeIsByteIdentical) {
  const std::string csv = (scratch() / "k3.csv").string();
  const std::string report = (scratch() / "k3.json").string();
  const auto sim = run("simulate --scenario " + data("k3_adaptive.json") + " --out " + csv + " --report " + report);
  ASSERT_EQ(sim.code, 0) << sim.err;
  const auto ana = run("analyze --scenario " + data("k3_adaptive.json") + " --trajectory " + csv);
  ASSERT_EQ(ana.code, 0) << ana.err;
  EXPECT_EQ(sim.out, ana.out);
  EXPECT_EQ(slurp(report), sim.out);
}

TEST(Cli, AnalyzeTruncatedTrajectory) {
  const std::string csv = (scratch() / "p2.csv").string();
  ASSERT_EQ(run("simulate --scenario " + data("p2_nominal.json") + " --out " + csv).code, 0);
  std::string text = slurp(csv);
  text.resize(text.size() / 2);
  text.erase(text.rfind('\n') + 1);
  std::ofstream(csv, std::ios::binary) << text;
  const auto r = run("analyze --scenario " + data("p2_nominal.json") + " --trajectory " + csv);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("p2.csv"), std::string::npos) << r.err;
}

TEST(Cli, AnalyzeFlagsNominalDisagreement) {
  const std::string csv = (scratch() / "nd.csv").string();
  ASSERT_EQ(run("simulate --scenario " + data("p2_nominal_disturbed.json") + " --out " + csv).code, 0);
  const auto r = run("analyze --scenario " + data("p2_nominal_disturbed.json") + " --trajectory " + csv);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["consensus_reached"].get<bool>());
  EXPECT_NEAR(j["consensus_error"].get<double>(), 1.0, 1e-6);
}

TEST(Cli, MalformedEdgeListNamesLine) {
  const auto r = run("simulate --graph " + data("malformed.edges") + " --scenario " + data("p2_nominal.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("malformed.edges:3:"), std::string::npos) << r.err;
}

TEST(Cli, NumericalBlowUp) {
  const auto r = run("simulate --scenario " + data("k3_adaptive.json") + " --dt 2 --t-final 2000");
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_NE(r.err.find("non-finite"), std::string::npos) << r.err;
}

TEST(Cli, VerifyTwoNodes) {
  const auto r = run("verify --graph " + data("path2.edges") + " --alpha 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["verdict"].get<bool>());
  EXPECT_NEAR(j["spectral_abscissa"].get<double>(), -0.5, 1e-12);
}

TEST(Cli, VerifyCompleteGraphLargeGain) {
  const auto r = run("verify --graph " + data("k3.edges") + " --alpha 10");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["verdict"].get<bool>());
}

TEST(Cli, VerifyDisconnected) {
  const auto r = run("verify --graph " + data("disconnected.edges") + " --alpha 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("graph not connected"), std::string::npos) << r.err;
}

TEST(Cli, VerifyImpossibleToleranceFails) {
  // abscissa is -0.5, so demanding abscissa < -1 cannot hold.
  const auto r = run("verify --graph " + data("path2.edges") + " --alpha 1 --tol 1");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, VerifyRandomGraphsIsSeeded) {
  const auto a = run("verify --random-graphs 4 --seed 7");
  const auto b = run("verify --random-graphs 4 --seed 7");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.err.find("seed: 7"), std::string::npos);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).size(), 12u);
}

TEST(Cli, SweepBoundColumn) {
  const auto r = run("sweep --scenario " + data("p2_adaptive.json") + " --alpha 16,1,4 --t-final 30");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "alpha,sup_x_tilde,bound,bound_holds,centroid_drift,decay_rate");
  const double expected_alpha[] = {1, 4, 16}, expected_bound[] = {1, 0.5, 0.25};
  for (int k = 0; k < 3; ++k) {
    ASSERT_TRUE(std::getline(in, line));
    std::vector<std::string> cells;
    std::stringstream s(line);
    for (std::string c; std::getline(s, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 5u) << line;
    EXPECT_EQ(std::stod(cells[0]), expected_alpha[k]);
    EXPECT_EQ(std::stod(cells[2]), expected_bound[k]);
    EXPECT_LE(std::stod(cells[1]), std::stod(cells[2]) + 1e-9);
    EXPECT_EQ(cells[3], "true");
  }
}

TEST(Cli, SweepEmptyAlphaList) {
  EXPECT_EQ(run("sweep --scenario " + data("p2_adaptive.json")).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("simulate").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("simulate --scenario /nonexistent.json").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
