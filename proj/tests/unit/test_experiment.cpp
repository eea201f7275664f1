#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "graphsync/config.hpp"
#include "graphsync/errors.hpp"
#include "graphsync/experiment.hpp"

namespace gs = graphsync;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("graphsync_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  for (const auto& target : gs::reproduce_targets()) {
    const auto cfg = gs::reproduce_config(target);
    const auto js = gs::config_to_json(cfg);
    EXPECT_EQ(gs::config_to_json(gs::config_from_json(js)), js) << target;
  }
}

TEST(Config, Rejections) {
  EXPECT_THROW(gs::config_from_json(nlohmann::json::parse(R"({"dynamics": "third_order"})")), gs::Error);
  EXPECT_THROW(gs::reproduce_config("fig99"), gs::Error);
}

TEST(Reproduce, TargetList) {
  const std::vector<std::string> want = {"fig1", "fig2", "fig3", "ex4.1", "ex4.2", "ex4.3", "fig7", "fig8"};
  EXPECT_EQ(gs::reproduce_targets(), want);
}

TEST(Experiment, LatticeLimit) {
  const auto res = gs::evaluate_experiment(gs::reproduce_config("ex4.2"));
  EXPECT_TRUE(res.passed);
  const auto limit = res.summary.at("limit").get<std::vector<double>>();
  const std::vector<double> want = {0.5274, 0, 0, 0.1958, 0, 0.2768};
  for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(limit[j], want[j], 1e-3);
  EXPECT_EQ(res.summary.at("schema").get<int>(), 1);
}

TEST(Experiment, Fig7Synchronizes) {
  const auto res = gs::evaluate_experiment(gs::reproduce_config("fig7"));
  EXPECT_TRUE(res.passed);
  const auto rho = res.trajectory.final_density();
  EXPECT_EQ(std::count_if(rho.begin(), rho.end(), [](double v) { return v > 0.99; }), 1);
}

TEST(Experiment, Fig1LogGapFit) {
  const auto res = gs::evaluate_experiment(gs::reproduce_config("fig1"));
  EXPECT_TRUE(res.passed);
  const auto& fit = res.summary.at("fits").at(0);
  EXPECT_EQ(fit.at("transform").get<std::string>(), "log_gap");
  EXPECT_GT(fit.at("r_squared").get<double>(), 0.999);
  EXPECT_LT(fit.at("slope").get<double>(), 0.0);
}

TEST(Experiment, WritesDeterministicArtifacts) {
  auto cfg = gs::reproduce_config("ex4.3");
  cfg.integrator.t_final = 50.0;
  cfg.checks = {};
  const auto a = scratch("a");
  const auto b = scratch("b");
  gs::run_experiment(cfg, a);
  gs::run_experiment(cfg, b);
  ASSERT_TRUE(fs::exists(a / "trajectory.csv"));
  ASSERT_TRUE(fs::exists(a / "summary.json"));
  EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
  EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
  const auto csv = slurp(a / "trajectory.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,rho_1,rho_2,rho_3,rho_4,rho_5,rho_6,sum_sq,max_gap");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Experiment, FailedCheckIsReported) {
  auto cfg = gs::reproduce_config("ex4.1");
  cfg.integrator.t_final = 5.0;
  const auto res = gs::evaluate_experiment(cfg);
  EXPECT_FALSE(res.passed);
  EXPECT_FALSE(res.failures.empty());
  EXPECT_FALSE(res.summary.at("checks").at("passed").get<bool>());
}

TEST(Experiment, ReproduceWritesPerTargetDirectories) {
  const auto root = scratch("reproduce");
  const auto results = gs::reproduce({"ex4.1", "fig2"}, root);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].name, "ex4.1");
  EXPECT_EQ(results[1].name, "fig2");
  EXPECT_TRUE(fs::exists(root / "ex4.1" / "summary.json"));
  EXPECT_TRUE(fs::exists(root / "fig2" / "trajectory.csv"));
  for (const auto& r : results) EXPECT_TRUE(r.passed);
  fs::remove_all(root);
}
