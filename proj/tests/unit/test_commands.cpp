#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sealoss/commands.hpp"
#include "sealoss/fit_metrics.hpp"

using namespace sealoss;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(SEALOSS_SOURCE_DIR) / "configs";
const fs::path kData = fs::path(SEALOSS_SOURCE_DIR) / "data";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class Commands : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sealoss_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Commands, CurvesSingleModelTwoPoints) {
  CurvesRequest req;
  req.config = kConfigs / "campaign2.json";
  req.models = {"free_space"};
  req.d_min = 100.0;
  req.d_max = 1000.0;
  req.points = 2;
  req.out = dir_;
  const auto r = cmd_curves(req);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  EXPECT_EQ(line_count(dir_ / "curve_free_space.csv"), 3u);
  for (const auto& a : r.artifacts) EXPECT_TRUE(fs::exists(a));
  const auto doc = nlohmann::json::parse(slurp(dir_ / "curves.json"));
  EXPECT_EQ(doc["config"]["radio"]["tx_power_dbm"], 18.3);
  EXPECT_TRUE(doc["config"]["sea_state"].contains("sigma_h_m"));
}

TEST_F(Commands, CurvesAllFiveModelsRelAboveBullington) {
  const fs::path cfg = dir_ / "with_ld.json";
  auto doc = nlohmann::json::parse(slurp(kConfigs / "campaign2.json"));
  doc["log_distance"] = {{"n", 4.0}, {"l_p0_db", 74.0}, {"d0_m", 100.0}};
  std::ofstream(cfg) << doc.dump();

  CurvesRequest req;
  req.config = cfg;
  req.out = dir_ / "out";
  req.points = 100;
  const auto r = cmd_curves(req);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  EXPECT_EQ(r.artifacts.size(), 6u);
  auto mean = [&](const char* name) {
    std::ifstream in(req.out / name);
    std::string line;
    std::getline(in, line);
    double sum = 0.0;
    int n = 0;
    while (std::getline(in, line)) {
      sum += std::stod(line.substr(line.find(',') + 1));
      ++n;
    }
    return sum / n;
  };
  EXPECT_GT(mean("curve_rel.csv"), mean("curve_bullington.csv"));
}

TEST_F(Commands, CurvesDeterministic) {
  CurvesRequest req;
  req.config = kConfigs / "campaign1.json";
  req.out = dir_ / "a";
  ASSERT_EQ(cmd_curves(req).exit_code, 0);
  req.out = dir_ / "b";
  req.threads = 5;
  ASSERT_EQ(cmd_curves(req).exit_code, 0);
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path();
  }
}

TEST_F(Commands, ExitCodes) {
  CurvesRequest bad;
  bad.config = dir_ / "missing.json";
  bad.out = dir_;
  EXPECT_EQ(cmd_curves(bad).exit_code, kExitConfig);

  CurvesRequest domain;
  domain.config = kConfigs / "campaign2.json";
  domain.models = {"log_distance"};
  domain.out = dir_;
  EXPECT_EQ(cmd_curves(domain).exit_code, kExitModelDomain);

  RangeRequest range;
  range.config = kConfigs / "campaign2.json";
  range.sensitivity = 100.0;
  EXPECT_EQ(cmd_range(range).exit_code, kExitNoCoverage);
  range.sensitivity = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(cmd_range(range).exit_code, kExitConfig);

  const fs::path empty = dir_ / "empty.csv";
  std::ofstream(empty) << "timestamp,lat,lon,rssi_dbm\n";
  AnalyzeRequest an;
  an.config = kConfigs / "campaign2.json";
  an.log = empty;
  an.out = dir_ / "an";
  EXPECT_EQ(cmd_analyze(an).exit_code, kExitNoSamples);
}

TEST_F(Commands, AnalyzeSingleDistanceIsDegenerate) {
  const fs::path log = dir_ / "one.csv";
  std::ofstream(log) << "timestamp,lat,lon,rssi_dbm\n"
                        "2019-08-14T10:00:00Z,55.7200000,12.9560000,-100\n"
                        "2019-08-14T10:00:17Z,55.7200000,12.9560000,-100\n";
  AnalyzeRequest an;
  an.config = kConfigs / "campaign2.json";
  an.log = log;
  an.out = dir_ / "an";
  const auto r = cmd_analyze(an);
  EXPECT_EQ(r.exit_code, kExitNoSamples);
  EXPECT_NE(r.report.find("DegenerateFit"), std::string::npos);
}

TEST_F(Commands, RangeFreeSpaceInversionAndSixDb) {
  RangeRequest req;
  req.config = kConfigs / "campaign2.json";
  req.models = {"free_space"};
  req.cap = 1e9;
  req.out = dir_;
  ASSERT_EQ(cmd_range(req).exit_code, 0);
  const auto a = nlohmann::json::parse(slurp(dir_ / "range.json"));
  const double lam = 299'792'458.0 / 869.5e6;
  const double expect = lam / (4.0 * std::acos(-1.0)) * std::pow(10.0, 162.3 / 20.0);
  EXPECT_NEAR(a["models"][0]["max_range_m"].get<double>() / expect, 1.0, 1e-8);

  req.sensitivity = -138.0 - 20.0 * std::log10(2.0);
  ASSERT_EQ(cmd_range(req).exit_code, 0);
  const auto b = nlohmann::json::parse(slurp(dir_ / "range.json"));
  EXPECT_NEAR(b["models"][0]["max_range_m"].get<double>() /
                  a["models"][0]["max_range_m"].get<double>(),
              2.0, 1e-7);
}

TEST_F(Commands, SynthThenAnalyzeRecoversGenerator) {
  const fs::path cfg = dir_ / "ld.json";
  auto doc = nlohmann::json::parse(slurp(kConfigs / "campaign2.json"));
  doc["log_distance"] = {{"n", 4.0}, {"l_p0_db", 72.0}, {"d0_m", 100.0}};
  std::ofstream(cfg) << doc.dump();

  SynthRequest s;
  s.config = cfg;
  s.model = "log_distance";
  s.samples = 325;
  s.noise_sigma = 2.0;
  s.seed = 11;
  s.out = dir_ / "log.csv";
  ASSERT_EQ(cmd_synth(s).exit_code, 0);

  AnalyzeRequest an;
  an.config = cfg;
  an.log = s.out;
  an.out = dir_ / "an";
  const auto r = cmd_analyze(an);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  const auto fit = nlohmann::json::parse(slurp(an.out / "fit.json"));
  const double n = fit["log_distance"]["n"].get<double>();
  const double se = fit["n_standard_error"].get<double>();
  EXPECT_NEAR(n, 4.0, 3.0 * se);
  EXPECT_NEAR(n, 4.0, 0.1);

  // Report rows come sorted by RMSE.
  std::ifstream in(an.out / "report.csv");
  std::string line;
  std::getline(in, line);
  double prev = -1.0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string id;
    std::string rmse;
    std::getline(ss, id, ',');
    std::getline(ss, rmse, ',');
    EXPECT_GE(std::stod(rmse), prev);
    prev = std::stod(rmse);
  }
}

TEST_F(Commands, AnalyzeShippedCampaignDeterministic) {
  AnalyzeRequest an;
  an.config = kConfigs / "campaign2.json";
  an.log = kData / "campaign2_synthetic.csv";
  an.calibration = kData / "calibration_identity.csv";
  an.out = dir_ / "one";
  const auto first = cmd_analyze(an);
  ASSERT_EQ(first.exit_code, 0) << first.report;
  an.out = dir_ / "two";
  an.threads = 8;
  ASSERT_EQ(cmd_analyze(an).exit_code, 0);
  for (const auto& a : first.artifacts) {
    EXPECT_EQ(slurp(a), slurp(dir_ / "two" / a.filename())) << a;
  }
}

TEST(ResolveConfig, EnvironmentFallback) {
  const std::string path = (kConfigs / "campaign1.json").string();
  ::setenv(kConfigEnvVar, path.c_str(), 1);
  EXPECT_EQ(resolve_config(std::nullopt).name, "campaign1");
  ::unsetenv(kConfigEnvVar);
  EXPECT_EQ(resolve_config(std::nullopt).name, "default");
}

TEST(ModelList, ParsesCommaSeparated) {
  EXPECT_EQ(parse_model_list({}).size(), 5u);
  EXPECT_EQ(parse_model_list({"rel,itu", "rel"}).size(), 2u);
  EXPECT_THROW(parse_model_list({"nope"}), Error);
}
