#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

/// Runs the installed binary with the given arguments, merging stderr into
/// the captured output.
CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture_path() {
  return std::string(TEST_DATA_DIR) + "/synthetic_shore.csv";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(CliReliability, PrintsTruncatedTableValueAndExactRatio) {
  const auto lc = run_cli("reliability --model lc --sigma-eps 0.1");
  EXPECT_EQ(lc.exit_code, 0);
  EXPECT_NE(lc.output.find("reliability: 0.80\n"), std::string::npos);
  EXPECT_NE(lc.output.find("exact: 0.8064516129032258"), std::string::npos);

  const auto cc = run_cli("reliability --model cc --lambda-eps 2.54");
  EXPECT_EQ(cc.exit_code, 0);
  EXPECT_NE(cc.output.find("reliability: 0.88\n"), std::string::npos);

  const auto noise_free = run_cli("reliability --model lc --sigma-eps 0");
  EXPECT_EQ(noise_free.exit_code, 0);
  EXPECT_NE(noise_free.output.find("reliability: 1.00\n"), std::string::npos);
}

TEST(CliExitCodes, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli("simulate --model lc --sigma-eps 0.1 --n 50 --x 0.2").exit_code, 2)
      << "adaptive mode without --c0";
  EXPECT_EQ(run_cli("simulate --model lc --lambda-eps 2 --n 50 --x 0.2 --c0 0.4").exit_code,
            2)
      << "--lambda-eps with the linear model";
  EXPECT_EQ(run_cli("simulate --model lc --sigma-eps 0.1 --x 0.2 --c0 0.4").exit_code, 2)
      << "missing required --n";
  EXPECT_EQ(run_cli("simulate --model xx --sigma-eps 0.1 --n 50 --x 0.2 --c0 0.4").exit_code,
            2)
      << "unknown model";
  EXPECT_EQ(run_cli("simulate --model lc --sigma-eps 0.1 --n 50 --x 0.2 --c0 0.4 "
                    "--badflag").exit_code,
            2)
      << "unknown flag";
  EXPECT_EQ(run_cli("estimate --data " + fixture_path() +
                    " --noise laplace:0.1 --c0 0.4 --format both").exit_code,
            2)
      << "--format both without --out";
  EXPECT_EQ(run_cli("estimate --data " + fixture_path() +
                    " --noise laplace:0.1 --mode plugin").exit_code,
            2)
      << "plug-in mode needs declared exponential-decay smoothness";
  EXPECT_EQ(run_cli("estimate --data " + fixture_path() +
                    " --noise gaussian:0.1 --ss gamma=0.005,rho=2 --mode adaptive "
                    "--c0 0.4").exit_code,
            2)
      << "--ss conflicts with adaptive mode";
  EXPECT_EQ(run_cli("").exit_code, 2) << "missing subcommand";
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  const auto version = run_cli("--version");
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_NE(version.output.find("1.0.0"), std::string::npos);
}

TEST(CliExitCodes, DataErrorsExitThree) {
  const auto missing = run_cli("estimate --data /nonexistent/p.csv --noise laplace:0.1 --c0 0.4");
  EXPECT_EQ(missing.exit_code, 3);
  EXPECT_NE(missing.output.find("data error"), std::string::npos);

  const fs::path bad = fs::temp_directory_path() / "circreg_cli_bad.csv";
  {
    std::ofstream out(bad);
    out << "distance,direction_radians\n12,north\n";
  }
  const auto malformed =
      run_cli("estimate --data " + bad.string() + " --noise laplace:0.1 --c0 0.4");
  EXPECT_EQ(malformed.exit_code, 3);
  EXPECT_NE(malformed.output.find("line 2"), std::string::npos);
  fs::remove(bad);
}

TEST(CliSimulate, BenchmarkFlagsProduceByteIdenticalReruns) {
  const fs::path prefix1 = fs::temp_directory_path() / "circreg_cli_sim1";
  const fs::path prefix2 = fs::temp_directory_path() / "circreg_cli_sim2";
  const std::string flags =
      "simulate --model lc --sigma-eps 0.075 --n 200 --x 0.2 --reps 50 --c0 0.4 --seed 1 "
      "--format both --out ";
  ASSERT_EQ(run_cli(flags + prefix1.string()).exit_code, 0);
  ASSERT_EQ(run_cli(flags + prefix2.string()).exit_code, 0);

  const std::string json_text = read_file(prefix1.string() + ".json");
  EXPECT_EQ(json_text, read_file(prefix2.string() + ".json"));
  EXPECT_EQ(read_file(prefix1.string() + ".csv"), read_file(prefix2.string() + ".csv"));

  const auto doc = nlohmann::json::parse(json_text);
  EXPECT_EQ(doc.at("config").at("command"), "simulate");
  EXPECT_EQ(doc.at("config").at("model"), "lc");
  EXPECT_EQ(doc.at("config").at("sigma_eps"), "0.075");
  EXPECT_EQ(doc.at("config").at("tool"), "circreg");
  EXPECT_EQ(doc.at("n"), 200);
  EXPECT_EQ(doc.at("replications"), 50);
  EXPECT_GT(doc.at("mean_error").get<double>(), 0.0);
  EXPECT_LT(doc.at("mean_error").get<double>(), 0.5);
  EXPECT_LE(doc.at("failures").get<int>(), 2);

  for (const auto& prefix : {prefix1, prefix2}) {
    fs::remove(prefix.string() + ".csv");
    fs::remove(prefix.string() + ".json");
  }
}

TEST(CliCalibrate, SinglePointGridYieldsOneRowAndPlateauField) {
  const auto csv = run_cli(
      "calibrate --model cc --lambda-eps 2.54 --n 30 --x 1.5 --reps 3 --grid 0.08 --seed 4");
  ASSERT_EQ(csv.exit_code, 0);
  const auto header = csv.output.find("c0,mean_error,failures\n");
  ASSERT_NE(header, std::string::npos);
  const std::string body = csv.output.substr(header);
  // Header plus exactly one data row.
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 2);
  EXPECT_NE(body.find("\n0.08,"), std::string::npos);

  const auto json = run_cli(
      "calibrate --model cc --lambda-eps 2.54 --n 30 --x 1.5 --reps 3 --grid 0.08 --seed 4 "
      "--format json");
  ASSERT_EQ(json.exit_code, 0);
  const auto doc = nlohmann::json::parse(json.output);
  EXPECT_TRUE(doc.contains("plateau_start_index"));
  ASSERT_EQ(doc.at("points").size(), 1u);
  EXPECT_EQ(doc.at("config").at("grid"), "0.08");
}

TEST(CliEstimate, FitsTheFixtureAndEchoesTheResolvedConfig) {
  const auto result = run_cli(
      "estimate --data " + fixture_path() +
      " --noise laplace:0.1 --c0 0.4 --x-grid 10 60 110 --baselines --format json");
  ASSERT_EQ(result.exit_code, 0);
  const auto doc = nlohmann::json::parse(result.output);
  EXPECT_EQ(doc.at("config").at("noise"), "laplace:0.1");
  EXPECT_EQ(doc.at("config").at("mode"), "adaptive");
  EXPECT_EQ(doc.at("config").at("x_grid"), "10 60 110");
  ASSERT_EQ(doc.at("points").size(), 3u);
  for (const auto& point : doc.at("points")) {
    EXPECT_FALSE(point.at("failed").get<bool>());
    EXPECT_TRUE(point.at("direction").is_number());
    ASSERT_TRUE(point.contains("baselines"));
    EXPECT_TRUE(point.at("baselines").at("fisher_lee").is_number());
  }

  // Without --x-grid the curve spans the data on a 100-point grid.
  const auto full = run_cli("estimate --data " + fixture_path() +
                            " --noise laplace:0.1 --c0 0.4 --format json");
  ASSERT_EQ(full.exit_code, 0);
  const auto full_doc = nlohmann::json::parse(full.output);
  ASSERT_EQ(full_doc.at("points").size(), 100u);
  EXPECT_EQ(full_doc.at("points").front().at("x"), 2.0);
  EXPECT_EQ(full_doc.at("points").back().at("x"), 110.0);
}

TEST(CliEstimate, SupersmoothOverrideSelectsPlugInMode) {
  const auto result = run_cli("estimate --data " + fixture_path() +
                              " --noise gaussian:0.1 --ss gamma=0.005,rho=2 --x-grid 50 "
                              "--format json");
  ASSERT_EQ(result.exit_code, 0);
  const auto doc = nlohmann::json::parse(result.output);
  EXPECT_EQ(doc.at("config").at("mode"), "plugin");
  EXPECT_EQ(doc.at("config").at("ss"), "gamma=0.005,rho=2");

  // The intrinsic gaussian smoothness matches the override up to one ulp in
  // sigma^2/2, so the fits agree to rounding.
  const auto intrinsic = run_cli("estimate --data " + fixture_path() +
                                 " --noise gaussian:0.1 --mode plugin --x-grid 50 "
                                 "--format json");
  ASSERT_EQ(intrinsic.exit_code, 0);
  const auto intrinsic_doc = nlohmann::json::parse(intrinsic.output);
  EXPECT_NEAR(doc.at("points")[0].at("direction").get<double>(),
              intrinsic_doc.at("points")[0].at("direction").get<double>(), 1e-9);
}

}  // namespace
