#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qma/cli.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  Outcome o;
  o.code = qma::cli::run(std::move(args), out, err, in);
  o.out = out.str();
  o.err = err.str();
  return o;
}

qma::Json parse(const std::string& s) { return qma::Json::parse(s); }

const char* kSampleMatrix = R"({"dim": 2, "entries": [[[2,0,0,0],[1,1,0,0]],[[1,-1,0,0],[3,0,0,0]]]})";

TEST(Cli, ConstantsReport) {
  const auto o = run({"constants", "--p", "2", "--n", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o.out);
  EXPECT_EQ(j["alpha"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["d_p"].get<double>(), 4.0);
  EXPECT_NEAR(j["f_p2n"].get<double>(), -1.0 / 12.0, 1e-12);
  EXPECT_TRUE(j.contains("f_pn"));
}

TEST(Cli, RealsUseSeventeenDigits) {
  const auto o = run({"constants", "--p", "2", "--n", "1"});
  EXPECT_NE(o.out.find("\"alpha\": 1,"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("-0.08333333333333"), std::string::npos) << o.out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"constants", "--p", "-1", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"constants", "--p", "0", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"constants", "--p", "nan", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"constants", "--p", "2"}).code, 2);
  EXPECT_EQ(run({"constants", "--p", "2", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto o = run({"energy", "--p", "1", "--n", "2", "--a0", "1", "--ai", "1"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("--ai"), std::string::npos);
  EXPECT_EQ(run({"energy", "--p", "1", "--n", "1", "--a0", "1", "--ai", "1", "--method", "fast"}).code, 2);
  EXPECT_EQ(run({"ratio-scan", "--p", "2", "--n", "1", "--amin", "3", "--amax", "1"}).code, 2);
}

TEST(Cli, InvalidPErrorNamesTheFlag) {
  const auto o = run({"counterexample", "--p", "-2", "--n", "1"});
  EXPECT_EQ(o.code, 2);
  EXPECT_TRUE(o.out.empty());
  EXPECT_NE(o.err.find("--p"), std::string::npos) << o.err;
}

TEST(Cli, HelpExitsZero) {
  const auto o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("counterexample"), std::string::npos);
}

TEST(Cli, MooreDetFromStdinAndFile) {
  const auto o = run({"moore-det", "--matrix", "-"}, kSampleMatrix);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(parse(o.out)["moore_det"].get<double>(), 4.0, 1e-12);
  EXPECT_EQ(parse(o.out)["dim"].get<int>(), 2);

  const auto path = std::filesystem::temp_directory_path() / "qma_test_matrix.json";
  std::ofstream(path) << kSampleMatrix;
  const auto f = run({"moore-det", "--matrix", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.out, o.out);
}

TEST(Cli, MooreDetRejectsBadInput) {
  EXPECT_EQ(run({"moore-det", "--matrix", "-"}, "{not json").code, 2);
  EXPECT_EQ(run({"moore-det", "--matrix", "-"}, R"({"dim": 1, "entries": [[[1,2,0,0]]]})").code, 2);
  EXPECT_EQ(run({"moore-det", "--matrix", "-"}, R"({"dim": 2, "entries": [[[1,0,0,0]]]})").code, 2);
  EXPECT_EQ(run({"moore-det", "--matrix", "/nonexistent/matrix.json"}).code, 2);
}

TEST(Cli, DensityCheck) {
  const auto o = run({"density-check", "--a", "2", "--n", "2", "--samples", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o.out);
  EXPECT_LE(j["max_rel_err"].get<double>(), 1e-4);
  EXPECT_LE(j["max_hh_residual"].get<double>(), 1e-6);
  EXPECT_EQ(j["points_tested"].get<int>(), 5);
}

TEST(Cli, DensityCheckFailsWithCoarseStep) {
  const auto o = run({"density-check", "--a", "3", "--n", "1", "--samples", "5", "--h", "0.05"});
  EXPECT_EQ(o.code, 1);
  EXPECT_GT(parse(o.out)["max_rel_err"].get<double>(), 1e-4);
}

TEST(Cli, EnergyMethods) {
  const auto both = run({"energy", "--p", "1", "--n", "1", "--a0", "1", "--ai", "1"});
  ASSERT_EQ(both.code, 0) << both.err;
  const auto j = parse(both.out);
  EXPECT_NEAR(j["value"].get<double>(), 1.6449340668482264, 1e-12);
  EXPECT_EQ(j["method"].get<std::string>(), "both");
  EXPECT_LE(j["discrepancy"].get<double>(), 1e-8);

  const auto quad = run({"energy", "--p", "1", "--n", "2", "--a0", "1", "--ai", "0.5,2", "--method", "quad"});
  ASSERT_EQ(quad.code, 0) << quad.err;
  EXPECT_TRUE(parse(quad.out)["discrepancy"].is_null());

  EXPECT_EQ(run({"energy", "--p", "1", "--n", "2", "--a0", "1", "--ai", "0.5,2", "--method", "closed"}).code, 2);
}

TEST(Cli, RatioScanCsv) {
  const auto o = run({"ratio-scan", "--p", "2", "--n", "1", "--grid", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "a,b,R");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 16);
  EXPECT_EQ(o.out.find("0.10000000000000001,0.10000000000000001,1\n"), 6u);
}

TEST(Cli, RatioScanToFile) {
  const auto path = std::filesystem::temp_directory_path() / "qma_test_scan.csv";
  const auto o = run({"ratio-scan", "--p", "2", "--n", "1", "--grid", "8", "--out", path.string(), "--threads", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream file(path);
  std::stringstream content;
  content << file.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(content.str(), run({"ratio-scan", "--p", "2", "--n", "1", "--grid", "8"}).out);
  EXPECT_EQ(parse(o.out)["points"].get<int>(), 64);
}

TEST(Cli, CounterexampleCertificates) {
  const auto o = run({"counterexample", "--p", "2", "--n", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o.out);
  EXPECT_TRUE(j["violation"].get<bool>());
  EXPECT_GE(j["ratio"].get<double>(), 1.0243);
  for (const char* key : {"p", "n", "a_star", "b_star", "ratio", "f_value", "quad_crosscheck", "error_bound"})
    EXPECT_TRUE(j.contains(key)) << key;

  const auto sharp = run({"counterexample", "--p", "1", "--n", "1"});
  ASSERT_EQ(sharp.code, 0) << sharp.err;
  EXPECT_FALSE(parse(sharp.out)["violation"].get<bool>());
  EXPECT_LE(parse(sharp.out)["ratio"].get<double>(), 1.0 + 1e-6);
}

TEST(Cli, CounterexampleFailureExitsOne) {
  const auto o = run({"counterexample", "--p", "2", "--n", "1", "--grid", "2", "--amin", "1", "--amax", "1.000000000001"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("find_violation"), std::string::npos);
}

TEST(Cli, FTable) {
  const auto o = run({"lemma-f", "--n-max", "3", "--p-list", "1,2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = parse(o.out)["rows"];
  ASSERT_EQ(rows.size(), 6u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(rows[static_cast<std::size_t>(i)]["f"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(rows[4]["f"].get<double>(), -1.0 / 12.0, 1e-12);
  EXPECT_EQ(rows[4]["n"].get<int>(), 2);
}

TEST(Cli, OutputIsByteDeterministic) {
  const std::vector<std::string> args = {"counterexample", "--p", "0.5", "--n", "1", "--grid", "16"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> scan = {"ratio-scan", "--p", "3", "--n", "2", "--grid", "10", "--threads", "3"};
  EXPECT_EQ(run(scan).out, run({"ratio-scan", "--p", "3", "--n", "2", "--grid", "10"}).out);
}

TEST(Cli, QuadratureToleranceFromEnvironment) {
  ::setenv("QMA_RELTOL", "garbage", 1);
  EXPECT_EQ(run({"energy", "--p", "1", "--n", "1", "--a0", "1", "--ai", "1"}).code, 2);
  ::setenv("QMA_RELTOL", "1e-12", 1);
  const auto o = run({"energy", "--p", "1", "--n", "1", "--a0", "1", "--ai", "1"});
  ::unsetenv("QMA_RELTOL");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_LE(parse(o.out)["discrepancy"].get<double>(), 1e-11);
}

}  // namespace
