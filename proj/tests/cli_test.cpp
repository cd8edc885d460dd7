// Copyright 2026 The gscount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gscount/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace gscount::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gscount");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTable, CsvMatchesPublishedTable) {
  const auto r = run_cli({"table", "--n", "2..8", "--format", "csv"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out,
            "N,ml_rm,ml_ra,ml_total,mmse_rm,mmse_ra,mmse_total\n"
            "2,105,83,188,128,135,263\n"
            "3,252,199,451,360,369,729\n"
            "4,475,383,858,768,770,1538\n"
            "5,790,651,1441,1400,1380,2780\n"
            "6,1213,1019,2232,2304,2241,4545\n"
            "7,1760,1503,3263,3528,3395,6923\n"
            "8,2447,2119,4566,5120,4884,10004\n");
}

TEST(CliTable, MarkdownCarriesSameIntegers) {
  const auto r = run_cli({"table", "--n", "2..8", "--format", "md"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find(" 2447 |"), std::string::npos);
  EXPECT_NE(r.out.find("10004"), std::string::npos);
  EXPECT_NE(r.out.find("2.19"), std::string::npos);
  // header, rule, 7 rows
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(CliTable, JsonAtSixteen) {
  const auto r = run_cli({"table", "--n", "16", "--format", "json"});
  EXPECT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("rows").size(), 1u);
  EXPECT_EQ(j.at("rows")[0].at("model").at("ml").at("total"), 28622);
  EXPECT_EQ(j.at("rows")[0].at("claimed_ref1").at("total"), 19 * 256 + 109 * 16 - 206);
  EXPECT_EQ(j.at("config").at("command"), "table");
  EXPECT_TRUE(j.at("checks")[0].at("pass").get<bool>());
}

TEST(CliTable, OutputIsByteDeterministic) {
  for (const char* fmt : {"csv", "json", "md"}) {
    EXPECT_EQ(run_cli({"table", "--n", "2..12", "--format", fmt}).out,
              run_cli({"table", "--n", "2..12", "--format", fmt}).out);
  }
  EXPECT_EQ(run_cli({"count", "--n", "5", "--format", "json"}).out,
            run_cli({"count", "--n", "5", "--format", "json"}).out);
}

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(run_cli({"table", "--n", "1..3"}).code, kUsage);
  EXPECT_EQ(run_cli({"table", "--n", "5..3"}).code, kUsage);
  EXPECT_EQ(run_cli({"table", "--n", "abc"}).code, kUsage);
  EXPECT_EQ(run_cli({"table", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--tol", "-1"}).code, kUsage);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
}

TEST(CliUsage, ParseRange) {
  EXPECT_EQ(parse_range("2..8"), std::make_pair(2, 8));
  EXPECT_EQ(parse_range("16"), std::make_pair(16, 16));
  EXPECT_THROW(parse_range("2..x"), DomainError);
  EXPECT_THROW(parse_range(""), DomainError);
}

TEST(CliIo, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "gscount_cli_test.csv";
  const auto r = run_cli({"table", "--format", "csv", "--out", path.string()});
  EXPECT_EQ(r.code, kPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "N,ml_rm,ml_ra,ml_total,mmse_rm,mmse_ra,mmse_total");
  std::filesystem::remove(path);
}

TEST(CliIo, UnwritablePath) {
  const auto r = run_cli({"table", "--out", "/nonexistent-dir/x/table.csv"});
  EXPECT_EQ(r.code, kIo);
}

TEST(CliVerify, SeededSweepPasses) {
  const auto r = run_cli({"verify", "--n", "2..12", "--trials", "10", "--seed", "7"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_TRUE(r.err.empty());
}

TEST(CliVerify, SmallestCase) {
  const auto r = run_cli({"verify", "--n", "2", "--format", "json"});
  EXPECT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("checks").size(), 8u);
  for (const auto& c : j.at("checks")) {
    EXPECT_TRUE(c.at("pass").get<bool>()) << c;
    EXPECT_LT(c.at("max_dev").get<double>(), 1e-10);
  }
}

TEST(CliVerify, UnpairedInputFailsPartnerCheck) {
  const auto r = run_cli({"verify", "--n", "3..4", "--unpaired", "--format", "json"});
  EXPECT_EQ(r.code, kCheckFailed);
  const auto j = nlohmann::json::parse(r.out);
  bool partner_failed = false;
  for (const auto& c : j.at("checks")) {
    if (c.at("name") == "alamouti_consistency" && !c.at("pass").get<bool>()) {
      partner_failed = true;
    }
  }
  EXPECT_TRUE(partner_failed);
  EXPECT_NE(r.err.find("check=alamouti_consistency"), std::string::npos);
}

TEST(CliCount, SmallestCaseIsThetaPairRow) {
  const auto r = run_cli({"count", "--n", "2", "--format", "json"});
  EXPECT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  const auto& m = j.at("rows")[0].at("measured");
  EXPECT_EQ(m.at("rm"), 9);
  EXPECT_EQ(m.at("ra"), 4);
  EXPECT_EQ(j.at("rows")[0].at("model").at("eq13_eq14").at("rm"), 9);
  EXPECT_EQ(j.at("rows")[0].at("model").at("eq13_eq14").at("ra"), 4);
}

TEST(CliCount, SeedIndependentAcrossTrials) {
  const auto r = run_cli({"count", "--n", "16", "--trials", "5"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("projection_sum"), std::string::npos);
}

TEST(CliCount, LeadingOrderAt128) {
  const auto r = run_cli({"count", "--n", "128", "--format", "json"});
  ASSERT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  const double ratio = j.at("rows")[0].at("ratios").at("cmul_over_two_thirds_n3");
  EXPECT_GE(ratio, 0.95);
  EXPECT_LE(ratio, 1.05);
}

TEST(CliCount, DumpReproducesRun) {
  const auto path = std::filesystem::temp_directory_path() / "gscount_dump_test.json";
  const auto r = run_cli({"count", "--n", "3..4", "--seed", "5", "--dump", path.string()});
  ASSERT_EQ(r.code, kPass);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  ASSERT_EQ(j.at("runs").size(), 2u);
  const auto& run4 = j.at("runs")[1];
  const auto ch = channel_from_json(run4.at("channel"));
  EXPECT_EQ(ch, gen_channel(4, trial_seed(5, 0)));
  AccountingContext ctx;
  EXPECT_EQ(run4.at("basis"), basis_to_json(gs_optimized(build_basis(ch), ctx).basis));
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"count", "--n", "3", "--dump", "/nonexistent-dir/d.json"}).code, kIo);
}

TEST(CliRefute, PassesFromTenUp) {
  const auto r = run_cli({"refute", "--n", "10..64", "--format", "csv"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "N,gs_rm,gs_ra,gs_total,ref1_total,gs/ref1,ml_total,mmse_total,mmse/ml");
  EXPECT_NE(r.out.find("\n10,3153,2836,5989,2784,"), std::string::npos);
}

TEST(CliRefute, SmallRangeReportsRatio) {
  const auto r = run_cli({"refute", "--n", "2..8"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("2.19"), std::string::npos);
  EXPECT_NE(r.out.find("informational"), std::string::npos);
}

TEST(CliRefute, JsonSchema) {
  const auto r = run_cli({"refute", "--n", "10..12", "--format", "json"});
  EXPECT_EQ(r.code, kPass);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"config", "rows", "checks"}) EXPECT_TRUE(j.contains(key));
  const auto& row = j.at("rows")[0];
  for (const char* key : {"n", "model", "measured", "claimed_ref1"}) EXPECT_TRUE(row.contains(key));
  EXPECT_TRUE(row.at("measured").contains("phases"));
  EXPECT_EQ(row.at("measured").at("phases").size(), 5u);
}

TEST(CliSeed, EnvironmentDefault) {
  ::setenv(kSeedEnv, "12345", 1);
  const auto j = nlohmann::json::parse(run_cli({"table", "--format", "json"}).out);
  EXPECT_EQ(j.at("config").at("seed"), 12345);
  const auto k = nlohmann::json::parse(run_cli({"table", "--format", "json", "--seed", "9"}).out);
  EXPECT_EQ(k.at("config").at("seed"), 9);
  ::setenv(kSeedEnv, "garbage", 1);
  EXPECT_EQ(run_cli({"table"}).code, kUsage);
  ::unsetenv(kSeedEnv);
  const auto d = nlohmann::json::parse(run_cli({"table", "--format", "json"}).out);
  EXPECT_EQ(d.at("config").at("seed"), kDefaultSeed);
}

}  // namespace
}  // namespace gscount::cli
