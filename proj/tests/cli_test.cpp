// Copyright 2026 The seatlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace seatlab::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliExact, Event) {
  const auto r = run_cli({"exact", "--n", "4", "--k", "1", "--event", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["command"], "exact");
  EXPECT_EQ(j["results"]["result"], "1/3");
  EXPECT_EQ(j["results"]["closed_form"], "1/3");
  EXPECT_FALSE(j.contains("seed"));
}

TEST(CliExact, FloatAddsApproximation) {
  const auto j = run_cli({"exact", "--n", "4", "--k", "1", "--event", "3", "--float"}).json();
  EXPECT_EQ(j["results"]["result"], "1/3");
  EXPECT_DOUBLE_EQ(j["results"]["result_float"].get<double>(), 0.333333333333);
}

TEST(CliExact, JointWithLostList) {
  const auto j = run_cli({"exact", "--n", "6", "--lost", "1,2", "--joint", "3,5,n"}).json();
  EXPECT_EQ(j["results"]["result"], "1/9");
  EXPECT_EQ(j["results"]["product_of_marginals"], "1/9");
}

TEST(CliExact, VerifyIndependence) {
  const auto r = run_cli({"exact", "--n", "6", "--k", "2", "--verify-independence"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.json()["results"]["violations"].empty());
  EXPECT_EQ(r.json()["results"]["subsets_checked"], 15);
}

TEST(CliExact, Distribution) {
  const auto j = run_cli({"exact", "--n", "2", "--k", "1", "--distribution"}).json();
  ASSERT_EQ(j["results"]["outcomes"].size(), 2u);
  EXPECT_EQ(j["results"]["outcomes"][0]["seat_of"], nlohmann::json({1, 2}));
  EXPECT_EQ(j["results"]["outcomes"][0]["prob"], "1/2");
  EXPECT_EQ(j["results"]["total"], "1/1");
}

TEST(CliExact, TooLargeExitsTwo) {
  const auto r = run_cli({"exact", "--n", "30", "--k", "1", "--distribution"});
  EXPECT_EQ(r.code, kExitTooLarge);
  const auto j = r.json();
  EXPECT_EQ(j["error"]["type"], "TooLarge");
  EXPECT_EQ(j["error"]["bound"], 10000000);
}

TEST(CliExact, EnvOverridesBound) {
  ::setenv("SEATLAB_MAX_LEAVES", "8", 1);
  const auto r = run_cli({"exact", "--n", "5", "--k", "1", "--distribution"});
  ::unsetenv("SEATLAB_MAX_LEAVES");
  EXPECT_EQ(r.code, kExitTooLarge);
  EXPECT_EQ(r.json()["error"]["estimated"], 16);
}

TEST(CliExact, UsageErrors) {
  EXPECT_EQ(run_cli({"exact", "--n", "4", "--k", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"exact", "--n", "4", "--k", "1", "--lost", "1", "--event", "2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"exact", "--n", "4", "--k", "1", "--event", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"exact", "--n", "4", "--lost", "7", "--event", "2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(CliSimulate, LastPassengerIntervals) {
  const auto j = run_cli({"simulate", "--n", "100", "--k", "1", "--trials", "200000", "--seed", "42", "--events", "100"})
                     .json();
  EXPECT_EQ(j["seed"], 42);
  const auto& lc = j["results"]["last_correct"];
  EXPECT_LE(lc["wilson_lo"].get<double>(), 0.5);
  EXPECT_GE(lc["wilson_hi"].get<double>(), 0.5);
  const auto& ev = j["results"]["events"][0];
  EXPECT_EQ(ev["m"], 100);
  EXPECT_LE(ev["wilson_lo"].get<double>(), 0.5);
  EXPECT_GE(ev["wilson_hi"].get<double>(), 0.5);
}

TEST(CliSimulate, DeterministicAcrossRunsAndWorkers) {
  const std::vector<std::string> base = {"simulate", "--n", "50", "--k", "3", "--trials", "20000", "--seed", "9",
                                         "--events", "4,10,n"};
  const auto a = run_cli(base);
  const auto b = run_cli(base);
  auto w = base;
  w.insert(w.end(), {"--workers", "4"});
  const auto c = run_cli(w);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliSimulate, Csv) {
  const auto r = run_cli({"simulate", "--n", "10", "--k", "1", "--trials", "100", "--seed", "1", "--format", "csv",
                          "--events", "2,10"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "quantity,m,count,trials,frequency,wilson_lo,wilson_hi\r");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(CliBackward, CheckForward) {
  for (auto [n, k] : {std::pair{"5", "1"}, std::pair{"4", "2"}}) {
    const auto j = run_cli({"backward", "--n", n, "--k", k, "--check-forward"}).json();
    EXPECT_TRUE(j["results"]["equal"].get<bool>());
    EXPECT_TRUE(j["results"]["max_deviation"].is_null());
  }
}

TEST(CliBackward, RecordSample) {
  const auto j = run_cli({"backward", "--n", "6", "--k", "1", "--records", "--sample", "--seed", "1"}).json();
  const auto& colors = j["results"]["coloring"]["colors"];
  ASSERT_EQ(colors.size(), 6u);
  EXPECT_EQ(colors.back()["seat"], 7);
  EXPECT_EQ(colors.back()["shade"], 1);
  EXPECT_EQ(j["seed"], 1);
}

TEST(CliBackward, RecordExhaustiveCheck) {
  const auto j = run_cli({"backward", "--n", "6", "--k", "1", "--records"}).json();
  EXPECT_TRUE(j["results"]["equal"].get<bool>());
  EXPECT_EQ(j["results"]["colorings"], 32);
}

TEST(CliBackward, UsageErrors) {
  EXPECT_EQ(run_cli({"backward", "--n", "6", "--k", "2", "--records"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"backward", "--n", "6", "--k", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"backward", "--n", "6", "--k", "1", "--sample"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"backward", "--n", "40", "--k", "2", "--check-forward"}).code, kExitTooLarge);
}

TEST(CliPd, CsvHasKsColumn) {
  const auto r = run_cli({"pd", "--n-list", "100,1000", "--k", "1", "--trials", "2000", "--seed", "0", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,k,trials,ks_distance,mean_largest,var_largest,max_cross_corr\r");
  std::string row;
  std::getline(in, row);
  EXPECT_EQ(row.rfind("100,1,2000,", 0), 0u);
}

TEST(CliPd, RejectsSmallN) {
  EXPECT_EQ(run_cli({"pd", "--n-list", "20", "--k", "3", "--trials", "10", "--seed", "0"}).code, kExitUsage);
}

TEST(CliRedNow, Exact) {
  const auto j = run_cli({"rednow", "--reds", "3", "--blacks", "1", "--exact", "--strategy", "immediate"}).json();
  EXPECT_EQ(j["results"]["result"], "3/4");
}

TEST(CliRedNow, BottomEqualsNext) {
  const auto next =
      run_cli({"rednow", "--reds", "4", "--blacks", "4", "--exact", "--strategy", "threshold:0.5", "--mode", "next"})
          .json();
  const auto bottom =
      run_cli({"rednow", "--reds", "4", "--blacks", "4", "--exact", "--strategy", "threshold:0.5", "--mode", "bottom"})
          .json();
  EXPECT_EQ(next["results"], bottom["results"]);
}

TEST(CliRedNow, StrategyFile) {
  const std::string path = ::testing::TempDir() + "rednow_table.json";
  {
    std::ofstream f(path);
    f << R"({"type":"table","entries":[{"prefix":"B","action":"call"}],"default":"wait"})";
  }
  const auto r = run_cli({"rednow", "--reds", "2", "--blacks", "2", "--exact", "--strategy-file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["results"]["result"], "1/2");
}

TEST(CliRedNow, MonteCarloAndErrors) {
  const auto r = run_cli({"rednow", "--reds", "26", "--blacks", "26", "--trials", "1000", "--seed", "5", "--strategy",
                          "black-run:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["results"]["trials"], 1000);
  EXPECT_EQ(r.json()["seed"], 5);
  EXPECT_EQ(run_cli({"rednow", "--reds", "26", "--blacks", "26", "--exact", "--strategy", "last"}).code, kExitTooLarge);
  EXPECT_EQ(run_cli({"rednow", "--reds", "2", "--blacks", "2", "--exact", "--strategy", "nope"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"rednow", "--reds", "2", "--blacks", "2", "--strategy", "last"}).code, kExitUsage);
}

}  // namespace
}  // namespace seatlab::cli
