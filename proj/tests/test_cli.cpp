// Copyright 2026 The bqec Authors
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

#include <gtest/gtest.h>

#include <filesystem>

#include "cli_app.hpp"

using namespace bqec;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bqec");
  std::vector<const char *> argv;
  for (const auto &a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &content) {
  const auto path = std::filesystem::temp_directory_path() / ("bqec_cli_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

}  // namespace

TEST(Cli, AnalyzeFixtures) {
  auto r = run({"analyze", "--code", "steane", "--cut", "1,2,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "[[7,0,1,0;3]]");
  r = run({"analyze", "--code", "g8_3_3", "--cut", "AAAABBBB"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "[[8,1,1,1;2]]");
  EXPECT_NE(r.out.find("note: "), std::string::npos);
  r = run({"analyze", "--code", "five_one_three", "--cut", "AAAAA", "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["label"], "[[5,1,0,0;0]]");
  EXPECT_EQ(j["c_ab"], 0);
}

TEST(Cli, AnalyzeReadsFilesWithContext) {
  const std::string good = temp_file("good.stab", "ZZ\nXX\n");
  EXPECT_EQ(run({"analyze", "--code", good, "--cut", "AB"}).out.substr(0, 13), "[[2,0,0,0;1]]");
  const std::string bad = temp_file("bad.stab", "ZZ\nXQ\n");
  auto r = run({"analyze", "--code", bad, "--cut", "AB"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(bad), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, DecomposeListsSubgroups) {
  auto r = run({"decompose", "--code", "g8_3_3", "--cut", "AAAABBBB", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["entanglement"].size(), 2u);
  EXPECT_EQ(j["nonlocal"].size(), 1u);
  EXPECT_TRUE(j["local_a"].empty());
  EXPECT_TRUE(j["local_b"].empty());
}

TEST(Cli, SynthesizeThenVerify) {
  auto s = run({"synthesize", "--code", "steane", "--cut", "AABABBB"});
  ASSERT_EQ(s.code, 0);
  const std::string path = temp_file("enc.txt", s.out);
  auto v = run({"verify", "--code", "steane", "--cut", "AABABBB", "--circuit", path});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "PASS\n");
  // Drop the last gate.
  std::string cut = s.out.substr(0, s.out.rfind('\n', s.out.size() - 2) + 1);
  const std::string broken = temp_file("broken.txt", cut);
  v = run({"verify", "--code", "steane", "--cut", "AABABBB", "--circuit", broken});
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(v.out, "FAIL\n");
  EXPECT_NE(v.err.find("verify: "), std::string::npos);
}

TEST(Cli, SynthesizeWritesOutFile) {
  const auto path = (std::filesystem::temp_directory_path() / "bqec_cli_out.txt").string();
  std::filesystem::remove(path);
  auto r = run({"synthesize", "--code", "g8_3_3", "--cut", "AAAABBBB", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string first;
  std::getline(f, first);
  EXPECT_FALSE(first.empty());
}

TEST(Cli, SimulateIsDeterministic) {
  std::vector<std::string> args = {"simulate", "--variant", "3ea", "--pmem", "1e-5", "--trials", "2e4",
                                   "--seed", "7", "--points", "3", "--pstart", "1e-3"};
  auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  args.insert(args.end(), {"--threads", "3"});
  auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), ft::kSweepCsvHeader);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
}

TEST(Cli, ThresholdOnSyntheticQuadratic) {
  std::string csv = std::string(ft::kSweepCsvHeader) + "\n";
  for (double p : ft::sweep_grid(1e-4, 15, 20)) {
    const std::uint64_t trials = 1000000000ull;
    const auto fails = static_cast<std::uint64_t>(std::llround(5000 * p * p * trials));
    csv += ft::format_double(p) + ",1e-05," + std::to_string(trials) + "," + std::to_string(fails) + ",0,0,0\n";
  }
  auto r = run({"threshold", temp_file("quad.csv", csv)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["pseudothreshold"].get<double>(), 2e-4, 2e-7);
}

TEST(Cli, DegenerateFitIsReported) {
  std::string csv = std::string(ft::kSweepCsvHeader) + "\n";
  for (double p : ft::sweep_grid(1e-4, 15, 20)) {
    csv += ft::format_double(p) + ",1e-05,1000000000," + std::to_string(std::llround(p * 1e9)) + ",0,0,0\n";
  }
  auto r = run({"threshold", temp_file("lin.csv", csv)});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageAndValidationExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"analyze", "--code", "steane"}).code, 1);
  EXPECT_EQ(run({"analyze", "--code", "steane", "--cut", "AAB", "--format", "csv"}).code, 1);
  EXPECT_EQ(run({"analyze", "--code", "steane", "--cut", "AAB"}).code, 2);
  EXPECT_EQ(run({"analyze", "--code", "steane", "--cut", "1,9"}).code, 2);
  EXPECT_EQ(run({"analyze", "--code", "no_such_code", "--cut", "AB"}).code, 2);
  EXPECT_EQ(run({"simulate", "--variant", "other"}).code, 2);
  EXPECT_EQ(run({"simulate", "--variant", "3ea", "--trials", "0.5"}).code, 2);
  EXPECT_EQ(run({"simulate", "--variant", "3ea", "--pgate", "2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
