// Copyright 2026 The sectorctl Authors
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

#include <filesystem>

#include "sectorctl/error.hpp"
#include "sectorctl/suites.hpp"

namespace sectorctl {
namespace {

const std::string kTwoCtrlFixture = std::string(SECTORCTL_FIXTURE_DIR) + "/fig6_two_ctrl.rqc";

SuiteConfig small(const std::string& suite) {
  SuiteConfig c;
  c.suite = suite;
  c.trials = 4;
  c.file = kTwoCtrlFixture;
  c.mutations = 6;
  return c;
}

class EverySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySuite, PassesWithFewTrials) {
  const Json r = run_suite(small(GetParam()));
  EXPECT_TRUE(r["passed"].get<bool>()) << r.dump(2);
  EXPECT_EQ(r["failures"].get<int>(), 0);
  EXPECT_FALSE(r["cases"].empty());
  EXPECT_FALSE(r.contains("runtime_seconds"));
  for (const auto& k : r["cases"]) {
    EXPECT_TRUE(k["passed"].get<bool>()) << k.dump();
    if (!k["max_distance"].is_null()) {
      EXPECT_LE(k["max_distance"].get<double>(), kEqTol) << k.dump();
    }
    if (k.contains("min_gap")) {
      EXPECT_GT(k["min_gap"].get<double>(), 1e-3) << k.dump();
    }
  }
}

TEST_P(EverySuite, ReportIsReproducible) {
  EXPECT_EQ(run_suite(small(GetParam())).dump(), run_suite(small(GetParam())).dump());
}

INSTANTIATE_TEST_SUITE_P(Suites, EverySuite, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(Suites, NamesAreTheElevenSuites) {
  EXPECT_EQ(suite_names().size(), 11u);
  EXPECT_EQ(suite_names().front(), "ctrl-equiv");
}

TEST(Suites, UnknownSuite) {
  SuiteConfig c;
  c.suite = "nope";
  try {
    run_suite(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSuite);
  }
}

TEST(Suites, RejectsBadConfig) {
  SuiteConfig c = small("ctrl-equiv");
  c.tol = 0.0;
  EXPECT_THROW(run_suite(c), Error);
  c.tol = -1.0;
  EXPECT_THROW(run_suite(c), Error);
  c = small("ctrl-equiv");
  c.dims = {0};
  EXPECT_THROW(run_suite(c), Error);
  c = small("routed-eval");
  c.oracle = "bogus";
  EXPECT_THROW(run_suite(c), Error);
  c = small("routed-check");
  c.file = "/nonexistent/x.rqc";
  EXPECT_THROW(run_suite(c), Error);
}

TEST(Suites, TimingAddsRuntime) {
  SuiteConfig c = small("ctrl-unitary");
  c.timing = true;
  const Json r = run_suite(c);
  ASSERT_TRUE(r.contains("runtime_seconds"));
  EXPECT_GE(r["runtime_seconds"].get<double>(), 0.0);
}

TEST(Suites, SeedChangesTheSamples) {
  SuiteConfig a = small("lemma2"), b = small("lemma2");
  b.seed = 8;
  const Json ra = run_suite(a), rb = run_suite(b);
  EXPECT_TRUE(rb["passed"].get<bool>());
  EXPECT_NE(ra["cases"].dump(), rb["cases"].dump());
}

TEST(Suites, WritesJsonReport) {
  const auto path = std::filesystem::temp_directory_path() / "sectorctl-suite-report.json";
  SuiteConfig c = small("roundtrip");
  c.json_path = path.string();
  const Json r = run_suite(c);
  EXPECT_EQ(parse_json(read_text_file(path.string())), r);
  std::filesystem::remove(path);
}

TEST(Suites, ConfigJsonRoundTrip) {
  SuiteConfig c = small("verify-supermap");
  c.dims = {2};
  c.aux_dims = {1, 3};
  c.supermaps = {"ctrl"};
  c.seed = 99;
  c.timing = true;
  const SuiteConfig back = suite_config_from_json(suite_config_to_json(c));
  EXPECT_EQ(suite_config_to_json(back), suite_config_to_json(c));
}

TEST(Suites, BrokenSupermapAloneIsReportedAsExpectedFailure) {
  SuiteConfig c = small("verify-supermap");
  c.dims = {2};
  c.supermaps = {"ctrl-broken"};
  const Json r = run_suite(c);
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_NE(r["cases"][0]["name"].get<std::string>().find("must fail"), std::string::npos);
}

}  // namespace
}  // namespace sectorctl
