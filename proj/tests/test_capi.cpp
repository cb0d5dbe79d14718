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


// Exercises the shared library through its C surface only.

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "sectorctl/sectorctl.h"

namespace {

const std::string kFixtures = SECTORCTL_FIXTURE_DIR;

struct Str {
  char* p = nullptr;
  ~Str() { sc_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

// identity on 1 (+) 2 with the identity route, as JSON
std::string identity_sp_json() {
  std::string data;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) data += std::string(data.empty() ? "" : ",") + (i == j ? "[1,0]" : "[0,0]");
  return R"({"dim_in":3,"dim_out":3,"kraus":[{"rows":3,"cols":3,"data":[)" + data +
         R"(]}],"sectors_in":[1,2],"sectors_out":[1,2],"route":[[true,false],[false,true]]})";
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(sc_version(), "");
  EXPECT_STREQ(sc_status_name(SC_OK), "ok");
  EXPECT_STRNE(sc_status_name(SC_ERR_PARSE), sc_status_name(SC_ERR_IO));
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(sc_channel_random(2, 2, 1, 0, nullptr), SC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(sc_last_error()), "");
  sc_channel* c = nullptr;
  EXPECT_EQ(sc_channel_from_json(nullptr, 1e-9, &c), SC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(c, nullptr);
}

TEST(CApi, MalformedJson) {
  sc_matrix* m = nullptr;
  EXPECT_EQ(sc_matrix_from_json("{not json", &m), SC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sc_matrix_from_json(R"({"rows":2,"cols":2,"data":[]})", &m), SC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sc_matrix_from_json(R"({"rows":"two","cols":2,"data":[]})", &m), SC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(m, nullptr);
}

TEST(CApi, NotAControlledChannelIsMalformed) {
  sc_channel* c = nullptr;
  ASSERT_EQ(sc_channel_random(4, 4, 2, 1, &c), SC_OK);
  sc_channel* out = nullptr;
  EXPECT_EQ(sc_ctrl_inverse_apply(c, 2, &out), SC_ERR_MALFORMED);
  sc_channel_free(c);
}

TEST(CApi, NonTracePreservingChannelIsRejected) {
  sc_channel* c = nullptr;
  const char* half = R"({"dim_in":1,"dim_out":1,"kraus":[{"rows":1,"cols":1,"data":[[0.5,0]]}]})";
  EXPECT_EQ(sc_channel_from_json(half, 1e-9, &c), SC_ERR_NOT_TRACE_PRESERVING);
}

TEST(CApi, ChannelJsonRoundTrip) {
  sc_channel* c = nullptr;
  ASSERT_EQ(sc_channel_random(2, 3, 2, 42, &c), SC_OK);
  size_t din = 0, dout = 0;
  ASSERT_EQ(sc_channel_dims(c, &din, &dout), SC_OK);
  EXPECT_EQ(din, 2u);
  EXPECT_EQ(dout, 3u);
  Str js;
  ASSERT_EQ(sc_channel_to_json(c, &js.p), SC_OK);
  sc_channel* back = nullptr;
  ASSERT_EQ(sc_channel_from_json(js.p, 1e-9, &back), SC_OK);
  int eq = 0;
  double dist = 1.0;
  ASSERT_EQ(sc_channels_equal(c, back, 1e-9, &eq, &dist), SC_OK);
  EXPECT_EQ(eq, 1);
  EXPECT_LT(dist, 1e-12);

  sc_matrix* choi = nullptr;
  ASSERT_EQ(sc_channel_choi(c, &choi), SC_OK);
  size_t r = 0, k = 0;
  sc_matrix_dims(choi, &r, &k);
  EXPECT_EQ(r, 6u);
  EXPECT_EQ(k, 6u);
  sc_matrix_free(choi);

  sc_channel* other = nullptr;
  ASSERT_EQ(sc_channel_random(2, 3, 2, 43, &other), SC_OK);
  ASSERT_EQ(sc_channels_equal(c, other, 1e-9, &eq, &dist), SC_OK);
  EXPECT_EQ(eq, 0);
  sc_channel_free(other);
  sc_channel_free(back);
  sc_channel_free(c);
}

TEST(CApi, CtrlAndInverse) {
  sc_channel* id = nullptr;
  ASSERT_EQ(sc_channel_from_json(identity_sp_json().c_str(), 1e-9, &id), SC_OK);
  sc_channel* ctrl = nullptr;
  ASSERT_EQ(sc_ctrl_apply(id, &ctrl), SC_OK);
  size_t din = 0, dout = 0;
  sc_channel_dims(ctrl, &din, &dout);
  EXPECT_EQ(din, 4u);
  sc_channel* back = nullptr;
  ASSERT_EQ(sc_ctrl_inverse_apply(ctrl, 2, &back), SC_OK);
  int eq = 0;
  double dist = 0;
  ASSERT_EQ(sc_channels_equal(id, back, 1e-9, &eq, &dist), SC_OK);
  EXPECT_EQ(eq, 1);

  sc_channel* two = nullptr;
  ASSERT_EQ(sc_two_ctrl_apply(id, id, &two), SC_OK);
  sc_channel_dims(two, &din, &dout);
  EXPECT_EQ(din, 4u);
  EXPECT_EQ(sc_ctrl_inverse_apply(ctrl, 3, &back), SC_ERR_DIMENSION_MISMATCH);
  sc_channel_free(two);
  sc_channel_free(back);
  sc_channel_free(ctrl);
  sc_channel_free(id);
}

TEST(CApi, ParseErrorCarriesPosition) {
  sc_circuit* c = nullptr;
  EXPECT_EQ(sc_circuit_parse("", ".", &c), SC_ERR_PARSE);
  EXPECT_NE(std::string(sc_last_error()).find("1:1"), std::string::npos) << sc_last_error();
  EXPECT_EQ(sc_circuit_parse_file("/nonexistent.rqc", &c), SC_ERR_IO);
}

TEST(CApi, CircuitCheckPrintEval) {
  sc_circuit* c = nullptr;
  ASSERT_EQ(sc_circuit_parse_file((kFixtures + "/fig6_two_ctrl.rqc").c_str(), &c), SC_OK)
      << sc_last_error();
  Str report;
  int ok = 0;
  ASSERT_EQ(sc_circuit_check(c, 1e-9, &report.p, &ok), SC_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_NE(report.s().find("\"obligations\""), std::string::npos);

  Str text;
  ASSERT_EQ(sc_circuit_print(c, &text.p), SC_OK);
  sc_circuit* again = nullptr;
  ASSERT_EQ(sc_circuit_parse(text.p, kFixtures.c_str(), &again), SC_OK) << sc_last_error();
  sc_circuit_free(again);

  const std::string id = identity_sp_json();
  const std::string bindings = "{\"A\":" + id + ",\"B\":" + id + "}";
  sc_channel* out = nullptr;
  ASSERT_EQ(sc_circuit_eval(c, bindings.c_str(), 1e-9, &out), SC_OK) << sc_last_error();
  size_t din = 0, dout = 0;
  sc_channel_dims(out, &din, &dout);
  EXPECT_EQ(din, 4u);
  EXPECT_EQ(dout, 4u);
  sc_channel_free(out);

  EXPECT_EQ(sc_circuit_eval(c, ("{\"A\":" + id + "}").c_str(), 1e-9, &out), SC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sc_circuit_eval(c, "[]", 1e-9, &out), SC_ERR_INVALID_ARGUMENT);
  sc_circuit_free(c);
}

TEST(CApi, RunSuite) {
  Str names;
  ASSERT_EQ(sc_suite_names(&names.p), SC_OK);
  EXPECT_NE(names.s().find("ctrl-equiv"), std::string::npos);

  Str report;
  int passed = 0;
  ASSERT_EQ(sc_run_suite(R"({"suite":"ctrl-unitary","trials":3,"dims":[2]})", &report.p, &passed),
            SC_OK)
      << sc_last_error();
  EXPECT_EQ(passed, 1);
  EXPECT_NE(report.s().find("\"passed\":true"), std::string::npos);
  Str none;
  EXPECT_EQ(sc_run_suite(R"({"suite":"nope"})", &none.p, &passed), SC_ERR_UNKNOWN_SUITE);
}

TEST(CApi, PrngGaussiansMatchGoldenValues) {
  double g[2] = {0, 0};
  ASSERT_EQ(sc_prng_gaussians(0, 0, 2, g), SC_OK);
  EXPECT_DOUBLE_EQ(g[0], -0.10892259976378564);
  EXPECT_DOUBLE_EQ(g[1], 0.90181693902885129);
}

}  // namespace
