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

#include "sectorctl/control.hpp"
#include "sectorctl/error.hpp"
#include "sectorctl/routedfmt.hpp"
#include "sectorctl/supermaps.hpp"

namespace sectorctl {
namespace {

const std::string kTwoCtrlFixture = std::string(SECTORCTL_FIXTURE_DIR) + "/fig6_two_ctrl.rqc";

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sectorctl-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

void expect_parse_error(const std::string& text, int line, int col, const std::string& fragment) {
  try {
    parse_circuit(text);
    FAIL() << "parsed: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), col) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

RoutedKrausChannel random_sp(std::size_t d, std::size_t env, Prng& rng) {
  const PartitionedSpace s({1, d});
  const CPMap m = random_route_follower(SectorLabels::of(s), SectorLabels::of(s), Route::identity(2),
                                        env, rng);
  return RoutedKrausChannel(s, s, Route::identity(2), KrausChannel(m));
}

TEST(Parse, TwoCtrlFixtureShape) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  EXPECT_EQ(ast.slots.size(), 2u);
  EXPECT_EQ(ast.nodes.size(), 4u);
  EXPECT_EQ(ast.find_wire("C")->type.sector_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(ast.inputs, (std::vector<std::string>{"C", "Tin"}));
  EXPECT_EQ(ast.outputs, (std::vector<std::string>{"C", "Tout"}));
  const GateDecl* split = ast.find_gate("Split");
  ASSERT_NE(split, nullptr);
  EXPECT_EQ(split->kind, GateKind::kEmbed);
  // true exactly at tuples (0,0,1) and (1,1,0)
  EXPECT_TRUE(split->route.matrix->at(1, 0));
  EXPECT_TRUE(split->route.matrix->at(6, 1));
}

TEST(Parse, EmptyFileFailsAtOneOne) { expect_parse_error("", 1, 1, "expected a statement"); }

TEST(Parse, SyntaxErrorsCarryPositions) {
  expect_parse_error("wire S : [1, 2]", 1, 16, "expected ';'");
  expect_parse_error("wire S : [1, 2];\nwire S : [2];", 2, 6, "duplicate wire");
  expect_parse_error("wire S : [0];", 1, 11, ">= 1");
  expect_parse_error("wire S : [1];\ninput T;", 2, 7, "unknown wire 'T'");
  expect_parse_error("wire S : [1];\ninput S;\napply G (S);\noutput S;", 3, 7, "unknown operation");
  expect_parse_error("wire S : [1]; $", 1, 15, "unexpected character");
}

TEST(Parse, SemanticErrors) {
  const std::string head = "wire S : [1, 2];\nwire T : [2];\n";
  // type mismatch
  expect_parse_error(head + "slot A : S -> S route id;\ninput T;\napply A (T);\noutput T;", 5, 10,
                     "does not have the type");
  // slot applied twice
  expect_parse_error(head + "slot A : S -> S route id;\ninput S;\napply A (S);\napply A (S);\noutput S;",
                     3, 6, "applied 2 times");
  // slot never applied
  expect_parse_error(head + "slot A : S -> S route id;\ninput S;\noutput S;", 3, 6, "applied 0 times");
  // outputs must be the live wires
  expect_parse_error(head + "input S;\noutput T;", 4, 1, "do not match");
  // consumed wire is gone
  expect_parse_error(head +
                         "wire U : [1, 2];\nslot A : S -> U route id;\nslot B : S -> U route id;\n"
                         "input S;\napply A (S) -> (U);\napply B (S) -> (U);\noutput U;",
                     8, 10, "not live");
  expect_parse_error(head + "input S;\ninput S;\noutput S;", 4, 1, "duplicate 'input'");
  expect_parse_error(head + "input S;", 3, 9, "missing 'output'");
}

TEST(Parse, KrausPayloadIsLoadedRelativeToTheFile) {
  TempDir dir;
  write_text_file((dir.path / "x.json").string(),
                  cp_map_to_json(CPMap(2, 2, {identity(2)})).dump());
  write_text_file((dir.path / "c.rqc").string(),
                  "wire Q : [1, 1];\ngate X : Q -> Q route id kraus @x.json;\n"
                  "input Q;\napply X (Q);\noutput Q;\n");
  const CircuitAST ast = parse_circuit_file((dir.path / "c.rqc").string());
  ASSERT_TRUE(ast.find_gate("X")->kraus.has_value());
  EXPECT_EQ(ast.find_gate("X")->kraus->kraus()[0], identity(2));
  try {
    parse_circuit("wire Q : [1];\ngate X : Q -> Q route id kraus @missing.json;", dir.path.string());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 32);
  }
}

TEST(Print, RoundTripFixture) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  const std::string text = print_circuit(ast);
  const CircuitAST back = parse_circuit(text, std::string(SECTORCTL_FIXTURE_DIR));
  EXPECT_EQ(back, ast);
  EXPECT_EQ(print_circuit(back), text);
}

TEST(Print, RoundTripMutations) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  TempDir dir;
  for (const Mutation& m : generate_mutations(ast, 8, 5)) {
    for (const auto& g : m.ast.gates)
      if (g.kraus) write_text_file((dir.path / g.kraus_path).string(), cp_map_to_json(*g.kraus).dump());
    const CircuitAST back = parse_circuit(print_circuit(m.ast), dir.path.string());
    EXPECT_EQ(back, m.ast) << m.description;
  }
}

TEST(Check, TwoCtrlFixtureComposesToDelta) {
  const RouteCheckReport r = check_circuit(parse_circuit_file(kTwoCtrlFixture));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.violations.empty());
  ASSERT_TRUE(r.composed.has_value());
  EXPECT_TRUE(r.composed->is_identity());
  ASSERT_EQ(r.obligations.size(), 2u);
  EXPECT_EQ(r.obligations[0].slot, "A");
  EXPECT_EQ(r.nodes.size(), 4u);
}

TEST(Check, IdentityChainComposesToDelta) {
  const CircuitAST ast = parse_circuit(
      "wire S : [1, 2, 3];\nwire T : [1, 2, 3];\nslot A : S -> T route id;\nslot B : T -> S route id;\n"
      "input S;\napply A (S) -> (T);\napply B (T) -> (S);\noutput S;");
  const RouteCheckReport r = check_circuit(ast);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(*r.composed, Route::identity(3));
}

TEST(Check, ComposedRouteFollowsOutputOrder) {
  // swap two wires through a crossing embed; composed route must be stated
  // in the declared output order
  const CircuitAST ast = parse_circuit(
      "wire A : [1, 1];\nwire B : [1, 2];\n"
      "gate Flip : A -> A route [[0, 1], [1, 0]] embed;\n"
      "input A, B;\napply Flip (A);\noutput B, A;");
  const RouteCheckReport r = check_circuit(ast);
  ASSERT_TRUE(r.composed.has_value());
  // input tuple (a, b) -> output tuple (b, 1 - a)
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2)
          EXPECT_EQ(r.composed->at(b2 * 2 + a2, a * 2 + b), b2 == b && a2 == 1 - a);
}

TEST(Check, LeakingGateNamesTheSectorPair) {
  TempDir dir;
  ComplexMatrix k = identity(3);
  k(0, 1) = 0.5;  // sector 1 -> sector 0
  write_text_file((dir.path / "leak.json").string(), cp_map_to_json(CPMap(3, 3, {k})).dump());
  const CircuitAST ast = parse_circuit(
      "wire S : [1, 2];\ngate L : S -> S route id kraus @leak.json;\n"
      "input S;\napply L (S);\noutput S;",
      dir.path.string());
  const RouteCheckReport r = check_circuit(ast);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.violations.size(), 1u);
  const Violation& v = r.violations[0];
  EXPECT_EQ(v.kind, "leak");
  EXPECT_EQ(v.node, 0);
  EXPECT_EQ(v.line, 4);
  EXPECT_EQ(v.in_sector, (std::vector<std::size_t>{1}));
  EXPECT_EQ(v.out_sector, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(v.norm, 0.5, 1e-12);
  EXPECT_FALSE(r.nodes[0].ok);
  const Json j = check_report_to_json(r);
  EXPECT_EQ(j["violations"][0]["kind"], "leak");
}

TEST(Check, TransposedRouteIsRejected) {
  CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  for (auto& g : ast.gates)
    if (g.name == "Split") g.route.matrix = g.route.matrix->transpose();
  const RouteCheckReport r = check_circuit(ast);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].kind, "route_shape");
  EXPECT_EQ(r.violations[0].node, 0);
  EXPECT_FALSE(r.composed.has_value());
}

TEST(Check, EmbedProblemsAndNonTotalRoutes) {
  const RouteCheckReport r = check_circuit(parse_circuit(
      "wire A : [2, 1];\nwire B : [1, 2];\nwire C : [1, 1];\n"
      "gate Shrink : A -> B route id embed;\n"
      "gate Fan : B -> A route [[1, 0], [1, 1]] embed;\n"
      "slot S : A -> C route [[1, 0], [0, 0]];\n"
      "input A;\napply Shrink (A) -> (B);\napply Fan (B) -> (A);\napply S (A) -> (C);\noutput C;"));
  std::vector<std::string> kinds;
  for (const auto& v : r.violations) kinds.push_back(v.kind);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "embed_dim"), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "embed_ambiguous"), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "non_total"), kinds.end());
}

// check accepts a literal exactly when follows_route does
TEST(Check, AgreesWithFollowsRoute) {
  TempDir dir;
  Prng rng(3, 0);
  const PartitionedSpace s({1, 2});
  for (int t = 0; t < 20; ++t) {
    CPMap m = random_route_follower(SectorLabels::of(s), SectorLabels::of(s), Route::identity(2),
                                    1 + t % 3, rng);
    if (t % 2) {
      std::vector<ComplexMatrix> k = m.kraus();
      k[0](0, 1 + t % 2) += 1e-3 * (1 + t);
      m = CPMap(3, 3, k);
    }
    write_text_file((dir.path / "g.json").string(), cp_map_to_json(m).dump());
    const CircuitAST ast = parse_circuit(
        "wire S : [1, 2];\ngate G : S -> S route id kraus @g.json;\ninput S;\napply G (S);\noutput S;",
        dir.path.string());
    EXPECT_EQ(check_circuit(ast).ok, follows_route(m, s, s, Route::identity(2)));
  }
}

TEST(Embed, SplitIsAnIsometry) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  const ComplexMatrix e = embed_matrix(ast, *ast.find_gate("Split"));
  EXPECT_EQ(e.rows(), 18);
  EXPECT_EQ(e.cols(), 4);
  EXPECT_TRUE(is_isometry(e));
}

TEST(Eval, IdentityBindingsGiveIdentity) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  const PartitionedSpace s({1, 2});
  const RoutedKrausChannel id(s, s, Route::identity(2), identity_channel(3));
  EXPECT_TRUE(channels_equal(eval_circuit(ast, {{"A", id}, {"B", id}}), identity_channel(4)));
}

TEST(Eval, UnitaryBindingsGiveControlledPair) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  Prng rng(4, 0);
  const ComplexMatrix u = random_unitary(2, rng), v = random_unitary(2, rng);
  const KrausChannel e =
      eval_circuit(ast, {{"A", build_isometric_sp(u)}, {"B", build_isometric_sp(v)}});
  EXPECT_LT(choi_distance(e, build_ctrl_two_unitary(u, v).channel()), 1e-9);
  const KrausChannel swapped =
      eval_circuit(ast, {{"A", build_isometric_sp(v)}, {"B", build_isometric_sp(u)}});
  EXPECT_GT(choi_distance(swapped, build_ctrl_two_unitary(u, v).channel()), 1e-3);
}

TEST(Eval, RandomBindingsMatchTwoCtrl) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  Prng rng(5, 0);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_sp(2, 1 + t % 3, rng), b = random_sp(2, 1 + (t / 3) % 3, rng);
    EXPECT_LT(choi_distance(eval_circuit(ast, {{"A", a}, {"B", b}}), two_ctrl_apply(a, b).channel()),
              1e-9);
  }
}

TEST(Eval, BindingErrors) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  const PartitionedSpace s({1, 2});
  const RoutedKrausChannel id(s, s, Route::identity(2), identity_channel(3));
  auto code = [&](const std::map<std::string, RoutedKrausChannel>& b) {
    try {
      eval_circuit(ast, b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  EXPECT_EQ(code({{"A", id}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({{"A", id}, {"B", id}, {"Z", id}}), ErrorCode::kInvalidArgument);
  const PartitionedSpace s3({1, 3});
  EXPECT_EQ(code({{"A", id}, {"B", RoutedKrausChannel(s3, s3, Route::identity(2), identity_channel(4))}}),
            ErrorCode::kDimensionMismatch);
  // follows its own all-to-all route but not the slot's identity route
  ComplexMatrix x = zeros(3, 3);
  x(1, 0) = 1.0;
  x(0, 1) = 1.0;
  x(2, 2) = 1.0;
  Route all(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) all.set(i, j, true);
  EXPECT_EQ(code({{"A", id}, {"B", RoutedKrausChannel(s, s, all, unitary_channel(x))}}),
            ErrorCode::kRouteViolation);
}

TEST(Mutations, DeterministicAndCorrectlyLocated) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  const auto a = generate_mutations(ast, 20, 11), b = generate_mutations(ast, 20, 11);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].ast, b[i].ast);
    const RouteCheckReport r = check_circuit(a[i].ast);
    EXPECT_FALSE(r.ok) << a[i].description;
    bool found = false;
    for (const auto& v : r.violations)
      found = found || (v.kind == a[i].expected.kind && v.node == a[i].expected.node &&
                        v.in_sector == a[i].expected.in_sector &&
                        v.out_sector == a[i].expected.out_sector);
    EXPECT_TRUE(found) << a[i].description;
  }
  EXPECT_EQ(a[0].expected.kind, "leak");
  EXPECT_EQ(a[10].expected.kind, "route_shape");
}

TEST(Mutations, UntransposedDampingGateIsValid) {
  const CircuitAST ast = parse_circuit_file(kTwoCtrlFixture);
  for (const Mutation& m : generate_mutations(ast, 20, 2)) {
    if (m.description.rfind("damping", 0) != 0) continue;
    CircuitAST fixed = m.ast;
    for (auto& g : fixed.gates)
      if (g.name == m.expected.op) g.route.matrix = g.route.matrix->transpose();
    EXPECT_TRUE(check_circuit(fixed).ok) << m.description;
  }
}

}  // namespace
}  // namespace sectorctl
