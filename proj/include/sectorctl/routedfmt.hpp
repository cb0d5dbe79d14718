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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sectorctl/json_io.hpp"
#include "sectorctl/sectors.hpp"

namespace sectorctl {

// Text format, one statement per `;`:
//   wire NAME : [d0, d1, ...];
//   gate G : W1, W2 -> W3 route (id | [[0,1],...]) (kraus @file.json | embed);
//   slot A : Win -> Wout route (id | [[...]]);
//   input W1, W2;
//   apply OP (w1, w2) [-> (w3, ...)];
//   output W3, ...;
// `#` starts a comment. Signatures name wires whose declared partitions are
// the types. Route rows are output sector tuples, columns input tuples, both
// row-major over the listed wires. An `embed` gate is the order-preserving
// index-matching isometry between sector tuples its route pairs.

struct Position {
  int line = 0;
  int column = 0;
};

struct WireDecl {
  std::string name;
  PartitionedSpace type;
  Position pos;
};

struct RouteSpec {
  bool is_id = true;
  std::optional<Route> matrix;  // set when !is_id

  bool operator==(const RouteSpec& o) const {
    return is_id == o.is_id && matrix == o.matrix;
  }
};

enum class GateKind { kKraus, kEmbed };

struct GateDecl {
  std::string name;
  std::vector<std::string> in_types;
  std::vector<std::string> out_types;
  RouteSpec route;
  GateKind kind = GateKind::kEmbed;
  std::string kraus_path;       // as written
  std::optional<CPMap> kraus;   // loaded payload
  Position pos;
};

struct SlotDecl {
  std::string name;
  std::string in_type;
  std::string out_type;
  RouteSpec route;
  Position pos;
};

struct ApplyNode {
  std::string op;
  std::vector<std::string> in_wires;
  std::vector<std::string> out_wires;
  Position pos;
};

struct CircuitAST {
  std::vector<WireDecl> wires;
  std::vector<GateDecl> gates;
  std::vector<SlotDecl> slots;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<ApplyNode> nodes;

  const WireDecl* find_wire(const std::string& n) const;
  const GateDecl* find_gate(const std::string& n) const;
  const SlotDecl* find_slot(const std::string& n) const;
};

// Structural equality; source positions are ignored.
bool operator==(const CircuitAST& a, const CircuitAST& b);
inline bool operator!=(const CircuitAST& a, const CircuitAST& b) { return !(a == b); }

// Throws ParseError (line/column) on syntax errors, duplicate names, unknown
// references, wire type mismatches and slot-usage errors. Kraus payloads are
// loaded relative to base_dir.
CircuitAST parse_circuit(const std::string& text, const std::string& base_dir = ".");
CircuitAST parse_circuit_file(const std::string& path);
std::string print_circuit(const CircuitAST& ast);

// Resolved route of a gate or slot against its signature; nullopt when the
// declared matrix does not have the signature's shape.
std::optional<Route> resolve_route(const CircuitAST& ast, const RouteSpec& r,
                                   const std::vector<std::string>& in_types,
                                   const std::vector<std::string>& out_types);

struct Violation {
  std::string kind;  // leak, route_shape, kraus_shape, embed_ambiguous,
                     // embed_dim, non_total
  long node = -1;    // index into nodes
  std::string op;
  int line = 0;
  std::vector<std::size_t> in_sector;   // per-wire sector tuple
  std::vector<std::size_t> out_sector;
  double norm = 0.0;
  std::string message;
};

struct SlotObligation {
  std::string slot;
  std::size_t node;
  Route route;
};

struct NodeStatus {
  std::size_t node;
  std::string op;
  bool ok;
};

struct RouteCheckReport {
  bool ok = true;
  std::vector<NodeStatus> nodes;
  std::optional<Route> composed;  // output tuples x input tuples
  std::vector<Violation> violations;
  std::vector<SlotObligation> obligations;
};

RouteCheckReport check_circuit(const CircuitAST& ast, double tol = kEqTol);
Json check_report_to_json(const RouteCheckReport& r);

// Matrix of an embed gate (zero columns where the route has none).
ComplexMatrix embed_matrix(const CircuitAST& ast, const GateDecl& g);

KrausChannel eval_circuit(const CircuitAST& ast,
                          const std::map<std::string, RoutedKrausChannel>& bindings,
                          double tol = kEqTol);
// Same contraction without the trace-preservation requirement.
CPMap eval_circuit_map(const CircuitAST& ast,
                       const std::map<std::string, CPMap>& bindings);

// Checker mutations with the violation each one must produce.
struct Mutation {
  std::string description;
  CircuitAST ast;
  Violation expected;  // kind, node, in_sector, out_sector (and norm for leaks)
};

// First half leaking literal gates, second half transposed routes.
std::vector<Mutation> generate_mutations(const CircuitAST& base, std::size_t count,
                                         std::uint64_t seed);

}  // namespace sectorctl
