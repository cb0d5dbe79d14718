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

#include <algorithm>
#include <cmath>

#include "sectorctl/error.hpp"
#include "sectorctl/prng.hpp"
#include "sectorctl/routedfmt.hpp"

namespace sectorctl {

namespace {

std::vector<std::string> live_before(const CircuitAST& ast, std::size_t pos) {
  std::vector<std::string> live = ast.inputs;
  for (std::size_t i = 0; i < pos; ++i) {
    const ApplyNode& n = ast.nodes[i];
    std::size_t first = live.size();
    for (const auto& w : n.in_wires)
      first = std::min<std::size_t>(first, std::find(live.begin(), live.end(), w) - live.begin());
    std::vector<std::string> rest;
    std::size_t at = 0;
    for (std::size_t k = 0; k < live.size(); ++k) {
      if (k == first) at = rest.size();
      if (std::find(n.in_wires.begin(), n.in_wires.end(), live[k]) == n.in_wires.end())
        rest.push_back(live[k]);
    }
    rest.insert(rest.begin() + at, n.out_wires.begin(), n.out_wires.end());
    live = std::move(rest);
  }
  return live;
}

bool name_taken(const CircuitAST& ast, const std::string& n) {
  return ast.find_gate(n) || ast.find_slot(n);
}

std::string fresh(const CircuitAST& ast, const std::string& stem) {
  std::string n = stem;
  for (int k = 2; name_taken(ast, n); ++k) n = stem + "_" + std::to_string(k);
  return n;
}

// (position, wire) with a wire of at least two sectors live before that node
std::pair<std::size_t, std::string> pick_site(const CircuitAST& ast, Prng& rng) {
  std::vector<std::pair<std::size_t, std::string>> sites;
  for (std::size_t p = 0; p <= ast.nodes.size(); ++p)
    for (const auto& w : live_before(ast, p))
      if (ast.find_wire(w)->type.num_sectors() >= 2) sites.push_back({p, w});
  if (sites.empty())
    throw Error(ErrorCode::kInvalidArgument, "circuit has no partitioned wire to mutate");
  return sites[rng.uniform_index(sites.size())];
}

std::pair<std::size_t, std::size_t> pick_sector_pair(std::size_t n, Prng& rng) {
  const std::size_t a = rng.uniform_index(n);
  std::size_t b = rng.uniform_index(n - 1);
  if (b >= a) ++b;
  return {a, b};
}

CircuitAST insert_gate(const CircuitAST& base, GateDecl g, std::size_t pos, const std::string& wire) {
  CircuitAST ast = base;
  ApplyNode n{g.name, {wire}, {wire}, {}};
  ast.gates.push_back(std::move(g));
  ast.nodes.insert(ast.nodes.begin() + pos, std::move(n));
  return ast;
}

Mutation leak_mutation(const CircuitAST& base, std::size_t i, Prng& rng) {
  const auto [pos, wire] = pick_site(base, rng);
  const PartitionedSpace& t = base.find_wire(wire)->type;
  const auto [k, l] = pick_sector_pair(t.num_sectors(), rng);
  ComplexMatrix m = identity(t.dim());
  m(t.offset(l), t.offset(k)) = 0.5;
  GateDecl g;
  g.name = fresh(base, "Leak" + std::to_string(i));
  g.in_types = g.out_types = {wire};
  g.kind = GateKind::kKraus;
  g.kraus_path = g.name + ".json";
  g.kraus = CPMap(t.dim(), t.dim(), {m});
  Mutation mu;
  mu.description = "leaking gate " + g.name + " on " + wire + " from sector " + std::to_string(k) +
                   " to " + std::to_string(l);
  mu.expected.kind = "leak";
  mu.expected.node = static_cast<long>(pos);
  mu.expected.op = g.name;
  mu.expected.in_sector = {k};
  mu.expected.out_sector = {l};
  mu.expected.norm = 0.5;
  mu.ast = insert_gate(base, std::move(g), pos, wire);
  return mu;
}

// Amplitude damping from sector b into sector a; legal under identity + (a <- b).
Mutation damping_mutation(const CircuitAST& base, std::size_t j, Prng& rng) {
  const auto [pos, wire] = pick_site(base, rng);
  const PartitionedSpace& t = base.find_wire(wire)->type;
  const auto [a, b] = pick_sector_pair(t.num_sectors(), rng);
  const double p = 0.2 + 0.6 * rng.uniform();
  ComplexMatrix k0 = identity(t.dim());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t x = 0; x < t.sector_dim(b); ++x) {
    k0(t.offset(b) + x, t.offset(b) + x) = std::sqrt(1.0 - p);
    ComplexMatrix k1 = zeros(t.dim(), t.dim());
    k1(t.offset(a), t.offset(b) + x) = std::sqrt(p);
    kraus.push_back(std::move(k1));
  }
  kraus.insert(kraus.begin(), k0);
  Route r = Route::identity(t.num_sectors());
  r.set(a, b, true);
  GateDecl g;
  g.name = fresh(base, "Damp" + std::to_string(j));
  g.in_types = g.out_types = {wire};
  g.kind = GateKind::kKraus;
  g.kraus_path = g.name + ".json";
  g.kraus = CPMap(t.dim(), t.dim(), std::move(kraus));
  g.route.is_id = false;
  g.route.matrix = r.transpose();
  Mutation mu;
  mu.description = "damping gate " + g.name + " on " + wire + " with transposed route";
  mu.expected.kind = "leak";
  mu.expected.node = static_cast<long>(pos);
  mu.expected.op = g.name;
  mu.expected.in_sector = {b};
  mu.expected.out_sector = {a};
  mu.expected.norm = std::sqrt(p);
  mu.ast = insert_gate(base, std::move(g), pos, wire);
  return mu;
}

}  // namespace

std::vector<Mutation> generate_mutations(const CircuitAST& base, std::size_t count,
                                         std::uint64_t seed) {
  Prng rng(seed, 0x6d7574);
  std::vector<Mutation> out;
  const std::size_t n_leak = (count + 1) / 2;
  for (std::size_t i = 0; i < n_leak; ++i) out.push_back(leak_mutation(base, i, rng));

  // gates whose transposed route no longer fits the signature
  std::vector<std::size_t> shaped;
  for (std::size_t gi = 0; gi < base.gates.size(); ++gi) {
    const GateDecl& g = base.gates[gi];
    if (!g.route.is_id && g.route.matrix->rows() != g.route.matrix->cols()) shaped.push_back(gi);
  }
  for (std::size_t j = 0; n_leak + j < count; ++j) {
    if (j < shaped.size()) {
      const GateDecl& g = base.gates[shaped[j]];
      long node = -1;
      for (std::size_t ni = 0; ni < base.nodes.size() && node < 0; ++ni)
        if (base.nodes[ni].op == g.name) node = static_cast<long>(ni);
      if (node < 0) continue;
      Mutation mu;
      mu.description = "transposed route of " + g.name;
      mu.ast = base;
      mu.ast.gates[shaped[j]].route.matrix = g.route.matrix->transpose();
      mu.expected.kind = "route_shape";
      mu.expected.node = node;
      mu.expected.op = g.name;
      out.push_back(std::move(mu));
    } else {
      out.push_back(damping_mutation(base, j, rng));
    }
  }
  return out;
}

}  // namespace sectorctl
