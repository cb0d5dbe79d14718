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

#include "register_ops.hpp"
#include "sectorctl/error.hpp"
#include "sectorctl/routedfmt.hpp"

namespace sectorctl {

namespace {

SectorLabels labels_of(const CircuitAST& ast, const std::vector<std::string>& wires) {
  std::vector<SectorLabels> parts;
  for (const auto& w : wires) parts.push_back(SectorLabels::of(ast.find_wire(w)->type));
  return SectorLabels::tensor(parts);
}

std::vector<detail::Factor> factors_of(const CircuitAST& ast, const std::vector<std::string>& wires) {
  std::vector<detail::Factor> out;
  for (const auto& w : wires) out.push_back({w, ast.find_wire(w)->type.dim()});
  return out;
}

}  // namespace

ComplexMatrix embed_matrix(const CircuitAST& ast, const GateDecl& g) {
  const std::optional<Route> r = resolve_route(ast, g.route, g.in_types, g.out_types);
  if (!r) throw Error(ErrorCode::kMalformed, "route of '" + g.name + "' does not fit its signature");
  const SectorLabels in = labels_of(ast, g.in_types);
  const SectorLabels out = labels_of(ast, g.out_types);
  std::vector<std::vector<std::size_t>> in_idx(in.num_sectors), out_idx(out.num_sectors);
  for (std::size_t i = 0; i < in.label.size(); ++i) in_idx[in.label[i]].push_back(i);
  for (std::size_t i = 0; i < out.label.size(); ++i) out_idx[out.label[i]].push_back(i);
  ComplexMatrix m = zeros(out.label.size(), in.label.size());
  for (std::size_t l = 0; l < r->rows(); ++l)
    for (std::size_t k = 0; k < r->cols(); ++k) {
      if (!r->at(l, k)) continue;
      const std::size_t n = std::min(in_idx[k].size(), out_idx[l].size());
      for (std::size_t j = 0; j < n; ++j) m(out_idx[l][j], in_idx[k][j]) = 1.0;
    }
  return m;
}

CPMap eval_circuit_map(const CircuitAST& ast, const std::map<std::string, CPMap>& bindings) {
  for (const auto& [name, m] : bindings)
    if (!ast.find_slot(name)) throw Error(ErrorCode::kInvalidArgument, "no slot named '" + name + "'");
  detail::KrausTracks tracks(factors_of(ast, ast.inputs));
  for (const auto& n : ast.nodes) {
    const auto produced = factors_of(ast, n.out_wires);
    if (const GateDecl* g = ast.find_gate(n.op)) {
      if (g->kind == GateKind::kEmbed) tracks.apply(n.in_wires, embed_matrix(ast, *g), produced);
      else tracks.apply(n.in_wires, g->kraus->kraus(), produced);
      continue;
    }
    const SlotDecl* s = ast.find_slot(n.op);
    auto it = bindings.find(s->name);
    if (it == bindings.end())
      throw Error(ErrorCode::kInvalidArgument, "slot '" + s->name + "' is not bound");
    if (it->second.dim_in() != ast.find_wire(s->in_type)->type.dim() ||
        it->second.dim_out() != ast.find_wire(s->out_type)->type.dim())
      throw Error(ErrorCode::kDimensionMismatch, "binding of '" + s->name + "' has wrong dimensions");
    tracks.apply(n.in_wires, it->second.kraus(), produced);
  }
  return tracks.finish(ast.outputs);
}

KrausChannel eval_circuit(const CircuitAST& ast,
                          const std::map<std::string, RoutedKrausChannel>& bindings, double tol) {
  std::map<std::string, CPMap> maps;
  for (const auto& [name, b] : bindings) {
    const SlotDecl* s = ast.find_slot(name);
    if (!s) throw Error(ErrorCode::kInvalidArgument, "no slot named '" + name + "'");
    const auto& tin = ast.find_wire(s->in_type)->type;
    const auto& tout = ast.find_wire(s->out_type)->type;
    if (b.space_in() != tin || b.space_out() != tout)
      throw Error(ErrorCode::kDimensionMismatch, "binding of '" + name + "' has the wrong type");
    const std::optional<Route> r = resolve_route(ast, s->route, {s->in_type}, {s->out_type});
    if (!r) throw Error(ErrorCode::kMalformed, "route of slot '" + name + "' does not fit its type");
    if (!follows_route(b.channel(), tin, tout, *r, tol))
      throw Error(ErrorCode::kRouteViolation, "binding of '" + name + "' does not follow the slot route");
    maps.emplace(name, b.channel().map());
  }
  return KrausChannel(eval_circuit_map(ast, maps), tol);
}

}  // namespace sectorctl
