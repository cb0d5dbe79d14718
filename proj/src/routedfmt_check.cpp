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

#include "sectorctl/error.hpp"
#include "sectorctl/routedfmt.hpp"

namespace sectorctl {

namespace {

std::vector<std::size_t> sector_counts(const CircuitAST& ast,
                                       const std::vector<std::string>& wires) {
  std::vector<std::size_t> out;
  for (const auto& w : wires) out.push_back(ast.find_wire(w)->type.num_sectors());
  return out;
}

std::size_t count_of(const std::vector<std::size_t>& c) {
  std::size_t n = 1;
  for (auto x : c) n *= x;
  return n;
}

std::vector<std::size_t> unflatten(std::size_t idx, const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> out(counts.size());
  for (std::size_t i = counts.size(); i-- > 0;) {
    out[i] = idx % counts[i];
    idx /= counts[i];
  }
  return out;
}

std::size_t flatten(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& counts) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) idx = idx * counts[i] + digits[i];
  return idx;
}

SectorLabels labels_of(const CircuitAST& ast, const std::vector<std::string>& wires) {
  std::vector<SectorLabels> parts;
  for (const auto& w : wires) parts.push_back(SectorLabels::of(ast.find_wire(w)->type));
  return SectorLabels::tensor(parts);
}

std::size_t dim_of(const CircuitAST& ast, const std::vector<std::string>& wires) {
  std::size_t n = 1;
  for (const auto& w : wires) n *= ast.find_wire(w)->type.dim();
  return n;
}

std::string tuple_text(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

// Route of a node lifted to the whole live register. `before` is the register
// before the node, `after` the register after it.
Route lift(const CircuitAST& ast, const Route& r, const ApplyNode& n,
           const std::vector<std::string>& before, const std::vector<std::string>& after) {
  const auto cb = sector_counts(ast, before);
  const auto ca = sector_counts(ast, after);
  const auto cin = sector_counts(ast, n.in_wires);
  const auto cout = sector_counts(ast, n.out_wires);
  Route out(count_of(ca), count_of(cb));
  std::vector<std::size_t> din(n.in_wires.size()), dout(n.out_wires.size());
  for (std::size_t col = 0; col < out.cols(); ++col) {
    const auto xb = unflatten(col, cb);
    for (std::size_t i = 0; i < n.in_wires.size(); ++i)
      din[i] = xb[std::find(before.begin(), before.end(), n.in_wires[i]) - before.begin()];
    const std::size_t kin = flatten(din, cin);
    for (std::size_t row = 0; row < out.rows(); ++row) {
      const auto xa = unflatten(row, ca);
      bool rest_ok = true;
      for (std::size_t i = 0; i < after.size() && rest_ok; ++i) {
        auto po = std::find(n.out_wires.begin(), n.out_wires.end(), after[i]);
        if (po != n.out_wires.end()) {
          dout[po - n.out_wires.begin()] = xa[i];
        } else {
          const std::size_t j = std::find(before.begin(), before.end(), after[i]) - before.begin();
          rest_ok = xa[i] == xb[j];
        }
      }
      if (rest_ok && r.at(flatten(dout, cout), kin)) out.set(row, col, true);
    }
  }
  return out;
}

std::vector<std::string> advance_register(const std::vector<std::string>& live, const ApplyNode& n) {
  std::size_t first = live.size();
  for (const auto& w : n.in_wires)
    first = std::min<std::size_t>(first, std::find(live.begin(), live.end(), w) - live.begin());
  std::vector<std::string> rest;
  std::size_t insert_at = rest.size();
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (i == first) insert_at = rest.size();
    if (std::find(n.in_wires.begin(), n.in_wires.end(), live[i]) == n.in_wires.end())
      rest.push_back(live[i]);
  }
  rest.insert(rest.begin() + insert_at, n.out_wires.begin(), n.out_wires.end());
  return rest;
}

}  // namespace

std::optional<Route> resolve_route(const CircuitAST& ast, const RouteSpec& r,
                                   const std::vector<std::string>& in_types,
                                   const std::vector<std::string>& out_types) {
  const std::size_t nin = count_of(sector_counts(ast, in_types));
  const std::size_t nout = count_of(sector_counts(ast, out_types));
  if (r.is_id) {
    if (nin != nout) return std::nullopt;
    return Route::identity(nin);
  }
  if (!r.matrix || r.matrix->rows() != nout || r.matrix->cols() != nin) return std::nullopt;
  return *r.matrix;
}

RouteCheckReport check_circuit(const CircuitAST& ast, double tol) {
  RouteCheckReport rep;
  std::vector<std::string> live = ast.inputs;
  std::optional<Route> composed = Route::identity(count_of(sector_counts(ast, live)));

  for (std::size_t ni = 0; ni < ast.nodes.size(); ++ni) {
    const ApplyNode& n = ast.nodes[ni];
    const std::size_t before_count = rep.violations.size();
    auto add = [&](const std::string& kind, std::vector<std::size_t> in_s,
                   std::vector<std::size_t> out_s, double norm, const std::string& msg) {
      rep.violations.push_back({kind, static_cast<long>(ni), n.op, n.pos.line,
                                std::move(in_s), std::move(out_s), norm, msg});
    };
    const GateDecl* g = ast.find_gate(n.op);
    const SlotDecl* s = ast.find_slot(n.op);
    const std::vector<std::string> in_t = g ? g->in_types : std::vector<std::string>{s->in_type};
    const std::vector<std::string> out_t = g ? g->out_types : std::vector<std::string>{s->out_type};
    const auto cin = sector_counts(ast, in_t);
    const auto cout = sector_counts(ast, out_t);
    const std::optional<Route> r = resolve_route(ast, g ? g->route : s->route, in_t, out_t);

    if (!r) {
      add("route_shape", {}, {}, 0.0,
          "route of '" + n.op + "' must be " + std::to_string(count_of(cout)) + "x" +
              std::to_string(count_of(cin)));
    } else if (g && g->kind == GateKind::kEmbed) {
      const auto in_space = labels_of(ast, in_t);
      const auto out_space = labels_of(ast, out_t);
      std::vector<std::size_t> in_sz(in_space.num_sectors), out_sz(out_space.num_sectors);
      for (auto l : in_space.label) ++in_sz[l];
      for (auto l : out_space.label) ++out_sz[l];
      for (std::size_t k = 0; k < r->cols(); ++k) {
        std::size_t hits = 0;
        for (std::size_t l = 0; l < r->rows(); ++l) hits += r->at(l, k);
        if (hits > 1)
          add("embed_ambiguous", unflatten(k, cin), {}, 0.0,
              "input sector " + tuple_text(unflatten(k, cin)) + " has several targets");
      }
      for (std::size_t l = 0; l < r->rows(); ++l) {
        std::size_t hits = 0;
        for (std::size_t k = 0; k < r->cols(); ++k) hits += r->at(l, k);
        if (hits > 1)
          add("embed_ambiguous", {}, unflatten(l, cout), 0.0,
              "output sector " + tuple_text(unflatten(l, cout)) + " has several sources");
        for (std::size_t k = 0; k < r->cols(); ++k)
          if (r->at(l, k) && in_sz[k] > out_sz[l])
            add("embed_dim", unflatten(k, cin), unflatten(l, cout), 0.0,
                "sector " + tuple_text(unflatten(k, cin)) + " does not fit into " +
                    tuple_text(unflatten(l, cout)));
      }
    } else {
      if (!r->is_total()) {
        for (std::size_t k = 0; k < r->cols(); ++k) {
          bool any = false;
          for (std::size_t l = 0; l < r->rows(); ++l) any = any || r->at(l, k);
          if (!any)
            add("non_total", unflatten(k, cin), {}, 0.0,
                "input sector " + tuple_text(unflatten(k, cin)) + " has no allowed output");
        }
      }
      if (g) {
        const CPMap& m = *g->kraus;
        if (m.dim_in() != dim_of(ast, in_t) || m.dim_out() != dim_of(ast, out_t)) {
          add("kraus_shape", {}, {}, 0.0,
              "Kraus payload of '" + g->name + "' is " + std::to_string(m.dim_out()) + "x" +
                  std::to_string(m.dim_in()) + ", expected " + std::to_string(dim_of(ast, out_t)) +
                  "x" + std::to_string(dim_of(ast, in_t)));
        } else {
          for (const Leak& lk : route_leaks(m.kraus(), labels_of(ast, in_t), labels_of(ast, out_t),
                                            *r, tol)) {
            const auto a = unflatten(lk.in_sector, cin);
            const auto b = unflatten(lk.out_sector, cout);
            add("leak", a, b, lk.norm,
                "'" + g->name + "' leaks from sector " + tuple_text(a) + " to " + tuple_text(b));
          }
        }
      } else {
        rep.obligations.push_back({s->name, ni, *r});
      }
    }

    const std::vector<std::string> next = advance_register(live, n);
    if (r && composed) composed = route_compose(lift(ast, *r, n, live, next), *composed);
    else composed.reset();
    live = next;
    rep.nodes.push_back({ni, n.op, rep.violations.size() == before_count});
  }

  if (composed) {
    // reorder rows from the final register to the declared output order
    const auto cl = sector_counts(ast, live);
    const auto co = sector_counts(ast, ast.outputs);
    Route perm(count_of(co), count_of(cl));
    std::vector<std::size_t> d(ast.outputs.size());
    for (std::size_t k = 0; k < perm.cols(); ++k) {
      const auto x = unflatten(k, cl);
      for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = x[std::find(live.begin(), live.end(), ast.outputs[i]) - live.begin()];
      perm.set(flatten(d, co), k, true);
    }
    composed = route_compose(perm, *composed);
  }
  rep.composed = composed;
  rep.ok = rep.violations.empty();
  return rep;
}

Json check_report_to_json(const RouteCheckReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["nodes"] = Json::array();
  for (const auto& n : r.nodes) j["nodes"].push_back({{"node", n.node}, {"op", n.op}, {"ok", n.ok}});
  j["composed"] = r.composed ? route_to_json(*r.composed) : Json(nullptr);
  j["violations"] = Json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"kind", v.kind},
                               {"node", v.node},
                               {"op", v.op},
                               {"line", v.line},
                               {"in_sector", v.in_sector},
                               {"out_sector", v.out_sector},
                               {"norm", v.norm},
                               {"message", v.message}});
  j["obligations"] = Json::array();
  for (const auto& o : r.obligations)
    j["obligations"].push_back({{"slot", o.slot}, {"node", o.node}, {"route", route_to_json(o.route)}});
  return j;
}

}  // namespace sectorctl
