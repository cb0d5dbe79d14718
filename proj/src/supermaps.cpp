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

#include "sectorctl/supermaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "register_ops.hpp"
#include "sectorctl/error.hpp"

namespace sectorctl {

using detail::Factor;
using detail::KrausTracks;

const char* supermap_name(SupermapName n) {
  switch (n) {
    case SupermapName::kCtrl: return "CTRL";
    case SupermapName::kCtrlInv: return "CTRL_INV";
    case SupermapName::kTwoCtrl: return "TWO_CTRL";
    case SupermapName::kCtrl2: return "CTRL_2";
    case SupermapName::kTwoCtrlE: return "TWO_CTRL_E";
  }
  return "?";
}

namespace {

ComplexMatrix maximally_mixed(std::size_t n) {
  return identity(n) / static_cast<double>(n);
}

// Controlled swap of two wires of dimension s: |c, a, b> -> |c, b, a> if c = 1.
std::vector<std::size_t> cswap_perm(std::size_t s) {
  std::vector<std::size_t> p(2 * s * s);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        p[(c * s + a) * s + b] = c == 1 ? (c * s + b) * s + a : (c * s + a) * s + b;
  return p;
}

// Controlled cyclic permutation of three wires. On |1>, the first wire
// receives the second wire's content, the second the third's and the third
// the first's; |2> applies the inverse; |0> does nothing.
std::vector<std::size_t> cperm(std::size_t s, bool inverse) {
  std::vector<std::size_t> p(3 * s * s * s);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        for (std::size_t x = 0; x < s; ++x) {
          std::size_t y[3] = {a, b, x};
          std::size_t shift = c;  // left rotation count
          if (inverse) shift = (3 - c) % 3;
          std::size_t z[3];
          for (std::size_t w = 0; w < 3; ++w) z[w] = y[(w + shift) % 3];
          p[((c * s + a) * s + b) * s + x] = ((c * s + z[0]) * s + z[1]) * s + z[2];
        }
  return p;
}

bool is_permutation(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::size_t x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

void SupermapSpec::validate() const {
  if (!is_isometry(prepare, 1e-12))
    throw Error(ErrorCode::kMalformed, "preparation is not an isometry");
  if (!is_hermitian(rho0, 1e-12) || std::abs(rho0.trace() - Complex(1.0)) > 1e-12 ||
      eig_hermitian(rho0).values(0) < -1e-12)
    throw Error(ErrorCode::kMalformed, "rho0 is not a density matrix");
  if (!is_permutation(perm_in) || !is_permutation(perm_out))
    throw Error(ErrorCode::kMalformed, "controlled permutation is not a bijection");
  std::vector<bool> hit(rho0.rows(), false);
  for (long s : decoder) {
    if (s < 0) continue;
    if (s >= rho0.rows() || hit[s])
      throw Error(ErrorCode::kMalformed, "decoder selection is not injective");
    hit[s] = true;
  }
}

SupermapSpec ctrl_spec(std::size_t d) {
  const std::size_t s = d + 1;
  SupermapSpec sp{SupermapName::kCtrl, 2, d, d, 1, s, s,
                  PartitionedSpace({1, d}), PartitionedSpace({1, d}),
                  zeros(s * s, d), std::vector<long>(2 * s * s, -1),
                  maximally_mixed(2 * d), cswap_perm(s), cswap_perm(s)};
  // V|t> = |1 + t> on the first wire, |s0> = |0> on the second
  for (std::size_t t = 0; t < d; ++t) sp.prepare((1 + t) * s, t) = 1.0;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t a = 1; a < s; ++a) sp.decoder[(c * s + a) * s] = c * d + (a - 1);
  return sp;
}

SupermapSpec two_ctrl_spec(std::size_t d_in, std::size_t d_out, std::size_t env_dim) {
  const std::size_t si = d_in + 1, so = d_out * env_dim + 1;
  SupermapSpec sp{env_dim == 1 ? SupermapName::kTwoCtrl : SupermapName::kTwoCtrlE,
                  2, d_in, d_out, env_dim, si, so,
                  PartitionedSpace({1, d_in}), PartitionedSpace({1, d_out * env_dim}),
                  zeros(si * si, d_in), std::vector<long>(2 * so * so, -1),
                  maximally_mixed(2 * d_out * env_dim), cswap_perm(si), cswap_perm(so)};
  for (std::size_t t = 0; t < d_in; ++t) sp.prepare((1 + t) * si, t) = 1.0;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t a = 1; a < so; ++a)
      sp.decoder[(c * so + a) * so] = c * (so - 1) + (a - 1);
  return sp;
}

SupermapSpec ctrl2_spec(std::size_t d) {
  const std::size_t s = d + 2;
  SupermapSpec sp{SupermapName::kCtrl2, 3, d, d, 1, s, s,
                  PartitionedSpace({d, 1, 1}), PartitionedSpace({d, 1, 1}),
                  zeros(s * s * s, d), std::vector<long>(3 * s * s * s, -1),
                  maximally_mixed(3 * d), cperm(s, false), cperm(s, true)};
  // embed the target into sector 0 of the first wire, |s1> = |d>, |s2> = |d+1>
  for (std::size_t t = 0; t < d; ++t) sp.prepare((t * s + d) * s + d + 1, t) = 1.0;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < d; ++a)
      sp.decoder[((c * s + a) * s + d) * s + d + 1] = c * d + a;
  return sp;
}

SupermapSpec ctrl_inverse_spec(std::size_t d) {
  const std::size_t s = d + 1;
  SupermapSpec sp{SupermapName::kCtrlInv, 2, d, d, 1, s, s,
                  PartitionedSpace({1, d}), PartitionedSpace({1, d}),
                  zeros(2 * d, s), std::vector<long>(2 * d, -1),
                  maximally_mixed(s), {}, {}};
  // V|0> = |0>|phi0> with phi0 = e_0, V|1 + t> = |1>|t>
  sp.prepare(0, 0) = 1.0;
  sp.decoder[0] = 0;
  for (std::size_t t = 0; t < d; ++t) {
    sp.prepare(d + t, 1 + t) = 1.0;
    sp.decoder[d + t] = 1 + t;
  }
  return sp;
}

namespace {

struct Insertion {
  const CPMap* channel;
  std::size_t wire;
  std::size_t x_in;
  std::size_t x_out;
};

// Prepare, permute, insert channels on wires, permute back, decode.
CPMap run_wire_circuit(const SupermapSpec& sp, const std::vector<Insertion>& inserts,
                       const CircuitOptions& opts) {
  sp.validate();
  const std::size_t nw = sp.name == SupermapName::kCtrl2 ? 3 : 2;
  std::vector<std::string> wires;
  for (std::size_t w = 0; w < nw; ++w) wires.push_back("S" + std::to_string(w));
  std::vector<Factor> inputs = {{"C", sp.control_dim}, {"T", sp.target_in}};
  for (std::size_t i = 0; i < inserts.size(); ++i)
    inputs.push_back({"X" + std::to_string(i), inserts[i].x_in});
  KrausTracks k(inputs);

  std::vector<Factor> prepared;
  for (const auto& w : wires) prepared.push_back({w, sp.wire_in});
  k.apply({"T"}, sp.prepare, prepared);

  std::vector<std::string> ctl_wires = {"C"};
  ctl_wires.insert(ctl_wires.end(), wires.begin(), wires.end());
  k.permute(ctl_wires, sp.perm_in);

  for (std::size_t i = 0; i < inserts.size(); ++i) {
    const Insertion& ins = inserts[i];
    const std::string x = "X" + std::to_string(i);
    if (ins.channel->dim_in() != sp.wire_in * ins.x_in ||
        ins.channel->dim_out() != sp.wire_out * ins.x_out)
      throw Error(ErrorCode::kDimensionMismatch, "inserted channel does not fit its wire");
    k.apply({wires[ins.wire], x}, ins.channel->kraus(),
            {{wires[ins.wire], sp.wire_out}, {x, ins.x_out}});
  }
  if (!opts.drop_second_swap) k.permute(ctl_wires, sp.perm_out);

  std::vector<Factor> decoded = {{"C", sp.control_dim}, {"T", sp.target_out}};
  if (sp.env_dim > 1) decoded.push_back({"E", sp.env_dim});
  const ComplexMatrix rho0 = opts.rho0 ? *opts.rho0 : sp.rho0;
  k.decode(ctl_wires, sp.decoder, decoded, rho0);
  if (sp.env_dim > 1) {
    std::vector<ComplexMatrix> bras;
    for (std::size_t e = 0; e < sp.env_dim; ++e) bras.push_back(ket_bra(1, 0, sp.env_dim, e));
    k.apply({"E"}, bras, {});
  }
  std::vector<std::string> order = {"C", "T"};
  for (std::size_t i = 0; i < inserts.size(); ++i) order.push_back("X" + std::to_string(i));
  return k.finish(order);
}

}  // namespace

CPMap ctrl_circuit(const CPMap& channel, std::size_t d, std::size_t x_in,
                   std::size_t x_out, const CircuitOptions& opts) {
  const SupermapSpec sp = ctrl_spec(d);
  return run_wire_circuit(sp, {{&channel, 1, x_in, x_out}}, opts);
}

CPMap two_ctrl_circuit(const CPMap& a, const CPMap& b, std::size_t d_in, std::size_t d_out,
                       std::size_t env_dim, std::size_t xa_in, std::size_t xa_out,
                       std::size_t xb_in, std::size_t xb_out, const CircuitOptions& opts) {
  const SupermapSpec sp = two_ctrl_spec(d_in, d_out, env_dim);
  return run_wire_circuit(sp, {{&a, 0, xa_in, xa_out}, {&b, 1, xb_in, xb_out}}, opts);
}

CPMap ctrl2_circuit(const CPMap& channel, std::size_t d, std::size_t x_in,
                    std::size_t x_out, const CircuitOptions& opts) {
  const SupermapSpec sp = ctrl2_spec(d);
  return run_wire_circuit(sp, {{&channel, 0, x_in, x_out}}, opts);
}

CPMap ctrl_inverse_circuit(const CPMap& controlled, std::size_t d,
                           const CircuitOptions& opts) {
  const SupermapSpec sp = ctrl_inverse_spec(d);
  sp.validate();
  if (controlled.dim_in() != 2 * d || controlled.dim_out() != 2 * d)
    throw Error(ErrorCode::kDimensionMismatch, "controlled channel has wrong dimensions");
  KrausTracks k({{"S", d + 1}});
  k.apply({"S"}, sp.prepare, {{"C", 2}, {"T", d}});
  k.apply({"C", "T"}, controlled.kraus(), {{"C", 2}, {"T", d}});
  k.decode({"C", "T"}, sp.decoder, {{"S", d + 1}}, opts.rho0 ? *opts.rho0 : sp.rho0);
  return k.finish({"S"});
}

ControlledChannel ctrl_apply(const SectorPreserving1d& s, const CircuitOptions& opts) {
  const std::size_t d = s.d();
  const CPMap out = ctrl_circuit(s.channel().map(), d, 1, 1, opts);
  return ControlledChannel(2, d, d, KrausChannel(out));
}

SectorPreserving1d ctrl_inverse_apply(const ControlledChannel& cc, const CircuitOptions& opts) {
  const std::size_t d = cc.target_in();
  if (cc.control_dim() != 2 || cc.target_out() != d)
    throw Error(ErrorCode::kMalformed, "expected a qubit-controlled channel on a square target");
  if (!channels_equal(cc.branch(0), identity_channel(d)))
    throw Error(ErrorCode::kMalformed, "control branch 0 is not the identity");
  const CPMap out = ctrl_inverse_circuit(cc.channel().map(), d, opts);
  PartitionedSpace s({1, d});
  try {
    return SectorPreserving1d(
        RoutedKrausChannel(s, s, Route::identity(2), KrausChannel(out)));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, std::string("input is not of controlled form: ") + e.what());
  }
}

namespace {

void require_sp_type(const RoutedKrausChannel& c, const char* what) {
  const auto& si = c.space_in();
  const auto& so = c.space_out();
  if (si.num_sectors() != 2 || so.num_sectors() != 2 || si.sector_dim(0) != 1 ||
      so.sector_dim(0) != 1 || !c.route().is_identity())
    throw Error(ErrorCode::kRouteViolation,
                std::string(what) + ": expected type (1, d_in) -> (1, d_out) with identity route");
}

}  // namespace

ControlledChannel two_ctrl_e_apply(const RoutedKrausChannel& a, const RoutedKrausChannel& b,
                                   std::size_t env_dim) {
  require_sp_type(a, "2-CTRL");
  require_sp_type(b, "2-CTRL");
  if (a.space_in() != b.space_in() || a.space_out() != b.space_out())
    throw Error(ErrorCode::kDimensionMismatch, "2-CTRL inputs have different types");
  if (env_dim == 0 || a.space_out().sector_dim(1) % env_dim != 0)
    throw Error(ErrorCode::kDimensionMismatch, "output sector does not factor through E");
  const std::size_t din = a.space_in().sector_dim(1);
  const std::size_t dout = a.space_out().sector_dim(1) / env_dim;
  const CPMap out = two_ctrl_circuit(a.channel().map(), b.channel().map(), din, dout, env_dim);
  return ControlledChannel(2, din, dout, KrausChannel(out));
}

ControlledChannel two_ctrl_apply(const RoutedKrausChannel& a, const RoutedKrausChannel& b) {
  return two_ctrl_e_apply(a, b, 1);
}

ControlledChannel ctrl2_apply(const RoutedKrausChannel& s) {
  const auto& si = s.space_in();
  if (si.num_sectors() != 3 || si.sector_dim(1) != 1 || si.sector_dim(2) != 1 ||
      s.space_out() != si || !s.route().is_identity())
    throw Error(ErrorCode::kRouteViolation,
                "CTRL_2: expected type (d, 1, 1) with identity route");
  const std::size_t d = si.sector_dim(0);
  const CPMap out = ctrl2_circuit(s.channel().map(), d);
  return ControlledChannel(3, d, d, KrausChannel(out));
}

namespace {

// Partition of control (x) target by control value: sectors (t, t, ...).
PartitionedSpace control_partition(std::size_t control_dim, std::size_t t) {
  return PartitionedSpace(std::vector<std::size_t>(control_dim, t));
}

}  // namespace

RoutedSupermap ctrl_supermap(std::size_t d, const CircuitOptions& opts) {
  RoutedSupermap s{opts.drop_second_swap ? "CTRL (second swap dropped)" : "CTRL",
                   {{PartitionedSpace({1, d}), PartitionedSpace({1, d}), Route::identity(2)}},
                   {control_partition(2, d), control_partition(2, d), Route::identity(2)},
                   {}};
  s.apply = [d, opts](const std::vector<CPMap>& in, const std::vector<AuxDims>& aux) {
    return ctrl_circuit(in.at(0), d, aux.at(0).in, aux.at(0).out, opts);
  };
  return s;
}

RoutedSupermap two_ctrl_supermap(std::size_t d_in, std::size_t d_out) {
  RoutedType slot{PartitionedSpace({1, d_in}), PartitionedSpace({1, d_out}), Route::identity(2)};
  RoutedSupermap s{"2-CTRL",
                   {slot, slot},
                   {control_partition(2, d_in), control_partition(2, d_out), Route::identity(2)},
                   {}};
  s.apply = [d_in, d_out](const std::vector<CPMap>& in, const std::vector<AuxDims>& aux) {
    return two_ctrl_circuit(in.at(0), in.at(1), d_in, d_out, 1, aux.at(0).in, aux.at(0).out,
                            aux.at(1).in, aux.at(1).out);
  };
  return s;
}

RoutedSupermap ctrl2_supermap(std::size_t d) {
  RoutedSupermap s{"CTRL_2",
                   {{PartitionedSpace({d, 1, 1}), PartitionedSpace({d, 1, 1}), Route::identity(3)}},
                   {control_partition(3, d), control_partition(3, d), Route::identity(3)},
                   {}};
  s.apply = [d](const std::vector<CPMap>& in, const std::vector<AuxDims>& aux) {
    return ctrl2_circuit(in.at(0), d, aux.at(0).in, aux.at(0).out);
  };
  return s;
}

VerifyReport verify_routed_supermap(const RoutedSupermap& s,
                                    const std::vector<std::size_t>& aux_dims,
                                    std::size_t trials, std::uint64_t seed, double tol) {
  if (aux_dims.empty()) throw Error(ErrorCode::kInvalidArgument, "aux_dims is empty");
  VerifyReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    Prng rng(seed, t);
    std::vector<CPMap> inputs;
    std::vector<AuxDims> aux;
    std::size_t x_in = 1, x_out = 1;
    for (const auto& slot : s.slots) {
      AuxDims a{aux_dims[rng.uniform_index(aux_dims.size())],
                aux_dims[rng.uniform_index(aux_dims.size())]};
      const std::size_t env = 1 + rng.uniform_index(3);
      inputs.push_back(random_route_follower(SectorLabels::of(slot.in).with_aux(a.in),
                                             SectorLabels::of(slot.out).with_aux(a.out),
                                             slot.route, env, rng));
      aux.push_back(a);
      x_in *= a.in;
      x_out *= a.out;
    }
    const CPMap out = s.apply(inputs, aux);
    const double leak = max_route_leakage(out.kraus(), SectorLabels::of(s.output.in).with_aux(x_in),
                                          SectorLabels::of(s.output.out).with_aux(x_out),
                                          s.output.route);
    const double defect = out.tp_defect();
    ++rep.trials;
    rep.worst_leakage = std::max(rep.worst_leakage, leak);
    rep.worst_tp_defect = std::max(rep.worst_tp_defect, defect);
    if (leak <= tol && defect <= tol) ++rep.passes;
    else rep.failures.push_back({t, aux, leak, defect});
  }
  return rep;
}

}  // namespace sectorctl
