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

#include "sectorctl/suites.hpp"

#include <stdlib.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>

#include "sectorctl/control.hpp"
#include "sectorctl/error.hpp"
#include "sectorctl/routedfmt.hpp"
#include "sectorctl/supermaps.hpp"

#ifndef SECTORCTL_VERSION
#define SECTORCTL_VERSION "0.0.0"
#endif

namespace sectorctl {

namespace {

struct Case {
  std::string name;
  std::size_t trials = 0;
  double max_distance = 0.0;
  double min_gap = INFINITY;  // gap cases: distances that must stay large
  bool gap_case = false;
  bool passed = true;
  Json extra = Json::object();

  void record(double distance, bool ok) {
    ++trials;
    if (std::isfinite(distance)) max_distance = std::max(max_distance, distance);
    else max_distance = INFINITY;
    passed = passed && ok;
  }
  void record_gap(double gap, bool ok) {
    ++trials;
    gap_case = true;
    min_gap = std::min(min_gap, gap);
    passed = passed && ok;
  }
  void fail(const std::string& why) {
    if (passed) extra["first_failure"] = why;
    passed = false;
  }
  Json to_json() const {
    Json j = {{"name", name},
              {"passed", passed},
              {"trials", trials},
              {"max_distance", std::isfinite(max_distance) && !gap_case ? Json(max_distance)
                                                                         : Json(nullptr)}};
    if (gap_case) j["min_gap"] = std::isfinite(min_gap) ? Json(min_gap) : Json(nullptr);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  }
};

using Cases = std::vector<Case>;

std::vector<Complex> to_list(const ComplexVector& v) {
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

std::size_t pick(const std::vector<std::size_t>& v, Prng& rng) {
  return v[rng.uniform_index(v.size())];
}

PinnedChannel random_pinned(std::size_t d, std::size_t rank, Prng& rng) {
  const KrausChannel c = random_cptp(d, d, rank, rng);
  return canonicalize_pinned(c.kraus(), to_list(random_unit_vector(rank, rng)));
}

RoutedKrausChannel random_sp(std::size_t din, std::size_t dout, std::size_t env, Prng& rng) {
  const PartitionedSpace si({1, din}), so({1, dout});
  const CPMap m = random_route_follower(SectorLabels::of(si), SectorLabels::of(so),
                                        Route::identity(2), env, rng);
  return RoutedKrausChannel(si, so, Route::identity(2), KrausChannel(m));
}

std::size_t env_draw(Prng& rng) { return 1 + rng.uniform_index(3); }

// ---- individual suites ------------------------------------------------------

Cases suite_ctrl_equiv(const SuiteConfig& c) {
  Cases out;
  const std::size_t trials = c.trials ? c.trials : 200;
  std::uint64_t stream = 0;
  for (std::size_t d : c.dims) {
    for (std::size_t rank = 1; rank <= 3; ++rank) {
      Case k{"d=" + std::to_string(d) + " rank=" + std::to_string(rank)};
      Prng rng(c.seed, ++stream);
      for (std::size_t t = 0; t < trials; ++t) {
        const PinnedChannel p = random_pinned(d, rank, rng);
        const ControlledChannel circuit = ctrl_apply(build_sector_preserving_1d(p));
        const ControlledChannel direct = build_pinned_control(p);
        const double dist = choi_distance(circuit.channel(), direct.channel());
        k.record(dist, dist <= c.tol);
      }
      out.push_back(std::move(k));
    }
  }
  return out;
}

Cases suite_ctrl_unitary(const SuiteConfig& c) {
  Cases out;
  const std::size_t trials = c.trials ? c.trials : 100;
  std::uint64_t stream = 100;
  for (std::size_t d : c.dims) {
    Case k{"d=" + std::to_string(d)};
    Prng rng(c.seed, ++stream);
    std::size_t max_rank = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ComplexMatrix u = random_unitary(d, rng);
      const ControlledChannel cc = ctrl_apply(SectorPreserving1d(build_isometric_sp(u)));
      const std::size_t rank = choi_rank(choi(cc.channel()));
      max_rank = std::max(max_rank, rank);
      const double dist = choi_distance(cc.channel(), build_ctrl_unitary(u).channel());
      k.record(dist, dist <= c.tol && rank == 1);
    }
    k.extra["max_choi_rank"] = max_rank;
    out.push_back(std::move(k));
  }
  return out;
}

Cases suite_roundtrip(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 200;
  Case fwd{"inverse after ctrl on sector-preserving inputs"};
  Case bwd{"ctrl after inverse on pinned-control inputs"};
  Prng rf(c.seed, 201), rb(c.seed, 202);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rf);
    const SectorPreserving1d s(random_sp(d, d, env_draw(rf), rf));
    const SectorPreserving1d back = ctrl_inverse_apply(ctrl_apply(s));
    const double d1 = choi_distance(back.channel(), s.channel());
    fwd.record(d1, d1 <= c.tol);
  }
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rb);
    const ControlledChannel cc = build_pinned_control(random_pinned(d, 1 + rb.uniform_index(3), rb));
    const ControlledChannel back = ctrl_apply(ctrl_inverse_apply(cc));
    const double d2 = choi_distance(back.channel(), cc.channel());
    bwd.record(d2, d2 <= c.tol);
  }
  return {fwd, bwd};
}

Cases suite_pins(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 300;
  const double fine = c.tol / 10;  // pinned at 1e-10 by default
  Case canon{"amplitude form equals canonical pinned form"};
  Case mixed{"equal pins give equal channels"};
  Case block{"control off-diagonal block equals the pin"};
  Case distinct{"distinct pins give distinct channels"};
  Case rebuild{"extract then rebuild"};
  Prng rng(c.seed, 301);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rng);
    const std::size_t rank = 1 + rng.uniform_index(3);
    const KrausChannel ch = random_cptp(d, d, rank, rng);
    const auto amps = to_list(random_unit_vector(rank, rng));
    const PinnedChannel p = canonicalize_pinned(ch.kraus(), amps);
    const ControlledChannel cc = build_pinned_control(p);

    const double d_canon =
        choi_distance(build_amplitude_control(ch.kraus(), amps).channel(), cc.channel());
    canon.record(d_canon, d_canon <= c.tol);

    // same pin, remaining Kraus operators mixed
    std::vector<ComplexMatrix> rest(p.channel().kraus().begin() + 1, p.channel().kraus().end());
    std::vector<ComplexMatrix> list{p.pin()};
    if (!rest.empty()) {
      const auto m = mix_kraus(rest, random_unitary(rest.size(), rng));
      list.insert(list.end(), m.begin(), m.end());
    }
    const PinnedChannel p2(KrausChannel(d, d, list), p.pin());
    const double d_mixed = choi_distance(build_pinned_control(p2).channel(), cc.channel());
    mixed.record(d_mixed, d_mixed <= c.tol);

    const double d_block = frobenius_distance(cross_block(cc, 1, 0), p.pin());
    block.record(d_block, d_block <= fine);

    // another pin of the same channel
    const auto amps2 = to_list(random_unit_vector(rank, rng));
    const PinnedChannel q = canonicalize_pinned(ch.kraus(), amps2);
    const ControlledChannel cq = build_pinned_control(q);
    const double pin_gap = frobenius_distance(q.pin(), p.pin());
    const double ch_gap = choi_distance(cq.channel(), cc.channel());
    const double block_gap =
        frobenius_distance(cross_block(cq, 1, 0) - cross_block(cc, 1, 0), q.pin() - p.pin());
    distinct.record(block_gap, block_gap <= fine && ch_gap + fine >= pin_gap);

    const PinnedChannel e = extract_pin(build_sector_preserving_1d(p));
    const double d_rebuild = std::max(choi_distance(build_pinned_control(e).channel(), cc.channel()),
                                      frobenius_distance(e.pin(), p.pin()));
    rebuild.record(d_rebuild, d_rebuild <= fine);
  }
  return {canon, mixed, block, distinct, rebuild};
}

Cases suite_two_control(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 100;
  Case same{"equal prefixes give equal controlled channels"};
  Case perturbed{"perturbed prefix differs by at least half the perturbation"};
  Prng rng(c.seed, 401);
  double worst_ratio = INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rng);
    const std::size_t n = 1 + rng.uniform_index(std::min<std::size_t>(3, d * d - 2));
    const KrausChannel a = minimal_kraus(random_cptp(d, d, n, rng));
    const std::size_t na = a.kraus().size();
    const KrausChannel b = random_cptp(d, d, na + 1 + rng.uniform_index(2), rng);
    const auto& bk = b.kraus();
    std::vector<ComplexMatrix> b1(bk.begin(), bk.begin() + na);

    // a different Kraus list of B with the same prefix
    std::vector<ComplexMatrix> tail(bk.begin() + na, bk.end());
    tail = mix_kraus(tail, random_unitary(tail.size(), rng));
    std::vector<ComplexMatrix> b_alt = b1;
    b_alt.insert(b_alt.end(), tail.begin(), tail.end());
    const KrausChannel b_other(d, d, b_alt);
    const auto full1 = complete_prefix(b, b1);
    const ControlledChannel c1 = build_two_channel_control(a.kraus(), full1);
    const ControlledChannel c2 = build_two_channel_control(a.kraus(), b_alt);
    const double d_same = choi_distance(c1.channel(), c2.channel());
    const bool iff_same = two_control_equal_iff(a, b_other, b1, b1, c.tol);
    same.record(d_same, d_same <= c.tol && iff_same);

    // rotate B_i into the first remainder operator, i = argmax ||A_i||
    std::size_t i = 0;
    for (std::size_t j = 1; j < na; ++j)
      if (a.kraus()[j].norm() > a.kraus()[i].norm()) i = j;
    const double theta = 0.1 + 0.9 * rng.uniform();
    std::vector<ComplexMatrix> rotated(bk.begin(), bk.end());
    rotated[i] = std::cos(theta) * bk[i] + std::sin(theta) * bk[na];
    rotated[na] = -std::sin(theta) * bk[i] + std::cos(theta) * bk[na];
    std::vector<ComplexMatrix> b2(rotated.begin(), rotated.begin() + na);
    const double delta = frobenius_distance(b2[i], b1[i]);
    const ControlledChannel c3 = build_two_channel_control(a.kraus(), complete_prefix(b, b2));
    const double gap = choi_distance(c1.channel(), c3.channel());
    const bool iff_diff = two_control_equal_iff(a, b, b1, b2, c.tol);
    worst_ratio = std::min(worst_ratio, gap / delta);
    perturbed.record_gap(gap, gap >= delta / 2 && !iff_diff);
  }
  perturbed.extra["min_gap_over_perturbation"] = worst_ratio;
  return {same, perturbed};
}

Cases suite_two_ctrl_isometry(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 100;
  const std::vector<std::pair<std::size_t, std::size_t>> pairs = {
      {2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}};
  Cases out;
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto [din, dout] = pairs[pi];
    Case k{"d_in=" + std::to_string(din) + " d_out=" + std::to_string(dout)};
    Prng rng(c.seed, 500 + pi);
    // trials are shared out over the pairs
    const std::size_t n = trials / pairs.size() + (pi < trials % pairs.size() ? 1 : 0);
    for (std::size_t t = 0; t < n; ++t) {
      const ComplexMatrix u = random_isometry(din, dout, rng);
      const ComplexMatrix v = random_isometry(din, dout, rng);
      const ControlledChannel circuit = two_ctrl_apply(build_isometric_sp(u), build_isometric_sp(v));
      const ControlledChannel direct = build_two_channel_control({u}, {v});
      const double dist = choi_distance(circuit.channel(), direct.channel());
      k.record(dist, dist <= c.tol);
    }
    out.push_back(std::move(k));
  }
  return out;
}

RealVector block_singular_values(const ControlledChannel& cc) {
  return singular_values(coherence_block(cc, 0, 1));
}

Cases suite_depol(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 100;
  Case rank1{"2-CTRL coherence block has rank 1"};
  Case depol{"controlled dephasing coherence block has rank 2"};
  Case purified{"2-CTRL with shared environment reproduces the controlled dephasing"};
  Case env_rank{"coherence block rank is at most the environment dimension"};

  Prng rng(c.seed, 601);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rng);
    const auto a = random_sp(d, d, env_draw(rng), rng);
    const auto b = random_sp(d, d, env_draw(rng), rng);
    const RealVector sv = block_singular_values(two_ctrl_apply(a, b));
    const double ratio = sv.size() > 1 ? sv(1) / sv(0) : 0.0;
    worst = std::max(worst, ratio);
    rank1.record(ratio, ratio <= c.tol);
  }
  rank1.extra["max_second_over_first"] = worst;

  const KrausChannel dep = qubit_depolarizing();
  const ControlledChannel target = build_two_channel_control(dep.kraus(), dep.kraus());
  const RealVector dsv = block_singular_values(target);
  depol.record(0.0, dsv(1) >= 0.4);
  depol.extra["singular_values"] = std::vector<double>(dsv.data(), dsv.data() + dsv.size());

  // U = sum_i K_i (x) |i>_E, environment least significant
  auto purify = [](const std::vector<ComplexMatrix>& k, std::size_t de) {
    const std::size_t din = k[0].cols(), dout = k[0].rows();
    ComplexMatrix u = zeros(dout * de, din);
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t a = 0; a < dout; ++a) u.row(a * de + i) = k[i].row(a);
    return u;
  };
  const ComplexMatrix ua = purify(dep.kraus(), 2);
  const ControlledChannel viaE = two_ctrl_e_apply(build_isometric_sp(ua), build_isometric_sp(ua), 2);
  const double dp = choi_distance(viaE.channel(), target.channel());
  purified.record(dp, dp <= c.tol);

  Prng re(c.seed, 602);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, re);
    const std::size_t de = 1 + re.uniform_index(3);
    const ControlledChannel cc =
        two_ctrl_e_apply(build_isometric_sp(random_isometry(d, d * de, re)),
                         build_isometric_sp(random_isometry(d, d * de, re)), de);
    const std::size_t r = numerical_rank(coherence_block(cc, 0, 1), c.tol);
    env_rank.record(0.0, r <= de);
    if (r > de) env_rank.fail("rank " + std::to_string(r) + " with environment " + std::to_string(de));
  }
  return {rank1, depol, purified, env_rank};
}

// m orthonormal amplitude vectors over the Kraus list of ch
std::vector<ComplexMatrix> orthonormal_pins(const KrausChannel& ch, std::size_t m, Prng& rng) {
  const std::size_t r = ch.kraus().size();
  const ComplexMatrix v = random_isometry(m, r, rng);
  std::vector<ComplexMatrix> pins;
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix p = zeros(ch.dim_out(), ch.dim_in());
    for (std::size_t i = 0; i < r; ++i) p += v(i, j) * ch.kraus()[i];
    pins.push_back(std::move(p));
  }
  return pins;
}

Complex random_phase(double mag, Prng& rng) {
  return std::polar(mag, 2 * M_PI * rng.uniform());
}

double params_distance(const CompositeControlParams& a, const CompositeControlParams& b,
                       const std::vector<bool>& unique) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.m(); ++j)
    if (unique[j]) worst = std::max(worst, frobenius_distance(a.pins[j], b.pins[j]));
  for (std::size_t j = 0; j < a.m(); ++j)
    for (std::size_t k = j + 1; k < a.m(); ++k)
      worst = std::max(worst, std::abs(a.gammas(j, k) - b.gammas(j, k)));
  return worst;
}

Cases suite_composite(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 100;
  Case round2{"m=2 build/extract round trip"};
  Case circuit{"CTRL_2 circuit equals direct construction"};
  Case tp3{"m=3 direct construction is trace preserving"};
  Case round3{"m=3 build/extract round trip"};
  const double mags[] = {0.0, 0.3, 0.99};

  Prng rng(c.seed, 701);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rng);
    const KrausChannel ch = random_cptp(d, d, 2 + rng.uniform_index(2), rng);
    CompositeControlParams p{orthonormal_pins(ch, 2, rng), zeros(2, 2)};
    p.gammas(0, 1) = random_phase(mags[t % 3], rng);
    const ControlledChannel cc = build_composite_control(ch, p);
    const CompositeExtraction e = extract_composite_params(cc, 2);
    const double dist = std::max(
        choi_distance(build_composite_control(e.channel, e.params).channel(), cc.channel()),
        params_distance(p, e.params, e.pin_unique));
    round2.record(dist, dist <= c.tol);
  }

  Prng rc(c.seed, 702);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, rc);
    const KrausChannel ch = random_cptp(d, d, 2 + rc.uniform_index(2), rc);
    const auto pins = orthonormal_pins(ch, 2, rc);
    const RoutedKrausChannel s =
        build_sector_preserving_d11(ch, pins[0], pins[1], random_phase(mags[t % 3], rc));
    const D11Params q = extract_d11(s);
    CompositeControlParams p{{q.pin1, q.pin2}, zeros(2, 2)};
    p.gammas(0, 1) = q.gamma12;
    const ControlledChannel direct = build_composite_control(q.channel, p);
    const double dist = choi_distance(ctrl2_apply(s).channel(), direct.channel());
    circuit.record(dist, dist <= c.tol);
  }

  Prng r3(c.seed, 703);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = pick(c.dims, r3);
    const KrausChannel ch = random_cptp(d, d, 3 + r3.uniform_index(2), r3);
    CompositeControlParams p{orthonormal_pins(ch, 3, r3), zeros(3, 3)};
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = j + 1; k < 3; ++k) p.gammas(j, k) = random_phase(0.5 * r3.uniform(), r3);
    const ControlledChannel cc = build_composite_control(ch, p);
    const double defect = cc.channel().map().tp_defect();
    tp3.record(defect, defect <= c.tol);
    const CompositeExtraction e = extract_composite_params(cc, 3);
    const double dist = std::max(
        choi_distance(build_composite_control(e.channel, e.params).channel(), cc.channel()),
        params_distance(p, e.params, e.pin_unique));
    round3.record(dist, dist <= c.tol);
  }
  return {round2, circuit, tp3, round3};
}

std::filesystem::path make_temp_dir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "sectorctl-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw Error(ErrorCode::kIo, "cannot create a temporary directory");
  return tmpl;
}

bool matches(const Violation& v, const Violation& want) {
  if (v.kind != want.kind || v.node != want.node || v.in_sector != want.in_sector ||
      v.out_sector != want.out_sector)
    return false;
  return want.kind != "leak" || std::abs(v.norm - want.norm) <= 1e-9;
}

Cases suite_routed_check(const SuiteConfig& c) {
  if (c.file.empty()) throw Error(ErrorCode::kInvalidArgument, "routed-check needs a circuit file");
  const CircuitAST ast = parse_circuit_file(c.file);
  const RouteCheckReport base = check_circuit(ast, c.tol);
  Case k{"circuit checks"};
  k.record(0.0, base.ok);
  k.extra["report"] = check_report_to_json(base);
  Cases out{k};
  if (c.mutations == 0) return out;

  Case m{"mutations rejected with correct coordinates"};
  const auto dir = make_temp_dir();
  Json details = Json::array();
  for (const Mutation& mu : generate_mutations(ast, c.mutations, c.seed)) {
    const std::size_t i = m.trials;
    const auto sub = dir / ("m" + std::to_string(i));
    std::filesystem::create_directories(sub);
    for (const auto& g : mu.ast.gates)
      if (g.kind == GateKind::kKraus && g.kraus)
        write_text_file((sub / g.kraus_path).string(), cp_map_to_json(*g.kraus).dump());
    const auto file = sub / "mutated.rqc";
    write_text_file(file.string(), print_circuit(mu.ast));
    const RouteCheckReport r = check_circuit(parse_circuit_file(file.string()), c.tol);
    bool found = false;
    for (const auto& v : r.violations) found = found || matches(v, mu.expected);
    m.record(0.0, !r.ok && found);
    if (!found) m.fail(mu.description);
    details.push_back({{"mutation", mu.description}, {"rejected", !r.ok}, {"coordinates_match", found}});
  }
  std::filesystem::remove_all(dir);
  m.extra["mutations"] = details;
  out.push_back(std::move(m));
  return out;
}

Cases suite_routed_eval(const SuiteConfig& c) {
  if (c.file.empty()) throw Error(ErrorCode::kInvalidArgument, "routed-eval needs a circuit file");
  if (c.oracle != "two-ctrl" && c.oracle != "none")
    throw Error(ErrorCode::kInvalidArgument, "unknown oracle '" + c.oracle + "'");
  const std::size_t trials = c.trials ? c.trials : 100;
  const CircuitAST ast = parse_circuit_file(c.file);
  if (c.oracle == "two-ctrl" && ast.slots.size() != 2)
    throw Error(ErrorCode::kInvalidArgument, "the two-ctrl oracle needs exactly two slots");
  Case k{c.oracle == "two-ctrl" ? "eval equals 2-CTRL on random bindings"
                                : "eval is trace preserving on random bindings"};
  Prng rng(c.seed, 901);
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<std::string, RoutedKrausChannel> bind;
    std::vector<RoutedKrausChannel> ordered;
    for (const auto& s : ast.slots) {
      const auto& tin = ast.find_wire(s.in_type)->type;
      const auto& tout = ast.find_wire(s.out_type)->type;
      const auto r = resolve_route(ast, s.route, {s.in_type}, {s.out_type});
      if (!r) throw Error(ErrorCode::kMalformed, "route of slot '" + s.name + "' does not fit");
      const CPMap m = random_route_follower(SectorLabels::of(tin), SectorLabels::of(tout), *r,
                                            env_draw(rng), rng);
      ordered.emplace_back(tin, tout, *r, KrausChannel(m));
      bind.emplace(s.name, ordered.back());
    }
    const KrausChannel e = eval_circuit(ast, bind, c.tol);
    if (c.oracle == "two-ctrl") {
      const double dist = choi_distance(e, two_ctrl_apply(ordered[0], ordered[1]).channel());
      k.record(dist, dist <= c.tol);
    } else {
      const double defect = e.map().tp_defect();
      k.record(defect, defect <= c.tol);
    }
  }
  return {k};
}

RoutedSupermap supermap_by_name(const std::string& name, std::size_t d) {
  if (name == "ctrl") return ctrl_supermap(d);
  if (name == "ctrl-broken") return ctrl_supermap(d, CircuitOptions{std::nullopt, true});
  if (name == "two-ctrl") return two_ctrl_supermap(d, d);
  if (name == "ctrl2") return ctrl2_supermap(d);
  throw Error(ErrorCode::kInvalidArgument, "unknown supermap '" + name + "'");
}

Cases suite_verify(const SuiteConfig& c) {
  const std::size_t trials = c.trials ? c.trials : 50;
  const std::vector<std::string> names =
      c.supermaps.empty() ? std::vector<std::string>{"ctrl", "two-ctrl", "ctrl2", "ctrl-broken"}
                          : c.supermaps;
  const std::vector<std::size_t> aux = c.aux_dims.empty() ? std::vector<std::size_t>{1, 2, 3}
                                                          : c.aux_dims;
  Cases out;
  std::uint64_t stream = 1000;
  for (const auto& name : names) {
    for (std::size_t d : c.dims) {
      const bool expect_fail = name == "ctrl-broken";
      Case k{name + " d=" + std::to_string(d) + (expect_fail ? " (must fail)" : "")};
      const VerifyReport r = verify_routed_supermap(supermap_by_name(name, d), aux, trials,
                                                    mix64(c.seed + ++stream), c.tol);
      k.trials = r.trials;
      if (expect_fail) {
        // every trial must leak; passing trials count as gap 0
        k.gap_case = true;
        k.min_gap = r.passes ? 0.0 : INFINITY;
        for (const auto& f : r.failures) k.min_gap = std::min(k.min_gap, f.leakage);
      } else {
        k.max_distance = std::max(r.worst_leakage, r.worst_tp_defect);
      }
      k.passed = expect_fail ? !r.failures.empty() : r.failures.empty();
      k.extra["verifier"] = verify_report_to_json(r);
      out.push_back(std::move(k));
    }
  }
  return out;
}

struct SuiteDef {
  std::string name;
  std::vector<std::size_t> default_dims;
  std::function<Cases(const SuiteConfig&)> run;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> r = {
      {"ctrl-equiv", {2, 3, 4}, suite_ctrl_equiv},
      {"ctrl-unitary", {2, 3, 4}, suite_ctrl_unitary},
      {"roundtrip", {2, 3, 4}, suite_roundtrip},
      {"lemma2", {2, 3, 4}, suite_pins},
      {"thm2-twocontrol", {2, 3}, suite_two_control},
      {"two-ctrl-isometry", {}, suite_two_ctrl_isometry},
      {"depol-obstruction", {2, 3}, suite_depol},
      {"composite", {2, 3}, suite_composite},
      {"routed-check", {}, suite_routed_check},
      {"routed-eval", {}, suite_routed_eval},
      {"verify-supermap", {2, 3}, suite_verify},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : registry()) n.push_back(s.name);
    return n;
  }();
  return names;
}

Json suite_config_to_json(const SuiteConfig& c) {
  return {{"suite", c.suite},       {"dims", c.dims},           {"trials", c.trials},
          {"seed", c.seed},         {"tol", c.tol},             {"file", c.file},
          {"mutations", c.mutations}, {"oracle", c.oracle},     {"supermaps", c.supermaps},
          {"aux_dims", c.aux_dims}, {"timing", c.timing},       {"json", c.json_path}};
}

SuiteConfig suite_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "suite config must be an object");
  SuiteConfig c;
  try {
    c.suite = j.at("suite").get<std::string>();
    if (j.contains("dims")) c.dims = j["dims"].get<std::vector<std::size_t>>();
    if (j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("file")) c.file = j["file"].get<std::string>();
    if (j.contains("mutations")) c.mutations = j["mutations"].get<std::size_t>();
    if (j.contains("oracle")) c.oracle = j["oracle"].get<std::string>();
    if (j.contains("supermaps")) c.supermaps = j["supermaps"].get<std::vector<std::string>>();
    if (j.contains("aux_dims")) c.aux_dims = j["aux_dims"].get<std::vector<std::size_t>>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
    if (j.contains("json")) c.json_path = j["json"].get<std::string>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad suite config: ") + e.what());
  }
  return c;
}

Json run_suite(const SuiteConfig& config) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const SuiteDef& s) { return s.name == config.suite; });
  if (it == reg.end()) throw Error(ErrorCode::kUnknownSuite, "unknown suite '" + config.suite + "'");
  if (!(config.tol > 0) || !std::isfinite(config.tol))
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  SuiteConfig c = config;
  if (c.dims.empty()) c.dims = it->default_dims;
  for (std::size_t d : c.dims)
    if (d < 1 || d > 8) throw Error(ErrorCode::kInvalidArgument, "dims must lie in 1..8");
  for (std::size_t a : c.aux_dims)
    if (a < 1) throw Error(ErrorCode::kInvalidArgument, "aux dims must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  const Cases cases = it->run(c);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report;
  report["suite"] = c.suite;
  report["version"] = SECTORCTL_VERSION;
  report["config"] = suite_config_to_json(c);
  report["cases"] = Json::array();
  std::size_t failures = 0;
  for (const auto& k : cases) {
    report["cases"].push_back(k.to_json());
    failures += !k.passed;
  }
  report["failures"] = failures;
  report["passed"] = failures == 0;
  if (c.timing) report["runtime_seconds"] = seconds;
  if (!c.json_path.empty()) write_text_file(c.json_path, report.dump(2) + "\n");
  return report;
}

}  // namespace sectorctl
