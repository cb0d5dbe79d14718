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

#include "sectorctl/control.hpp"
#include "sectorctl/error.hpp"
#include "sectorctl/supermaps.hpp"

namespace sectorctl {
namespace {

PinnedChannel random_pinned(std::size_t d, std::size_t r, Prng& rng) {
  const KrausChannel c = random_cptp(d, d, r, rng);
  const ComplexVector a = random_unit_vector(r, rng);
  return canonicalize_pinned(c.kraus(), std::vector<Complex>(a.data(), a.data() + a.size()));
}

RoutedKrausChannel random_sp(std::size_t din, std::size_t dout, std::size_t env, Prng& rng) {
  const PartitionedSpace si({1, din}), so({1, dout});
  const CPMap m = random_route_follower(SectorLabels::of(si), SectorLabels::of(so),
                                        Route::identity(2), env, rng);
  return RoutedKrausChannel(si, so, Route::identity(2), KrausChannel(m));
}

TEST(Specs, Validate) {
  for (std::size_t d = 1; d <= 3; ++d) {
    EXPECT_NO_THROW(ctrl_spec(d).validate());
    EXPECT_NO_THROW(two_ctrl_spec(d, d + 1, 2).validate());
    EXPECT_NO_THROW(ctrl2_spec(d).validate());
    EXPECT_NO_THROW(ctrl_inverse_spec(d).validate());
  }
}

TEST(Ctrl, EqualsPinnedControl) {
  Prng rng(1, 0);
  for (int t = 0; t < 30; ++t) {
    const PinnedChannel p = random_pinned(2 + t % 3, 1 + t % 3, rng);
    const ControlledChannel cc = ctrl_apply(build_sector_preserving_1d(p));
    EXPECT_LT(choi_distance(cc.channel(), build_pinned_control(p).channel()), 1e-9);
  }
}

TEST(Ctrl, SeesThePin) {
  Prng rng(2, 0);
  const KrausChannel c = random_cptp(2, 2, 2, rng);
  const PinnedChannel p0 = canonicalize_pinned(c.kraus(), {1.0, 0.0});
  const PinnedChannel p1 = canonicalize_pinned(c.kraus(), {0.0, 1.0});
  const ControlledChannel a = ctrl_apply(build_sector_preserving_1d(p0));
  EXPECT_GT(choi_distance(a.channel(), build_pinned_control(p1).channel()), 1e-2);
}

TEST(Ctrl, UnitaryStaysPure) {
  Prng rng(3, 0);
  const ComplexMatrix u = random_unitary(3, rng);
  const ControlledChannel cc = ctrl_apply(SectorPreserving1d(build_isometric_sp(u)));
  EXPECT_EQ(choi_rank(choi(cc.channel())), 1u);
  EXPECT_LT(choi_distance(cc.channel(), build_ctrl_unitary(u).channel()), 1e-9);
}

TEST(Ctrl, AuxiliarySystemsFactorOut) {
  Prng rng(4, 0);
  const PinnedChannel p = random_pinned(2, 2, rng);
  const SectorPreserving1d s = build_sector_preserving_1d(p);
  const KrausChannel sc = s.channel();
  std::vector<ComplexMatrix> ext;
  for (const auto& k : sc.kraus()) ext.push_back(kron(k, identity(2)));
  const CPMap out = ctrl_circuit(CPMap(6, 6, ext), 2, 2, 2);
  const KrausChannel direct = build_pinned_control(p).channel();
  std::vector<ComplexMatrix> want;
  for (const auto& k : direct.kraus()) want.push_back(kron(k, identity(2)));
  EXPECT_LT(choi_distance(out, CPMap(8, 8, want)), 1e-9);
}

TEST(Ctrl, DroppingTheSecondSwapBreaksIt) {
  Prng rng(5, 0);
  const PinnedChannel p = random_pinned(2, 2, rng);
  const SectorPreserving1d s = build_sector_preserving_1d(p);
  const CPMap broken = ctrl_circuit(s.channel().map(), 2, 1, 1, CircuitOptions{std::nullopt, true});
  EXPECT_GT(choi_distance(broken, ctrl_apply(s).channel().map()), 0.1);
}

TEST(CtrlInverse, RoundTrips) {
  Prng rng(6, 0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + t % 2;
    const SectorPreserving1d s(random_sp(d, d, 1 + t % 3, rng));
    EXPECT_LT(choi_distance(ctrl_inverse_apply(ctrl_apply(s)).channel(), s.channel()), 1e-9);
    const ControlledChannel cc = build_pinned_control(random_pinned(d, 2, rng));
    EXPECT_LT(choi_distance(ctrl_apply(ctrl_inverse_apply(cc)).channel(), cc.channel()), 1e-9);
  }
}

TEST(CtrlInverse, RequiresIdentityOnControlZero) {
  Prng rng(7, 0);
  const KrausChannel a = random_cptp(2, 2, 1, rng);
  const ControlledChannel cc = build_two_channel_control(a.kraus(), a.kraus());
  try {
    ctrl_inverse_apply(cc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
  }
}

TEST(TwoCtrl, IsometriesGiveControlledPair) {
  Prng rng(8, 0);
  const ComplexMatrix u = random_isometry(2, 3, rng), v = random_isometry(2, 3, rng);
  const ControlledChannel cc = two_ctrl_apply(build_isometric_sp(u), build_isometric_sp(v));
  EXPECT_LT(choi_distance(cc.channel(), build_two_channel_control({u}, {v}).channel()), 1e-9);
}

TEST(TwoCtrl, BranchesAreTheInputsAndCoherenceIsRankOne) {
  Prng rng(9, 0);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_sp(2, 2, 2, rng), b = random_sp(2, 2, 3, rng);
    const ControlledChannel cc = two_ctrl_apply(a, b);
    const KrausChannel ab = KrausChannel(CPMap(2, 2, [&] {
      std::vector<ComplexMatrix> k;
      for (const auto& x : a.channel().kraus()) k.push_back(x.bottomRightCorner(2, 2));
      return k;
    }()));
    EXPECT_TRUE(channels_equal(cc.branch(0), ab, 1e-9));
    const RealVector sv = singular_values(coherence_block(cc, 0, 1));
    EXPECT_LE(sv(1), 1e-9 * sv(0));
  }
}

TEST(TwoCtrl, RejectsMismatchedTypes) {
  Prng rng(10, 0);
  EXPECT_THROW(two_ctrl_apply(random_sp(2, 2, 1, rng), random_sp(3, 3, 1, rng)), Error);
}

TEST(TwoCtrlE, CoherenceRankBoundedByEnvironment) {
  Prng rng(11, 0);
  for (std::size_t de = 1; de <= 3; ++de) {
    const ControlledChannel cc =
        two_ctrl_e_apply(build_isometric_sp(random_isometry(2, 2 * de, rng)),
                         build_isometric_sp(random_isometry(2, 2 * de, rng)), de);
    EXPECT_EQ(numerical_rank(coherence_block(cc, 0, 1), 1e-9), std::min<std::size_t>(de, 4));
  }
}

TEST(Ctrl2, EqualsCompositeControl) {
  Prng rng(12, 0);
  for (int t = 0; t < 10; ++t) {
    const KrausChannel c = random_cptp(2, 2, 3, rng);
    const ComplexMatrix v = random_isometry(2, 3, rng);
    ComplexMatrix p1 = zeros(2, 2), p2 = zeros(2, 2);
    for (int i = 0; i < 3; ++i) {
      p1 += v(i, 0) * c.kraus()[i];
      p2 += v(i, 1) * c.kraus()[i];
    }
    const Complex gamma = std::polar(0.1 * t, 0.3 * t);
    const ControlledChannel out = ctrl2_apply(build_sector_preserving_d11(c, p1, p2, gamma));
    CompositeControlParams params{{p1, p2}, zeros(2, 2)};
    params.gammas(0, 1) = gamma;
    EXPECT_LT(choi_distance(out.channel(), build_composite_control(c, params).channel()), 1e-9);
  }
}

TEST(Verifier, CorrectSupermapsPassBrokenOneFails) {
  const std::vector<std::size_t> aux = {1, 2};
  EXPECT_TRUE(verify_routed_supermap(ctrl_supermap(2), aux, 10, 1).failures.empty());
  EXPECT_TRUE(verify_routed_supermap(two_ctrl_supermap(2, 3), aux, 10, 2).failures.empty());
  EXPECT_TRUE(verify_routed_supermap(ctrl2_supermap(2), aux, 10, 3).failures.empty());
  const VerifyReport broken =
      verify_routed_supermap(ctrl_supermap(2, CircuitOptions{std::nullopt, true}), aux, 10, 4);
  EXPECT_FALSE(broken.failures.empty());
  EXPECT_GT(broken.worst_leakage, 0.1);
}

TEST(Verifier, DeterministicBySeed) {
  const auto a = verify_routed_supermap(ctrl_supermap(2), {1, 2, 3}, 5, 9);
  const auto b = verify_routed_supermap(ctrl_supermap(2), {1, 2, 3}, 5, 9);
  EXPECT_EQ(a.worst_leakage, b.worst_leakage);
  EXPECT_EQ(a.worst_tp_defect, b.worst_tp_defect);
}

}  // namespace
}  // namespace sectorctl
