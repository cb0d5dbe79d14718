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

#include "sectorctl/channel.hpp"
#include "sectorctl/error.hpp"

namespace sectorctl {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

// Choi matrix straight from its definition.
ComplexMatrix choi_by_definition(const CPMap& c) {
  const std::size_t din = c.dim_in(), dout = c.dim_out();
  ComplexMatrix j = zeros(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t k = 0; k < din; ++k)
      j.block(i * dout, k * dout, dout, dout) = c.apply(ket_bra(din, i, din, k));
  return j;
}

std::vector<Complex> unit_amplitudes(std::size_t n, Prng& rng) {
  const ComplexVector v = random_unit_vector(n, rng);
  return {v.data(), v.data() + v.size()};
}

TEST(Choi, MatchesDefinition) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const KrausChannel c = random_cptp(2 + s % 2, 3, 1 + s % 3, s);
    EXPECT_LT(frobenius_distance(choi(c), choi_by_definition(c.map())), 1e-12);
  }
}

TEST(Choi, IdentityChannelIsMaximallyEntangled) {
  const ComplexMatrix j = choi(identity_channel(3));
  ComplexVector omega = ComplexVector::Zero(9);
  for (int i = 0; i < 3; ++i) omega(i * 3 + i) = 1.0;
  EXPECT_LT(frobenius_distance(j, omega * omega.adjoint()), 1e-14);
}

TEST(Choi, TracePreservationMeansOutputTraceIsIdentity) {
  const KrausChannel c = random_cptp(3, 2, 2, 4);
  EXPECT_LT(frobenius_distance(partial_trace(choi(c), {3, 2}, {0}), identity(3)), 1e-12);
}

TEST(KrausChannel, RejectsEmptyAndNonTp) {
  EXPECT_EQ(code_of([] { KrausChannel(2, 2, {}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { KrausChannel(2, 2, {0.5 * identity(2)}); }),
            ErrorCode::kNotTracePreserving);
  EXPECT_EQ(code_of([] { CPMap(2, 2, {identity(3)}); }), ErrorCode::kDimensionMismatch);
}

TEST(KrausChannel, UnitaryMixingLeavesChannelUnchanged) {
  Prng rng(1, 0);
  for (int t = 0; t < 20; ++t) {
    const KrausChannel c = random_cptp(2, 2, 3, rng);
    const KrausChannel m(2, 2, mix_kraus(c.kraus(), random_unitary(3, rng)));
    EXPECT_TRUE(channels_equal(c, m, 1e-12));
  }
}

TEST(KrausChannel, DistinctChannelsAreApart) {
  EXPECT_GT(choi_distance(identity_channel(2), qubit_depolarizing()), 0.5);
}

TEST(Depolarizing, KillsOffDiagonals) {
  ComplexMatrix rho(2, 2);
  rho << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
  const ComplexMatrix out = qubit_depolarizing().apply(rho);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(out(0, 0).real(), 0.75, 1e-15);
}

TEST(CpMapFromChoi, RoundTripAndMinimality) {
  const KrausChannel c = random_cptp(2, 3, 2, 8);
  std::vector<ComplexMatrix> padded = c.kraus();
  padded.push_back(zeros(3, 2));
  padded.push_back(padded[0]);  // duplicate: same channel, larger list
  padded[0] *= std::sqrt(0.5);
  padded.back() *= std::sqrt(0.5);
  const KrausChannel p(2, 3, padded);
  const CPMap m = cp_map_from_choi(choi(p), 2, 3);
  EXPECT_EQ(m.kraus().size(), 2u);
  EXPECT_LT(frobenius_distance(choi(m), choi(c)), 1e-12);
  EXPECT_EQ(minimal_kraus(p).kraus().size(), 2u);
}

TEST(CpMapFromChoi, NonPsdIsMalformed) {
  EXPECT_EQ(code_of([] { cp_map_from_choi(-identity(4), 2, 2); }), ErrorCode::kMalformed);
}

TEST(ChoiRank, RandomChannelsHaveRequestedRank) {
  for (std::size_t r = 1; r <= 4; ++r) EXPECT_EQ(choi_rank(choi(random_cptp(2, 2, r, r))), r);
}

TEST(Pins, KrausOperatorsAndUnitCombinationsAreValid) {
  Prng rng(3, 0);
  const KrausChannel c = random_cptp(2, 2, 3, rng);
  for (const auto& k : c.kraus()) EXPECT_TRUE(is_valid_pin(c, k));
  const auto a = unit_amplitudes(3, rng);
  ComplexMatrix p = zeros(2, 2);
  for (int i = 0; i < 3; ++i) p += std::conj(a[i]) * c.kraus()[i];
  EXPECT_TRUE(is_valid_pin(c, p));
  EXPECT_FALSE(is_valid_pin(c, 1.5 * p));
  EXPECT_EQ(code_of([&] { PinnedChannel(c, 1.5 * p); }), ErrorCode::kInvalidPin);
}

TEST(Pins, RemainderIsTheRestOfTheList) {
  const KrausChannel c = random_cptp(2, 2, 3, 12);
  const CPMap rest = remainder_map(c, {c.kraus()[0]});
  const CPMap want(2, 2, {c.kraus()[1], c.kraus()[2]});
  EXPECT_LT(frobenius_distance(choi(rest), choi(want)), 1e-12);
  EXPECT_NEAR(min_remainder_eigenvalue(c, {c.kraus()[0]}), 0.0, 1e-12);
}

TEST(Canonicalize, PinFirstAndChannelUnchanged) {
  Prng rng(4, 0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = 1 + t % 4;
    const KrausChannel c = random_cptp(3, 3, r, rng);
    const auto a = unit_amplitudes(r, rng);
    const PinnedChannel p = canonicalize_pinned(c.kraus(), a);
    ComplexMatrix want = zeros(3, 3);
    for (std::size_t i = 0; i < r; ++i) want += std::conj(a[i]) * c.kraus()[i];
    EXPECT_LT(frobenius_distance(p.pin(), want), 1e-12);
    EXPECT_TRUE(p.pin_is_first());
    EXPECT_TRUE(channels_equal(p.channel(), c, 1e-12));
  }
}

TEST(Canonicalize, FirstBasisVectorKeepsTheList) {
  const KrausChannel c = random_cptp(2, 2, 2, 5);
  const PinnedChannel p = canonicalize_pinned(c.kraus(), {1.0, 0.0});
  EXPECT_EQ(p.channel().kraus()[0], c.kraus()[0]);
  EXPECT_EQ(p.channel().kraus()[1], c.kraus()[1]);
}

TEST(Canonicalize, RejectsUnnormalized) {
  const KrausChannel c = random_cptp(2, 2, 2, 5);
  EXPECT_EQ(code_of([&] { canonicalize_pinned(c.kraus(), {1.0, 1.0}); }),
            ErrorCode::kNotNormalized);
  EXPECT_EQ(code_of([&] { canonicalize_pinned(c.kraus(), {1.0}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(TwoControl, EqualPrefixesEqualAndPerturbedDiffer) {
  Prng rng(6, 0);
  const KrausChannel a = minimal_kraus(random_cptp(2, 2, 2, rng));
  const KrausChannel b = random_cptp(2, 2, 3, rng);
  const std::vector<ComplexMatrix> b1(b.kraus().begin(), b.kraus().begin() + 2);
  EXPECT_TRUE(two_control_equal_iff(a, b, b1, b1));
  // swap the first two Kraus operators of B: a different prefix of the same channel
  const std::vector<ComplexMatrix> b2 = {b.kraus()[1], b.kraus()[0]};
  EXPECT_FALSE(two_control_equal_iff(a, b, b1, b2));
  const auto full = complete_prefix(b, b1);
  EXPECT_TRUE(channels_equal(KrausChannel(2, 2, full), b, 1e-12));
}

TEST(TwoControl, NonMinimalFirstArgumentRejected) {
  const KrausChannel b = random_cptp(2, 2, 2, 7);
  std::vector<ComplexMatrix> padded = identity_channel(2).kraus();
  padded.push_back(zeros(2, 2));
  EXPECT_THROW(two_control_equal_iff(KrausChannel(2, 2, padded), b, b.kraus(), b.kraus()), Error);
}

TEST(RandomCptp, DeterministicBySeed) {
  EXPECT_EQ(choi_distance(random_cptp(3, 2, 2, 99), random_cptp(3, 2, 2, 99)), 0.0);
  EXPECT_GT(choi_distance(random_cptp(3, 2, 2, 99), random_cptp(3, 2, 2, 98)), 1e-3);
}

}  // namespace
}  // namespace sectorctl
