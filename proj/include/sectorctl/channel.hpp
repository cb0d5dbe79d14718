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
#include <vector>

#include "sectorctl/prng.hpp"
#include "sectorctl/tensor.hpp"

namespace sectorctl {

// Completely positive map rho -> sum_i K_i rho K_i^dagger. Shape only.
class CPMap {
 public:
  CPMap(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // Linear extension; x need not be Hermitian.
  ComplexMatrix apply(const ComplexMatrix& x) const;
  // sum_i K_i^dagger K_i
  ComplexMatrix tp_operator() const;
  double tp_defect() const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

// A CPMap whose Kraus list is non-empty and trace preserving.
class KrausChannel {
 public:
  KrausChannel(std::size_t dim_in, std::size_t dim_out,
               std::vector<ComplexMatrix> kraus, double tol = kEqTol);
  explicit KrausChannel(const CPMap& map, double tol = kEqTol);

  std::size_t dim_in() const { return map_.dim_in(); }
  std::size_t dim_out() const { return map_.dim_out(); }
  const std::vector<ComplexMatrix>& kraus() const { return map_.kraus(); }
  const CPMap& map() const { return map_; }
  ComplexMatrix apply(const ComplexMatrix& x) const { return map_.apply(x); }

 private:
  CPMap map_;
};

// A channel whose Kraus list starts with a distinguished valid pin.
class PinnedChannel {
 public:
  PinnedChannel(KrausChannel channel, ComplexMatrix pin, double tol = kPsdTol);

  const KrausChannel& channel() const { return channel_; }
  const ComplexMatrix& pin() const { return pin_; }
  // true when channel().kraus()[0] equals the pin
  bool pin_is_first(double tol = kEqTol) const;

 private:
  KrausChannel channel_;
  ComplexMatrix pin_;
};

ComplexMatrix choi(const CPMap& map);
ComplexMatrix choi(const KrausChannel& c);

double choi_distance(const KrausChannel& a, const KrausChannel& b);
double choi_distance(const CPMap& a, const CPMap& b);
bool channels_equal(const KrausChannel& a, const KrausChannel& b,
                    double tol = kEqTol);

// Kraus operators from a PSD Choi matrix, eigenvalues above rank_tol*max.
// Throws kMalformed if an eigenvalue is below -psd_tol.
CPMap cp_map_from_choi(const ComplexMatrix& j, std::size_t dim_in,
                       std::size_t dim_out, double psd_tol = kPsdTol,
                       double rank_tol = kRankTol);

// The map rho -> c(rho) - sum_k P_k rho P_k^dagger, or kInvalidPin when that
// map is not CP within psd_tol.
CPMap remainder_map(const KrausChannel& c, const std::vector<ComplexMatrix>& pins,
                    double psd_tol = kPsdTol, double rank_tol = kRankTol);

double min_remainder_eigenvalue(const KrausChannel& c,
                                const std::vector<ComplexMatrix>& pins);

bool is_valid_pin(const KrausChannel& c, const ComplexMatrix& k,
                  double tol = kPsdTol);

PinnedChannel canonicalize_pinned(const std::vector<ComplexMatrix>& kraus,
                                  const std::vector<Complex>& amplitudes,
                                  double tol = kEqTol);

KrausChannel minimal_kraus(const KrausChannel& c, double rank_tol = kRankTol);

// Numerical Choi rank (eigenvalues above rank_tol * largest).
std::size_t choi_rank(const ComplexMatrix& j, double rank_tol = kRankTol);

// Completes b1 and b2 (length-n prefixes of Kraus lists of b_channel) with the
// remainder of b_channel, builds both two-channel controls against a_min and
// compares them. Throws kInvalidPin when a prefix cannot be completed.
bool two_control_equal_iff(const KrausChannel& a_min, const KrausChannel& b_channel,
                           const std::vector<ComplexMatrix>& b1,
                           const std::vector<ComplexMatrix>& b2,
                           double tol = kEqTol);

// Kraus list of a_min paired with the completed prefix, as used above.
std::vector<ComplexMatrix> complete_prefix(const KrausChannel& b_channel,
                                           const std::vector<ComplexMatrix>& prefix,
                                           double psd_tol = kPsdTol);

KrausChannel random_cptp(std::size_t dim_in, std::size_t dim_out,
                         std::size_t kraus_rank, Prng& rng);
KrausChannel random_cptp(std::size_t dim_in, std::size_t dim_out,
                         std::size_t kraus_rank, std::uint64_t seed);

// Fixed examples.
KrausChannel identity_channel(std::size_t d);
KrausChannel unitary_channel(const ComplexMatrix& u);
KrausChannel qubit_depolarizing();  // rho -> (rho + Z rho Z) / 2, Kraus (I, Z)/sqrt2

// Kraus list mixed by a unitary: K'_j = sum_i V_ji K_i.
std::vector<ComplexMatrix> mix_kraus(const std::vector<ComplexMatrix>& kraus,
                                     const ComplexMatrix& v);

}  // namespace sectorctl
