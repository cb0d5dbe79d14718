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

#include "sectorctl/channel.hpp"

namespace sectorctl {

// Hilbert space split into an ordered list of sectors; sector k occupies a
// contiguous index range.
class PartitionedSpace {
 public:
  explicit PartitionedSpace(std::vector<std::size_t> sector_dims);

  const std::vector<std::size_t>& sector_dims() const { return dims_; }
  std::size_t num_sectors() const { return dims_.size(); }
  std::size_t dim() const { return total_; }
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }
  std::size_t sector_dim(std::size_t k) const { return dims_.at(k); }
  // sector label of every basis index
  std::vector<std::size_t> labels() const;

  bool operator==(const PartitionedSpace& o) const { return dims_ == o.dims_; }
  bool operator!=(const PartitionedSpace& o) const { return !(*this == o); }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

// Boolean relation from input sectors (columns) to output sectors (rows).
// Totality is not required here; see is_total().
class Route {
 public:
  Route(std::size_t rows, std::size_t cols);
  explicit Route(const std::vector<std::vector<bool>>& matrix);
  static Route identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t out, std::size_t in) const { return bits_[out * cols_ + in] != 0; }
  void set(std::size_t out, std::size_t in, bool value);
  // every input sector has at least one allowed output sector
  bool is_total() const;
  bool is_identity() const;
  Route transpose() const;
  std::vector<std::vector<bool>> to_matrix() const;

  bool operator==(const Route& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }
  bool operator!=(const Route& o) const { return !(*this == o); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> bits_;
};

// after o before (Boolean matrix product).
Route route_compose(const Route& after, const Route& before);

// Route on a tensor product of wires; sector tuples are ordered row-major.
Route route_kron(const Route& a, const Route& b);

// Sector labelling of basis indices, possibly non-contiguous (tensor products
// of partitioned wires).
struct SectorLabels {
  std::size_t num_sectors = 0;
  std::vector<std::size_t> label;  // per basis index

  static SectorLabels of(const PartitionedSpace& s);
  // tuple label (l_1, ..., l_n) flattened row-major
  static SectorLabels tensor(const std::vector<SectorLabels>& parts);
  // the space tensored with an unpartitioned auxiliary factor on the right
  SectorLabels with_aux(std::size_t aux_dim) const;
};

struct Leak {
  std::size_t in_sector;
  std::size_t out_sector;
  double norm;  // sqrt of the largest eigenvalue of sum_i B_i^dagger B_i
};

// Every forbidden (input sector, output sector) pair whose block is not zero
// within tol.
std::vector<Leak> route_leaks(const std::vector<ComplexMatrix>& kraus,
                              const SectorLabels& in, const SectorLabels& out,
                              const Route& route, double tol = kEqTol);
double max_route_leakage(const std::vector<ComplexMatrix>& kraus,
                         const SectorLabels& in, const SectorLabels& out,
                         const Route& route);

bool follows_route(const CPMap& c, const PartitionedSpace& sin,
                   const PartitionedSpace& sout, const Route& r,
                   double tol = kEqTol);
bool follows_route(const KrausChannel& c, const PartitionedSpace& sin,
                   const PartitionedSpace& sout, const Route& r,
                   double tol = kEqTol);

class RoutedKrausChannel {
 public:
  RoutedKrausChannel(PartitionedSpace space_in, PartitionedSpace space_out,
                     Route route, KrausChannel channel, double tol = kEqTol);

  const PartitionedSpace& space_in() const { return space_in_; }
  const PartitionedSpace& space_out() const { return space_out_; }
  const Route& route() const { return route_; }
  const KrausChannel& channel() const { return channel_; }

 private:
  PartitionedSpace space_in_;
  PartitionedSpace space_out_;
  Route route_;
  KrausChannel channel_;
};

// Type (1, d) -> (1, d), identity route. The one-dimensional sector is index 0.
class SectorPreserving1d {
 public:
  explicit SectorPreserving1d(RoutedKrausChannel routed, double tol = kEqTol);

  const RoutedKrausChannel& routed() const { return routed_; }
  const KrausChannel& channel() const { return routed_.channel(); }
  std::size_t d() const { return routed_.space_in().sector_dim(1); }

 private:
  RoutedKrausChannel routed_;
};

SectorPreserving1d build_sector_preserving_1d(const PinnedChannel& p,
                                              double tol = kEqTol);

// Recovers (channel, pin) from the sector-1 blocks and the amplitudes on the
// vacuum sector. Throws kMalformed if sector 0 is not acted on as identity.
PinnedChannel extract_pin(const SectorPreserving1d& s, double tol = kEqTol);

// Type (d, 1, 1): the d-dimensional sector is index 0.
RoutedKrausChannel build_sector_preserving_d11(const KrausChannel& c,
                                               const ComplexMatrix& pin1,
                                               const ComplexMatrix& pin2,
                                               Complex gamma12,
                                               double tol = kPsdTol);

struct D11Params {
  KrausChannel channel;
  ComplexMatrix pin1;
  ComplexMatrix pin2;
  Complex gamma12;
  bool pin2_unique;  // false when |gamma12| = 1; pin2 is then reported as 0
};

D11Params extract_d11(const RoutedKrausChannel& s, double tol = kEqTol);

// Single Kraus 1 (+) v on (1, d_in) -> (1, d_out).
RoutedKrausChannel build_isometric_sp(const ComplexMatrix& v, double tol = kEqTol);

// Random channel following `route` on labelled spaces. Sectors with pairwise
// disjoint allowed outputs share one environment (coherent across sectors);
// otherwise each sector gets its own.
CPMap random_route_follower(const SectorLabels& in, const SectorLabels& out,
                            const Route& route, std::size_t env_dim, Prng& rng);

}  // namespace sectorctl
