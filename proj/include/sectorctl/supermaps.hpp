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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sectorctl/control.hpp"
#include "sectorctl/sectors.hpp"

namespace sectorctl {

enum class SupermapName { kCtrl, kCtrlInv, kTwoCtrl, kCtrl2, kTwoCtrlE };

const char* supermap_name(SupermapName n);

// The frozen pieces of one supermap circuit. Register wires are named; the
// controlled permutations act on basis indices of (control, wire_1, ...).
struct SupermapSpec {
  SupermapName name;
  std::size_t control_dim;
  std::size_t target_in;
  std::size_t target_out;
  std::size_t env_dim = 1;
  std::size_t wire_in;   // dim of each S wire before the inserted channels
  std::size_t wire_out;  // and after
  PartitionedSpace slot_in;
  PartitionedSpace slot_out;
  ComplexMatrix prepare;       // target -> wires, embedding with reference states
  std::vector<long> decoder;   // W as a selection on (control, wires)
  ComplexMatrix rho0;          // P-branch state on the decoder output
  std::vector<std::size_t> perm_in;   // ctrl-SWAP / c-perm before the channels
  std::vector<std::size_t> perm_out;  // and after

  // V^dagger V = I on `prepare`, rho0 a density matrix, permutations
  // bijective; throws kMalformed otherwise.
  void validate() const;
};

SupermapSpec ctrl_spec(std::size_t d);
SupermapSpec two_ctrl_spec(std::size_t d_in, std::size_t d_out, std::size_t env_dim = 1);
SupermapSpec ctrl2_spec(std::size_t d);
SupermapSpec ctrl_inverse_spec(std::size_t d);

struct CircuitOptions {
  std::optional<ComplexMatrix> rho0;  // overrides the maximally mixed default
  bool drop_second_swap = false;      // broken variant, for mutation tests
};

// Circuit contractions on arbitrary CP maps. Inserted channels act on
// S (x) X_in -> S (x) X_out; the result acts on
// (C (x) T) (x) X_in -> (C (x) T) (x) X_out.
CPMap ctrl_circuit(const CPMap& channel, std::size_t d, std::size_t x_in = 1,
                   std::size_t x_out = 1, const CircuitOptions& opts = {});
CPMap ctrl_inverse_circuit(const CPMap& controlled, std::size_t d,
                           const CircuitOptions& opts = {});
// Output layout (C (x) T) (x) X_a (x) X_b.
CPMap two_ctrl_circuit(const CPMap& a, const CPMap& b, std::size_t d_in, std::size_t d_out,
                       std::size_t env_dim = 1, std::size_t xa_in = 1,
                       std::size_t xa_out = 1, std::size_t xb_in = 1,
                       std::size_t xb_out = 1, const CircuitOptions& opts = {});
CPMap ctrl2_circuit(const CPMap& channel, std::size_t d, std::size_t x_in = 1,
                    std::size_t x_out = 1, const CircuitOptions& opts = {});

ControlledChannel ctrl_apply(const SectorPreserving1d& s, const CircuitOptions& opts = {});
SectorPreserving1d ctrl_inverse_apply(const ControlledChannel& cc,
                                      const CircuitOptions& opts = {});
ControlledChannel two_ctrl_apply(const RoutedKrausChannel& a, const RoutedKrausChannel& b);
ControlledChannel ctrl2_apply(const RoutedKrausChannel& s);
ControlledChannel two_ctrl_e_apply(const RoutedKrausChannel& a, const RoutedKrausChannel& b,
                                   std::size_t env_dim);

// Typed slot or result of a routed supermap.
struct RoutedType {
  PartitionedSpace in;
  PartitionedSpace out;
  Route route;
};

struct AuxDims {
  std::size_t in = 1;
  std::size_t out = 1;
};

struct RoutedSupermap {
  std::string name;
  std::vector<RoutedType> slots;
  RoutedType output;
  // inputs[i] acts on slot i's spaces tensored with aux[i] on the right
  std::function<CPMap(const std::vector<CPMap>& inputs, const std::vector<AuxDims>& aux)>
      apply;
};

RoutedSupermap ctrl_supermap(std::size_t d, const CircuitOptions& opts = {});
RoutedSupermap two_ctrl_supermap(std::size_t d_in, std::size_t d_out);
RoutedSupermap ctrl2_supermap(std::size_t d);

struct VerifyFailure {
  std::size_t trial;
  std::vector<AuxDims> aux;
  double leakage;
  double tp_defect;
};

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t passes = 0;
  double worst_leakage = 0.0;
  double worst_tp_defect = 0.0;
  std::vector<VerifyFailure> failures;
};

// Samples route-following inputs extended by auxiliary systems with
// dimensions drawn from aux_dims, applies the supermap and checks that the
// result follows the output route and is trace preserving. Trial t draws
// from Prng(seed, t).
VerifyReport verify_routed_supermap(const RoutedSupermap& s,
                                    const std::vector<std::size_t>& aux_dims,
                                    std::size_t trials, std::uint64_t seed,
                                    double tol = kEqTol);

}  // namespace sectorctl
