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

// Kraus-track contraction of layered circuits on named register factors.

#include <string>
#include <vector>

#include "sectorctl/channel.hpp"

namespace sectorctl::detail {

struct Factor {
  std::string name;
  std::size_t dim;
};

// A family of partial Kraus products. Each track is (register dim) x
// (input dim); the register is the ordered factor list.
class KrausTracks {
 public:
  KrausTracks(std::vector<Factor> inputs);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t register_dim() const;
  std::size_t input_dim() const { return input_dim_; }
  const std::vector<ComplexMatrix>& tracks() const { return tracks_; }
  std::size_t index_of(const std::string& name) const;

  // Applies the operation with Kraus list `kraus` to the named factors (in
  // the given order). The produced factors replace them, inserted where the
  // first consumed factor was. Exactly-zero products are dropped.
  void apply(const std::vector<std::string>& targets,
             const std::vector<ComplexMatrix>& kraus,
             const std::vector<Factor>& produced);
  void apply(const std::vector<std::string>& targets, const ComplexMatrix& op,
             const std::vector<Factor>& produced) {
    apply(targets, std::vector<ComplexMatrix>{op}, produced);
  }
  void apply_same(const std::vector<std::string>& targets,
                  const std::vector<ComplexMatrix>& kraus);

  // Basis permutation on the named factors: multi-index x goes to perm(x).
  void permute(const std::vector<std::string>& targets,
               const std::vector<std::size_t>& perm);

  // Decoder rho -> W rho W^dagger + rho0 Tr[(I - W^dagger W) rho] on the
  // named factors; W selects basis vectors: selection[x] is the output index
  // of target multi-index x, or -1.
  void decode(const std::vector<std::string>& targets,
              const std::vector<long>& selection,
              const std::vector<Factor>& produced, const ComplexMatrix& rho0);

  // Final factor order by name; every factor must be listed once.
  CPMap finish(const std::vector<std::string>& order) const;

 private:
  struct Layout;
  Layout layout(const std::vector<std::string>& targets,
                const std::vector<Factor>& produced) const;

  std::vector<Factor> factors_;
  std::size_t input_dim_;
  std::vector<ComplexMatrix> tracks_;
};

std::size_t product(const std::vector<std::size_t>& dims);

}  // namespace sectorctl::detail
