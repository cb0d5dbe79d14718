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

#include <vector>

#include "sectorctl/channel.hpp"

namespace sectorctl {

// Channel on control (x) target, block-diagonal in the control basis.
class ControlledChannel {
 public:
  ControlledChannel(std::size_t control_dim, std::size_t target_in,
                    std::size_t target_out, KrausChannel channel,
                    double tol = kEqTol);

  std::size_t control_dim() const { return control_dim_; }
  std::size_t target_in() const { return target_in_; }
  std::size_t target_out() const { return target_out_; }
  const KrausChannel& channel() const { return channel_; }

  // Branch channel rho -> <c| N(|c><c| (x) rho) |c>.
  KrausChannel branch(std::size_t c) const;

 private:
  std::size_t control_dim_;
  std::size_t target_in_;
  std::size_t target_out_;
  KrausChannel channel_;
};

// Pins C_1'..C_m' and the strictly upper-triangular amplitudes gamma(j, k),
// j < k, indexed from 0 here (control label j + 1).
struct CompositeControlParams {
  std::vector<ComplexMatrix> pins;
  ComplexMatrix gammas;  // m x m, only entries above the diagonal are read

  std::size_t m() const { return pins.size(); }
  // 1 - sum_{i<j} |gamma(i, j)|^2 >= -1e-12 for every j
  bool feasible(double tol = 1e-12) const;
};

ControlledChannel build_ctrl_unitary(const ComplexMatrix& u, double tol = kEqTol);

// Kraus |0><0| (x) I + |1><1| (x) C_1, then |1><1| (x) C_i.
ControlledChannel build_pinned_control(const PinnedChannel& p, double tol = kEqTol);

// Direct form with amplitudes: |0><0| (x) alpha_i I + |1><1| (x) C_i.
ControlledChannel build_amplitude_control(const std::vector<ComplexMatrix>& kraus,
                                          const std::vector<Complex>& amplitudes);

ControlledChannel build_ctrl_two_unitary(const ComplexMatrix& u, const ComplexMatrix& v,
                                         double tol = kEqTol);

// Kraus |0><0| (x) A_i + |1><1| (x) B_i; the shorter list is padded with zeros.
ControlledChannel build_two_channel_control(const std::vector<ComplexMatrix>& a_kraus,
                                            const std::vector<ComplexMatrix>& b_kraus,
                                            double tol = kEqTol);

// Control |0> runs the channel, |j> (j = 1..m) does nothing.
ControlledChannel build_composite_control(const KrausChannel& c,
                                          const CompositeControlParams& params,
                                          double tol = kPsdTol);

struct CompositeExtraction {
  KrausChannel channel;
  CompositeControlParams params;
  std::vector<bool> pin_unique;  // false where the pin is not determined
};

CompositeExtraction extract_composite_params(const ControlledChannel& cc, std::size_t m,
                                             double tol = kEqTol);

// Conjugates the control register by the basis permutation |c> -> |perm[c]>.
ControlledChannel relabel_control(const ControlledChannel& cc,
                                  const std::vector<std::size_t>& perm);

// <k| N(|k><j| (x) I) |j>. For pinned control, cross_block(1, 0) is the pin;
// for composite control, cross_block(0, j) carries the pins and
// cross_block(k, j) is a multiple of the identity.
ComplexMatrix cross_block(const ControlledChannel& cc, std::size_t k, std::size_t j);

// Sub-block of the Choi matrix with rows (c_in = c_out = r) and columns
// (c_in = c_out = c); its rank counts coherently linked Kraus pairs.
ComplexMatrix coherence_block(const ControlledChannel& cc, std::size_t r = 0,
                              std::size_t c = 1);
ComplexMatrix coherence_block(const ComplexMatrix& choi_matrix, std::size_t control_dim,
                              std::size_t target_in, std::size_t target_out,
                              std::size_t r, std::size_t c);

// Number of singular values above rel_tol times the largest.
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol);

}  // namespace sectorctl
