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
#include <optional>

#include "sectorctl/tensor.hpp"

namespace sectorctl {

// Counter-based generator. A stream is fixed by (seed, stream_id); draw n is
//   key  = mix64(seed ^ mix64(stream_id + kGolden))
//   u64n = mix64(key + (n + 1) * kGolden)
// with mix64 the SplitMix64 finalizer (multipliers 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB, shifts 30/27/31). Uniforms take the top 53 bits.
// Gaussians come in Box-Muller pairs from two consecutive uniforms:
//   r = sqrt(-2 ln(1 - u1)), g1 = r cos(2 pi u2), g2 = r sin(2 pi u2).
class Prng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  Prng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double gaussian();                      // standard normal
  Complex complex_gaussian();             // E|z|^2 = 1
  std::size_t uniform_index(std::size_t n);  // [0, n)

  // Child stream, deterministic in (this stream's key, id).
  Prng split(std::uint64_t id) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  struct FromKey {};
  Prng(FromKey, std::uint64_t key);
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

std::uint64_t mix64(std::uint64_t z);

Prng prng_split(std::uint64_t seed, std::uint64_t stream_id);

// Random linear-algebra samples drawn through a Prng.
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Prng& rng);
ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out, Prng& rng);
ComplexMatrix random_unitary(std::size_t d, Prng& rng);
ComplexVector random_unit_vector(std::size_t n, Prng& rng);

}  // namespace sectorctl
