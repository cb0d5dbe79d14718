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

#include "sectorctl/prng.hpp"

#include <cmath>
#include <numbers>

#include "sectorctl/error.hpp"

namespace sectorctl {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Prng::Prng(std::uint64_t seed, std::uint64_t stream_id)
    : key_(mix64(seed ^ mix64(stream_id + kGolden))) {}

Prng::Prng(FromKey, std::uint64_t key) : key_(key) {}

std::uint64_t Prng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Prng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Prng::gaussian() {
  if (spare_) {
    const double g = *spare_;
    spare_.reset();
    return g;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

Complex Prng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) * std::sqrt(0.5);
}

std::size_t Prng::uniform_index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_index: n = 0");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Prng Prng::split(std::uint64_t id) const {
  return Prng(FromKey{}, mix64(key_ ^ mix64(id + kGolden)));
}

Prng prng_split(std::uint64_t seed, std::uint64_t stream_id) {
  return Prng(seed, stream_id);
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Prng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out, Prng& rng) {
  return qr_isometry(gaussian_matrix(dim_out, dim_in, rng));
}

ComplexMatrix random_unitary(std::size_t d, Prng& rng) {
  return random_isometry(d, d, rng);
}

ComplexVector random_unit_vector(std::size_t n, Prng& rng) {
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
  return v / v.norm();
}

}  // namespace sectorctl
