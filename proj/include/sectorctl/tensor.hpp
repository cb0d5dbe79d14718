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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace sectorctl {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Every routine that uses one takes it as a parameter.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEqTol = 1e-9;
inline constexpr double kRankTol = 1e-8;  // relative to the largest eigenvalue

// Leftmost factor is the most significant index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const std::vector<ComplexMatrix>& factors);

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

// Traces out every factor not listed in `keep`; kept factors stay in their
// original order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

struct EigResult {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

EigResult eig_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

ComplexMatrix qr_isometry(const ComplexMatrix& m);

RealVector singular_values(const ComplexMatrix& m);  // descending

// Small helpers used everywhere.
ComplexMatrix identity(std::size_t n);
ComplexMatrix zeros(std::size_t rows, std::size_t cols);
ComplexMatrix ket_bra(std::size_t rows, std::size_t i, std::size_t cols,
                      std::size_t j);
ComplexMatrix dagger(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_isometry(const ComplexMatrix& m, double tol = kEqTol);
bool is_unitary(const ComplexMatrix& m, double tol = kEqTol);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacked vectorization matching the Choi convention:
// entry i*rows + a holds m(a, i).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);

}  // namespace sectorctl
