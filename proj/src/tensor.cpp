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

#include "sectorctl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sectorctl/error.hpp"

namespace sectorctl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNotHermitian: return "not_hermitian";
    case ErrorCode::kRankDeficient: return "rank_deficient";
    case ErrorCode::kNotTracePreserving: return "not_trace_preserving";
    case ErrorCode::kNotNormalized: return "not_normalized";
    case ErrorCode::kInvalidPin: return "invalid_pin";
    case ErrorCode::kRouteViolation: return "route_violation";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnknownSuite: return "unknown_suite";
  }
  return "unknown";
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out = ComplexMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const std::size_t n = dims.size();
  const std::size_t total = std::accumulate(dims.begin(), dims.end(),
                                            std::size_t{1}, std::multiplies<>());
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total)
    throw Error(ErrorCode::kDimensionMismatch,
                "partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", factors multiply to " +
                    std::to_string(total));
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n)
      throw Error(ErrorCode::kDimensionMismatch,
                  "partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) stride[k - 1] = stride[k] * dims[k];

  // kept / traced offsets for every multi-index, split by factor role
  std::size_t kept_dim = 1, traced_dim = 1;
  for (std::size_t k = 0; k < n; ++k) (kept[k] ? kept_dim : traced_dim) *= dims[k];
  auto offsets = [&](bool want_kept, std::size_t count) {
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx, off = 0;
      for (std::size_t k = n; k-- > 0;) {
        if (kept[k] != want_kept) continue;
        off += (rem % dims[k]) * stride[k];
        rem /= dims[k];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto ko = offsets(true, kept_dim);
  const auto to = offsets(false, traced_dim);
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (std::size_t b = 0; b < kept_dim; ++b) {
      Complex s = 0;
      for (std::size_t t : to) s += m(ko[a] + t, ko[b] + t);
      out(a, b) = s;
    }
  return out;
}

EigResult eig_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::kDimensionMismatch, "eig_hermitian: not square");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol * scale)
    throw Error(ErrorCode::kNotHermitian,
                "eig_hermitian: input not Hermitian within tolerance");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kMalformed, "eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix qr_isometry(const ComplexMatrix& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  if (r < c)
    throw Error(ErrorCode::kDimensionMismatch,
                "qr_isometry: needs rows >= cols");
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd upper = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
  const double scale = std::max(m.norm(), 1e-300);
  for (Eigen::Index k = 0; k < c; ++k)
    if (std::abs(upper(k, k)) <= 1e-12 * scale)
      throw Error(ErrorCode::kRankDeficient, "qr_isometry: rank-deficient input");
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(r, c);
  // fix the phase freedom so R has a positive real diagonal
  for (Eigen::Index k = 0; k < c; ++k) {
    const Complex d = upper(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix::Zero(rows, cols);
}

ComplexMatrix ket_bra(std::size_t rows, std::size_t i, std::size_t cols,
                      std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

bool is_isometry(const ComplexMatrix& m, double tol) {
  return m.rows() >= m.cols() &&
         (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm() <=
             tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && is_isometry(m, tol);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kDimensionMismatch, "frobenius_distance: shapes differ");
  return (a - b).norm();
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    for (Eigen::Index a = 0; a < m.rows(); ++a) v(i * m.rows() + a) = m(a, i);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols)
    throw Error(ErrorCode::kDimensionMismatch, "unvec: length mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t a = 0; a < rows; ++a) m(a, i) = v(i * rows + a);
  return m;
}

}  // namespace sectorctl
