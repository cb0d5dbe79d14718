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

#include "sectorctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sectorctl/error.hpp"

namespace sectorctl {

namespace {

ComplexMatrix proj(std::size_t n, std::size_t c) { return ket_bra(n, c, n, c); }

ComplexMatrix control_block(const ComplexMatrix& k, std::size_t tin, std::size_t tout,
                            std::size_t r, std::size_t c) {
  return k.block(r * tout, c * tin, tout, tin);
}

}  // namespace

ControlledChannel::ControlledChannel(std::size_t control_dim, std::size_t target_in,
                                     std::size_t target_out, KrausChannel channel,
                                     double tol)
    : control_dim_(control_dim),
      target_in_(target_in),
      target_out_(target_out),
      channel_(std::move(channel)) {
  if (control_dim_ == 0 || channel_.dim_in() != control_dim_ * target_in_ ||
      channel_.dim_out() != control_dim_ * target_out_)
    throw Error(ErrorCode::kDimensionMismatch,
                "controlled channel dimensions do not factor as control x target");
  for (std::size_t c = 0; c < control_dim_; ++c) {
    ComplexMatrix s = ComplexMatrix::Zero(target_in_, target_in_);
    for (const auto& k : channel_.kraus()) {
      const ComplexMatrix b = control_block(k, target_in_, target_out_, c, c);
      s += b.adjoint() * b;
    }
    if ((s - identity(target_in_)).norm() > tol)
      throw Error(ErrorCode::kMalformed,
                  "control branch " + std::to_string(c) + " is not a channel");
  }
}

KrausChannel ControlledChannel::branch(std::size_t c) const {
  if (c >= control_dim_)
    throw Error(ErrorCode::kInvalidArgument, "control index out of range");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : channel_.kraus()) {
    ComplexMatrix b = control_block(k, target_in_, target_out_, c, c);
    if (!b.isZero(0.0)) kraus.push_back(std::move(b));
  }
  if (kraus.empty()) kraus.push_back(zeros(target_out_, target_in_));
  return KrausChannel(target_in_, target_out_, std::move(kraus));
}

bool CompositeControlParams::feasible(double tol) const {
  const std::size_t n = m();
  if (static_cast<std::size_t>(gammas.rows()) != n ||
      static_cast<std::size_t>(gammas.cols()) != n)
    return false;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < j; ++i) s += std::norm(gammas(i, j));
    if (1.0 - s < -tol) return false;
  }
  return true;
}

ControlledChannel build_ctrl_unitary(const ComplexMatrix& u, double tol) {
  if (!is_unitary(u, tol))
    throw Error(ErrorCode::kInvalidArgument, "operator is not unitary");
  const std::size_t d = u.rows();
  ComplexMatrix k = kron(proj(2, 0), identity(d)) + kron(proj(2, 1), u);
  return ControlledChannel(2, d, d, KrausChannel(2 * d, 2 * d, {k}));
}

ControlledChannel build_pinned_control(const PinnedChannel& p, double tol) {
  const KrausChannel& c = p.channel();
  if (c.dim_in() != c.dim_out())
    throw Error(ErrorCode::kDimensionMismatch, "pinned control needs a square channel");
  if (!p.pin_is_first(tol))
    throw Error(ErrorCode::kInvalidPin, "pin is not the first Kraus operator");
  const std::size_t d = c.dim_in();
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(kron(proj(2, 0), identity(d)) + kron(proj(2, 1), c.kraus()[0]));
  for (std::size_t i = 1; i < c.kraus().size(); ++i)
    kraus.push_back(kron(proj(2, 1), c.kraus()[i]));
  return ControlledChannel(2, d, d, KrausChannel(2 * d, 2 * d, std::move(kraus)));
}

ControlledChannel build_amplitude_control(const std::vector<ComplexMatrix>& kraus,
                                          const std::vector<Complex>& amplitudes) {
  if (kraus.empty() || kraus.size() != amplitudes.size())
    throw Error(ErrorCode::kDimensionMismatch, "amplitude count differs from Kraus count");
  const std::size_t d = kraus[0].rows();
  if (static_cast<std::size_t>(kraus[0].cols()) != d)
    throw Error(ErrorCode::kDimensionMismatch, "amplitude control needs a square channel");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < kraus.size(); ++i)
    out.push_back(kron(proj(2, 0), amplitudes[i] * identity(d)) +
                  kron(proj(2, 1), kraus[i]));
  return ControlledChannel(2, d, d, KrausChannel(2 * d, 2 * d, std::move(out)));
}

ControlledChannel build_ctrl_two_unitary(const ComplexMatrix& u, const ComplexMatrix& v,
                                         double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw Error(ErrorCode::kDimensionMismatch, "operators have different shapes");
  if (!is_isometry(u, tol) || !is_isometry(v, tol))
    throw Error(ErrorCode::kInvalidArgument, "operators must be isometries");
  const std::size_t din = u.cols(), dout = u.rows();
  ComplexMatrix k = kron(proj(2, 0), u) + kron(proj(2, 1), v);
  return ControlledChannel(2, din, dout, KrausChannel(2 * din, 2 * dout, {k}));
}

ControlledChannel build_two_channel_control(const std::vector<ComplexMatrix>& a_kraus,
                                            const std::vector<ComplexMatrix>& b_kraus,
                                            double tol) {
  if (a_kraus.empty() || b_kraus.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty Kraus list");
  const std::size_t dout = a_kraus[0].rows(), din = a_kraus[0].cols();
  // validates shapes and trace preservation of each branch
  KrausChannel a(din, dout, a_kraus, tol);
  KrausChannel b(din, dout, b_kraus, tol);
  std::vector<ComplexMatrix> pa = a_kraus, pb = b_kraus;
  while (pa.size() < pb.size()) pa.push_back(zeros(dout, din));
  while (pb.size() < pa.size()) pb.push_back(zeros(dout, din));
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < pa.size(); ++i)
    out.push_back(kron(proj(2, 0), pa[i]) + kron(proj(2, 1), pb[i]));
  return ControlledChannel(2, din, dout, KrausChannel(2 * din, 2 * dout, std::move(out)));
}

ControlledChannel build_composite_control(const KrausChannel& c,
                                          const CompositeControlParams& params,
                                          double tol) {
  const std::size_t m = params.m();
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "composite control needs m >= 1");
  if (c.dim_in() != c.dim_out())
    throw Error(ErrorCode::kDimensionMismatch, "composite control needs a square channel");
  if (!params.feasible())
    throw Error(ErrorCode::kInvalidArgument, "gamma amplitudes are infeasible");
  const CPMap rest = remainder_map(c, params.pins, tol);
  const std::size_t d = c.dim_in(), n = m + 1;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < m; ++j) {
    double used = 0.0;
    for (std::size_t i = 0; i < j; ++i) used += std::norm(params.gammas(i, j));
    ComplexMatrix k = kron(proj(n, 0), params.pins[j]);
    k += std::sqrt(std::max(0.0, 1.0 - used)) * kron(proj(n, j + 1), identity(d));
    for (std::size_t l = j + 1; l < m; ++l)
      k += params.gammas(j, l) * kron(proj(n, l + 1), identity(d));
    kraus.push_back(std::move(k));
  }
  for (const auto& r : rest.kraus()) kraus.push_back(kron(proj(n, 0), r));
  return ControlledChannel(n, d, d, KrausChannel(n * d, n * d, std::move(kraus)));
}

ComplexMatrix cross_block(const ControlledChannel& cc, std::size_t k, std::size_t j) {
  const std::size_t n = cc.control_dim();
  if (k >= n || j >= n) throw Error(ErrorCode::kInvalidArgument, "control index out of range");
  const ComplexMatrix x = kron(ket_bra(n, k, n, j), identity(cc.target_in()));
  const ComplexMatrix y = cc.channel().apply(x);
  const std::size_t t = cc.target_out();
  return y.block(k * t, j * t, t, t);
}

CompositeExtraction extract_composite_params(const ControlledChannel& cc, std::size_t m,
                                             double tol) {
  const std::size_t n = cc.control_dim(), d = cc.target_in();
  if (n != m + 1 || m == 0)
    throw Error(ErrorCode::kInvalidArgument, "control dimension must be m + 1");
  if (cc.target_out() != d)
    throw Error(ErrorCode::kMalformed, "composite control needs a square target");
  // Gram matrix G(k, j) from the blocks <k|N(|k><j| x I)|j> = G(k, j) I
  ComplexMatrix g(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexMatrix b = cross_block(cc, k + 1, j + 1);
      const Complex coef = b.trace() / static_cast<double>(d);
      if ((b - coef * identity(d)).norm() > tol)
        throw Error(ErrorCode::kMalformed,
                    "cross block is not a multiple of the identity");
      g(k, j) = coef;
    }
  // conj(G) = R^dagger R with R upper triangular, R(i, j) the coefficient of
  // |j><j| (x) I in the i-th Kraus operator. Zero pivots zero the row.
  const ComplexMatrix h = g.conjugate();
  ComplexMatrix r = ComplexMatrix::Zero(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Complex diag = h(i, i);
    for (std::size_t p = 0; p < i; ++p) diag -= std::norm(r(p, i));
    const double piv = diag.real();
    if (piv <= 1e-12) continue;
    r(i, i) = std::sqrt(piv);
    for (std::size_t j = i + 1; j < m; ++j) {
      Complex s = h(i, j);
      for (std::size_t p = 0; p < i; ++p) s -= std::conj(r(p, i)) * r(p, j);
      r(i, j) = s / r(i, i);
    }
  }
  CompositeExtraction out{cc.branch(0), CompositeControlParams{{}, ComplexMatrix::Zero(m, m)},
                          std::vector<bool>(m, true)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out.params.gammas(i, j) = r(i, j);
  // E_j = sum_{i <= j} conj(R(i, j)) C_i'
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix e = cross_block(cc, 0, j + 1);
    for (std::size_t i = 0; i < j; ++i) e -= std::conj(r(i, j)) * out.params.pins[i];
    if (r(j, j) == Complex(0.0)) {
      out.pin_unique[j] = false;
      out.params.pins.push_back(zeros(d, d));
    } else {
      out.params.pins.push_back(e / r(j, j).real());
    }
  }
  out.channel = minimal_kraus(out.channel);
  ControlledChannel rebuilt = build_composite_control(out.channel, out.params);
  if (!channels_equal(rebuilt.channel(), cc.channel(), std::max(tol, 1e-9)))
    throw Error(ErrorCode::kMalformed, "input is not a compositely controlled channel");
  return out;
}

ControlledChannel relabel_control(const ControlledChannel& cc,
                                  const std::vector<std::size_t>& perm) {
  const std::size_t n = cc.control_dim();
  if (perm.size() != n) throw Error(ErrorCode::kInvalidArgument, "permutation has wrong size");
  std::vector<bool> seen(n, false);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (perm[c] >= n || seen[perm[c]])
      throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    seen[perm[c]] = true;
    p(perm[c], c) = 1.0;
  }
  const ComplexMatrix pin = kron(p, identity(cc.target_in()));
  const ComplexMatrix pout = kron(p, identity(cc.target_out()));
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : cc.channel().kraus()) kraus.push_back(pout * k * pin.adjoint());
  return ControlledChannel(n, cc.target_in(), cc.target_out(),
                           KrausChannel(cc.channel().dim_in(), cc.channel().dim_out(),
                                        std::move(kraus)));
}

ComplexMatrix coherence_block(const ComplexMatrix& j, std::size_t control_dim,
                              std::size_t target_in, std::size_t target_out,
                              std::size_t r, std::size_t c) {
  const std::size_t dout = control_dim * target_out;
  const std::size_t n = target_in * target_out;
  if (static_cast<std::size_t>(j.rows()) != control_dim * target_in * dout)
    throw Error(ErrorCode::kDimensionMismatch, "Choi matrix has wrong size");
  ComplexMatrix out(n, n);
  auto index = [&](std::size_t ctl, std::size_t tin, std::size_t tout) {
    return (ctl * target_in + tin) * dout + ctl * target_out + tout;
  };
  for (std::size_t a = 0; a < target_in; ++a)
    for (std::size_t b = 0; b < target_out; ++b)
      for (std::size_t s = 0; s < target_in; ++s)
        for (std::size_t t = 0; t < target_out; ++t)
          out(a * target_out + b, s * target_out + t) = j(index(r, a, b), index(c, s, t));
  return out;
}

ComplexMatrix coherence_block(const ControlledChannel& cc, std::size_t r, std::size_t c) {
  return coherence_block(choi(cc.channel()), cc.control_dim(), cc.target_in(),
                         cc.target_out(), r, c);
}

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace sectorctl
