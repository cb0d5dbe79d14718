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

#include "sectorctl/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sectorctl/error.hpp"

namespace sectorctl {

namespace {

void check_shapes(std::size_t dim_in, std::size_t dim_out,
                  const std::vector<ComplexMatrix>& kraus) {
  if (dim_in == 0 || dim_out == 0)
    throw Error(ErrorCode::kDimensionMismatch, "zero dimension");
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != dim_out ||
        static_cast<std::size_t>(k.cols()) != dim_in)
      throw Error(ErrorCode::kDimensionMismatch,
                  "Kraus operator is " + std::to_string(k.rows()) + "x" +
                      std::to_string(k.cols()) + ", expected " +
                      std::to_string(dim_out) + "x" + std::to_string(dim_in));
    if (!all_finite(k))
      throw Error(ErrorCode::kInvalidArgument, "non-finite Kraus entry");
  }
}

}  // namespace

CPMap::CPMap(std::size_t dim_in, std::size_t dim_out,
             std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  check_shapes(dim_in_, dim_out_, kraus_);
}

ComplexMatrix CPMap::apply(const ComplexMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != dim_in_ ||
      static_cast<std::size_t>(x.cols()) != dim_in_)
    throw Error(ErrorCode::kDimensionMismatch, "apply: operator has wrong size");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix CPMap::tp_operator() const {
  ComplexMatrix s = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s;
}

double CPMap::tp_defect() const {
  return (tp_operator() - identity(dim_in_)).norm();
}

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus, double tol)
    : KrausChannel(CPMap(dim_in, dim_out, std::move(kraus)), tol) {}

KrausChannel::KrausChannel(const CPMap& map, double tol) : map_(map) {
  if (map_.kraus().empty())
    throw Error(ErrorCode::kInvalidArgument, "empty Kraus list");
  const double defect = map_.tp_defect();
  if (!(defect <= tol))
    throw Error(ErrorCode::kNotTracePreserving,
                "Kraus list is not trace preserving (defect " +
                    std::to_string(defect) + ")");
}

PinnedChannel::PinnedChannel(KrausChannel channel, ComplexMatrix pin, double tol)
    : channel_(std::move(channel)), pin_(std::move(pin)) {
  if (static_cast<std::size_t>(pin_.rows()) != channel_.dim_out() ||
      static_cast<std::size_t>(pin_.cols()) != channel_.dim_in())
    throw Error(ErrorCode::kDimensionMismatch, "pin has wrong shape");
  if (!is_valid_pin(channel_, pin_, tol))
    throw Error(ErrorCode::kInvalidPin, "pin is not a Kraus operator of the channel");
}

bool PinnedChannel::pin_is_first(double tol) const {
  return (channel_.kraus().front() - pin_).norm() <= tol;
}

ComplexMatrix choi(const CPMap& map) {
  const std::size_t n = map.dim_in() * map.dim_out();
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (const auto& k : map.kraus()) {
    const ComplexVector v = vec(k);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

ComplexMatrix choi(const KrausChannel& c) { return choi(c.map()); }

double choi_distance(const CPMap& a, const CPMap& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw Error(ErrorCode::kDimensionMismatch,
                "channels have different dimensions");
  return (choi(a) - choi(b)).norm();
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  return choi_distance(a.map(), b.map());
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tol) {
  return choi_distance(a, b) <= tol;
}

CPMap cp_map_from_choi(const ComplexMatrix& j, std::size_t dim_in,
                       std::size_t dim_out, double psd_tol, double rank_tol) {
  if (static_cast<std::size_t>(j.rows()) != dim_in * dim_out)
    throw Error(ErrorCode::kDimensionMismatch, "Choi matrix has wrong size");
  const EigResult e = eig_hermitian(j);
  if (e.values(0) < -psd_tol)
    throw Error(ErrorCode::kMalformed,
                "Choi matrix is not PSD (eigenvalue " +
                    std::to_string(e.values(0)) + ")");
  const double top = std::max(e.values(e.values.size() - 1), 0.0);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = e.values.size(); i-- > 0;) {
    const double lambda = e.values(i);
    if (top <= 0.0 || lambda <= rank_tol * top) break;
    kraus.push_back(unvec(std::sqrt(lambda) * e.vectors.col(i), dim_out, dim_in));
  }
  return CPMap(dim_in, dim_out, std::move(kraus));
}

namespace {

ComplexMatrix remainder_choi(const KrausChannel& c,
                             const std::vector<ComplexMatrix>& pins) {
  ComplexMatrix j = choi(c);
  for (const auto& p : pins) {
    if (static_cast<std::size_t>(p.rows()) != c.dim_out() ||
        static_cast<std::size_t>(p.cols()) != c.dim_in())
      throw Error(ErrorCode::kDimensionMismatch, "pin has wrong shape");
    const ComplexVector v = vec(p);
    j -= v * v.adjoint();
  }
  return j;
}

}  // namespace

double min_remainder_eigenvalue(const KrausChannel& c,
                                const std::vector<ComplexMatrix>& pins) {
  return eig_hermitian(remainder_choi(c, pins)).values(0);
}

CPMap remainder_map(const KrausChannel& c, const std::vector<ComplexMatrix>& pins,
                    double psd_tol, double rank_tol) {
  const ComplexMatrix j = remainder_choi(c, pins);
  const EigResult e = eig_hermitian(j);
  if (e.values(0) < -psd_tol)
    throw Error(ErrorCode::kInvalidPin,
                "remainder map is not completely positive (eigenvalue " +
                    std::to_string(e.values(0)) + ")");
  // rank cut relative to the full channel so tiny remainders count as zero
  const double scale = eig_hermitian(choi(c)).values.maxCoeff();
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = e.values.size(); i-- > 0;) {
    const double lambda = e.values(i);
    if (lambda <= rank_tol * scale) break;
    kraus.push_back(unvec(std::sqrt(lambda) * e.vectors.col(i), c.dim_out(), c.dim_in()));
  }
  return CPMap(c.dim_in(), c.dim_out(), std::move(kraus));
}

bool is_valid_pin(const KrausChannel& c, const ComplexMatrix& k, double tol) {
  return min_remainder_eigenvalue(c, {k}) >= -tol;
}

PinnedChannel canonicalize_pinned(const std::vector<ComplexMatrix>& kraus,
                                  const std::vector<Complex>& amplitudes,
                                  double tol) {
  if (kraus.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty Kraus list");
  if (kraus.size() != amplitudes.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "amplitude count differs from Kraus count");
  const std::size_t n = kraus.size();
  ComplexVector alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha(i) = amplitudes[i];
  const double norm = alpha.norm();
  if (std::abs(norm * norm - 1.0) > tol)
    throw Error(ErrorCode::kNotNormalized,
                "amplitudes are not normalized (norm^2 = " +
                    std::to_string(norm * norm) + ")");
  const std::size_t dout = kraus[0].rows(), din = kraus[0].cols();

  ComplexMatrix pin = ComplexMatrix::Zero(dout, din);
  for (std::size_t i = 0; i < n; ++i) pin += std::conj(alpha(i)) * kraus[i];

  std::vector<ComplexMatrix> rotated;
  ComplexVector e0 = ComplexVector::Zero(n);
  e0(0) = 1.0;
  if (alpha == e0) {
    rotated = kraus;
  } else {
    // Householder: H alpha = -e^{i theta} e0, so V = -e^{-i theta} H sends
    // alpha to e0 and has first row alpha^dagger.
    const double theta = std::arg(alpha(0));
    const Complex phase = std::polar(1.0, theta);
    ComplexVector w = alpha + phase * e0;
    ComplexMatrix v = ComplexMatrix::Identity(n, n) -
                      (2.0 / w.squaredNorm()) * (w * w.adjoint());
    v *= -std::conj(phase);
    rotated = mix_kraus(kraus, v);
    rotated[0] = pin;
  }
  return PinnedChannel(KrausChannel(din, dout, std::move(rotated)), pin);
}

std::size_t choi_rank(const ComplexMatrix& j, double rank_tol) {
  const EigResult e = eig_hermitian(j);
  const double top = e.values.maxCoeff();
  if (top <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > rank_tol * top) ++r;
  return r;
}

KrausChannel minimal_kraus(const KrausChannel& c, double rank_tol) {
  return KrausChannel(cp_map_from_choi(choi(c), c.dim_in(), c.dim_out(),
                                       kPsdTol, rank_tol));
}

std::vector<ComplexMatrix> complete_prefix(const KrausChannel& b_channel,
                                           const std::vector<ComplexMatrix>& prefix,
                                           double psd_tol) {
  const CPMap rest = remainder_map(b_channel, prefix, psd_tol);
  std::vector<ComplexMatrix> full = prefix;
  for (const auto& k : rest.kraus()) full.push_back(k);
  return full;
}

namespace {

// Choi matrix of the two-channel control with Kraus |0><0| x A_i + |1><1| x B_i.
ComplexMatrix paired_control_choi(std::vector<ComplexMatrix> a,
                                  std::vector<ComplexMatrix> b) {
  const std::size_t dout = a[0].rows(), din = a[0].cols();
  while (a.size() < b.size()) a.push_back(zeros(dout, din));
  while (b.size() < a.size()) b.push_back(zeros(dout, din));
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < a.size(); ++i)
    kraus.push_back(kron(ket_bra(2, 0, 2, 0), a[i]) + kron(ket_bra(2, 1, 2, 1), b[i]));
  return choi(CPMap(2 * din, 2 * dout, std::move(kraus)));
}

}  // namespace

bool two_control_equal_iff(const KrausChannel& a_min, const KrausChannel& b_channel,
                           const std::vector<ComplexMatrix>& b1,
                           const std::vector<ComplexMatrix>& b2, double tol) {
  const std::size_t n = a_min.kraus().size();
  if (b1.size() != n || b2.size() != n)
    throw Error(ErrorCode::kDimensionMismatch,
                "prefixes must have the length of the minimal Kraus list");
  if (a_min.dim_in() != b_channel.dim_in() || a_min.dim_out() != b_channel.dim_out())
    throw Error(ErrorCode::kDimensionMismatch, "channel dimensions differ");
  if (choi_rank(choi(a_min)) != n)
    throw Error(ErrorCode::kInvalidArgument, "first channel's Kraus list is not minimal");
  const auto full1 = complete_prefix(b_channel, b1);
  const auto full2 = complete_prefix(b_channel, b2);
  const ComplexMatrix j1 = paired_control_choi(a_min.kraus(), full1);
  const ComplexMatrix j2 = paired_control_choi(a_min.kraus(), full2);
  return (j1 - j2).norm() <= tol;
}

KrausChannel random_cptp(std::size_t dim_in, std::size_t dim_out,
                         std::size_t kraus_rank, Prng& rng) {
  if (kraus_rank == 0)
    throw Error(ErrorCode::kInvalidArgument, "kraus_rank must be >= 1");
  // rows indexed (a, e) with the output index a most significant
  const ComplexMatrix v = random_isometry(dim_in, dim_out * kraus_rank, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t e = 0; e < kraus_rank; ++e) {
    ComplexMatrix k(dim_out, dim_in);
    for (std::size_t a = 0; a < dim_out; ++a) k.row(a) = v.row(a * kraus_rank + e);
    kraus.push_back(std::move(k));
  }
  return KrausChannel(dim_in, dim_out, std::move(kraus), 1e-10);
}

KrausChannel random_cptp(std::size_t dim_in, std::size_t dim_out,
                         std::size_t kraus_rank, std::uint64_t seed) {
  Prng rng(seed, 0);
  return random_cptp(dim_in, dim_out, kraus_rank, rng);
}

KrausChannel identity_channel(std::size_t d) {
  return KrausChannel(d, d, {identity(d)});
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  return KrausChannel(u.cols(), u.rows(), {u});
}

KrausChannel qubit_depolarizing() {
  ComplexMatrix z = identity(2);
  z(1, 1) = -1.0;
  const double s = std::sqrt(0.5);
  return KrausChannel(2, 2, {s * identity(2), s * z});
}

std::vector<ComplexMatrix> mix_kraus(const std::vector<ComplexMatrix>& kraus,
                                     const ComplexMatrix& v) {
  if (static_cast<std::size_t>(v.cols()) != kraus.size())
    throw Error(ErrorCode::kDimensionMismatch, "mixing matrix has wrong size");
  std::vector<ComplexMatrix> out;
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    ComplexMatrix k = ComplexMatrix::Zero(kraus[0].rows(), kraus[0].cols());
    for (std::size_t i = 0; i < kraus.size(); ++i) k += v(j, i) * kraus[i];
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace sectorctl
