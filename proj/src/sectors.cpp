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

#include "sectorctl/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sectorctl/error.hpp"

namespace sectorctl {

PartitionedSpace::PartitionedSpace(std::vector<std::size_t> sector_dims)
    : dims_(std::move(sector_dims)) {
  if (dims_.empty())
    throw Error(ErrorCode::kInvalidArgument, "partitioned space needs a sector");
  for (std::size_t d : dims_) {
    if (d == 0)
      throw Error(ErrorCode::kInvalidArgument, "sector dimension must be >= 1");
    offsets_.push_back(total_);
    total_ += d;
  }
}

std::vector<std::size_t> PartitionedSpace::labels() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dims_.size(); ++k) out.insert(out.end(), dims_[k], k);
  return out;
}

Route::Route(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {
  if (rows == 0 || cols == 0)
    throw Error(ErrorCode::kInvalidArgument, "route needs at least one sector");
}

Route::Route(const std::vector<std::vector<bool>>& matrix)
    : Route(matrix.size(), matrix.empty() ? 0 : matrix[0].size()) {
  for (std::size_t l = 0; l < rows_; ++l) {
    if (matrix[l].size() != cols_)
      throw Error(ErrorCode::kInvalidArgument, "ragged route matrix");
    for (std::size_t k = 0; k < cols_; ++k) set(l, k, matrix[l][k]);
  }
}

Route Route::identity(std::size_t n) {
  Route r(n, n);
  for (std::size_t k = 0; k < n; ++k) r.set(k, k, true);
  return r;
}

void Route::set(std::size_t out, std::size_t in, bool value) {
  if (out >= rows_ || in >= cols_)
    throw Error(ErrorCode::kDimensionMismatch, "route index out of range");
  bits_[out * cols_ + in] = value ? 1 : 0;
}

bool Route::is_total() const {
  for (std::size_t k = 0; k < cols_; ++k) {
    bool any = false;
    for (std::size_t l = 0; l < rows_; ++l) any = any || at(l, k);
    if (!any) return false;
  }
  return true;
}

bool Route::is_identity() const { return *this == identity(rows_); }

Route Route::transpose() const {
  Route t(cols_, rows_);
  for (std::size_t l = 0; l < rows_; ++l)
    for (std::size_t k = 0; k < cols_; ++k) t.set(k, l, at(l, k));
  return t;
}

std::vector<std::vector<bool>> Route::to_matrix() const {
  std::vector<std::vector<bool>> m(rows_, std::vector<bool>(cols_));
  for (std::size_t l = 0; l < rows_; ++l)
    for (std::size_t k = 0; k < cols_; ++k) m[l][k] = at(l, k);
  return m;
}

Route route_compose(const Route& after, const Route& before) {
  if (after.cols() != before.rows())
    throw Error(ErrorCode::kDimensionMismatch,
                "route_compose: inner sector counts differ (" +
                    std::to_string(after.cols()) + " vs " +
                    std::to_string(before.rows()) + ")");
  Route out(after.rows(), before.cols());
  for (std::size_t l = 0; l < after.rows(); ++l)
    for (std::size_t k = 0; k < before.cols(); ++k) {
      bool any = false;
      for (std::size_t m = 0; m < after.cols() && !any; ++m)
        any = after.at(l, m) && before.at(m, k);
      out.set(l, k, any);
    }
  return out;
}

Route route_kron(const Route& a, const Route& b) {
  Route out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t l1 = 0; l1 < a.rows(); ++l1)
    for (std::size_t k1 = 0; k1 < a.cols(); ++k1)
      for (std::size_t l2 = 0; l2 < b.rows(); ++l2)
        for (std::size_t k2 = 0; k2 < b.cols(); ++k2)
          out.set(l1 * b.rows() + l2, k1 * b.cols() + k2, a.at(l1, k1) && b.at(l2, k2));
  return out;
}

SectorLabels SectorLabels::of(const PartitionedSpace& s) {
  return {s.num_sectors(), s.labels()};
}

SectorLabels SectorLabels::tensor(const std::vector<SectorLabels>& parts) {
  SectorLabels out{1, {0}};
  for (const auto& p : parts) {
    SectorLabels next;
    next.num_sectors = out.num_sectors * p.num_sectors;
    next.label.reserve(out.label.size() * p.label.size());
    for (std::size_t a : out.label)
      for (std::size_t b : p.label) next.label.push_back(a * p.num_sectors + b);
    out = std::move(next);
  }
  return out;
}

SectorLabels SectorLabels::with_aux(std::size_t aux_dim) const {
  SectorLabels out{num_sectors, {}};
  for (std::size_t l : label) out.label.insert(out.label.end(), aux_dim, l);
  return out;
}

namespace {

std::vector<std::vector<Eigen::Index>> indices_by_sector(const SectorLabels& s) {
  std::vector<std::vector<Eigen::Index>> out(s.num_sectors);
  for (std::size_t i = 0; i < s.label.size(); ++i)
    out.at(s.label[i]).push_back(static_cast<Eigen::Index>(i));
  return out;
}

// sqrt of the operator norm of sum_i B_i^dagger B_i, B_i the (l, k) block
double block_leak(const std::vector<ComplexMatrix>& kraus,
                  const std::vector<Eigen::Index>& rows,
                  const std::vector<Eigen::Index>& cols) {
  if (rows.empty() || cols.empty()) return 0.0;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(cols.size(), cols.size());
  bool any = false;
  for (const auto& k : kraus) {
    Eigen::MatrixXcd b(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) b(r, c) = k(rows[r], cols[c]);
    if (b.isZero(0.0)) continue;
    any = true;
    g.noalias() += b.adjoint() * b;
  }
  if (!any) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

void check_label_dims(const std::vector<ComplexMatrix>& kraus, const SectorLabels& in,
                      const SectorLabels& out, const Route& route) {
  if (route.rows() != out.num_sectors || route.cols() != in.num_sectors)
    throw Error(ErrorCode::kDimensionMismatch,
                "route is " + std::to_string(route.rows()) + "x" +
                    std::to_string(route.cols()) + ", sectors are " +
                    std::to_string(out.num_sectors) + " out, " +
                    std::to_string(in.num_sectors) + " in");
  for (const auto& k : kraus)
    if (static_cast<std::size_t>(k.rows()) != out.label.size() ||
        static_cast<std::size_t>(k.cols()) != in.label.size())
      throw Error(ErrorCode::kDimensionMismatch, "Kraus operator does not fit the spaces");
}

}  // namespace

std::vector<Leak> route_leaks(const std::vector<ComplexMatrix>& kraus,
                              const SectorLabels& in, const SectorLabels& out,
                              const Route& route, double tol) {
  check_label_dims(kraus, in, out, route);
  const auto in_idx = indices_by_sector(in);
  const auto out_idx = indices_by_sector(out);
  std::vector<Leak> leaks;
  for (std::size_t k = 0; k < in.num_sectors; ++k)
    for (std::size_t l = 0; l < out.num_sectors; ++l) {
      if (route.at(l, k)) continue;
      const double n = block_leak(kraus, out_idx[l], in_idx[k]);
      if (n > tol) leaks.push_back({k, l, n});
    }
  return leaks;
}

double max_route_leakage(const std::vector<ComplexMatrix>& kraus,
                         const SectorLabels& in, const SectorLabels& out,
                         const Route& route) {
  double worst = 0.0;
  for (const Leak& l : route_leaks(kraus, in, out, route, -1.0))
    worst = std::max(worst, l.norm);
  return worst;
}

bool follows_route(const CPMap& c, const PartitionedSpace& sin,
                   const PartitionedSpace& sout, const Route& r, double tol) {
  if (c.dim_in() != sin.dim() || c.dim_out() != sout.dim())
    throw Error(ErrorCode::kDimensionMismatch, "follows_route: channel does not fit the spaces");
  return route_leaks(c.kraus(), SectorLabels::of(sin), SectorLabels::of(sout), r, tol)
      .empty();
}

bool follows_route(const KrausChannel& c, const PartitionedSpace& sin,
                   const PartitionedSpace& sout, const Route& r, double tol) {
  return follows_route(c.map(), sin, sout, r, tol);
}

RoutedKrausChannel::RoutedKrausChannel(PartitionedSpace space_in,
                                       PartitionedSpace space_out, Route route,
                                       KrausChannel channel, double tol)
    : space_in_(std::move(space_in)),
      space_out_(std::move(space_out)),
      route_(std::move(route)),
      channel_(std::move(channel)) {
  if (!follows_route(channel_, space_in_, space_out_, route_, tol))
    throw Error(ErrorCode::kRouteViolation, "channel does not follow its route");
}

SectorPreserving1d::SectorPreserving1d(RoutedKrausChannel routed, double tol)
    : routed_(std::move(routed)) {
  const auto& si = routed_.space_in();
  const auto& so = routed_.space_out();
  if (si.num_sectors() != 2 || si.sector_dim(0) != 1 || si != so)
    throw Error(ErrorCode::kInvalidArgument,
                "expected a channel of type (1, d) -> (1, d)");
  if (!routed_.route().is_identity())
    throw Error(ErrorCode::kRouteViolation, "expected the identity route");
  // vacuum block of the Choi matrix: sum_i |K_i(0,0)|^2
  double vac = 0.0;
  for (const auto& k : routed_.channel().kraus()) vac += std::norm(k(0, 0));
  if (std::abs(vac - 1.0) > tol)
    throw Error(ErrorCode::kMalformed, "channel does not act as identity on sector 0");
}

SectorPreserving1d build_sector_preserving_1d(const PinnedChannel& p, double tol) {
  const KrausChannel& c = p.channel();
  if (c.dim_in() != c.dim_out())
    throw Error(ErrorCode::kDimensionMismatch, "type (1, d) needs a square channel");
  if (!p.pin_is_first(tol))
    throw Error(ErrorCode::kInvalidPin, "pin is not the first Kraus operator");
  const std::size_t d = c.dim_in();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < c.kraus().size(); ++i) {
    ComplexMatrix head = ComplexMatrix::Constant(1, 1, i == 0 ? 1.0 : 0.0);
    kraus.push_back(direct_sum({head, c.kraus()[i]}));
  }
  PartitionedSpace s({1, d});
  return SectorPreserving1d(RoutedKrausChannel(
      s, s, Route::identity(2), KrausChannel(d + 1, d + 1, std::move(kraus)), tol));
}

PinnedChannel extract_pin(const SectorPreserving1d& s, double tol) {
  const std::size_t d = s.d();
  std::vector<ComplexMatrix> blocks;
  std::vector<Complex> alpha;
  double vac = 0.0;
  for (const auto& k : s.channel().kraus()) {
    blocks.push_back(k.bottomRightCorner(d, d));
    alpha.push_back(k(0, 0));
    vac += std::norm(k(0, 0));
  }
  if (std::abs(vac - 1.0) > tol)
    throw Error(ErrorCode::kMalformed, "channel does not act as identity on sector 0");
  // renormalize away rounding so canonicalization sees a unit vector
  for (auto& a : alpha) a /= std::sqrt(vac);
  return canonicalize_pinned(blocks, alpha);
}

RoutedKrausChannel build_sector_preserving_d11(const KrausChannel& c,
                                               const ComplexMatrix& pin1,
                                               const ComplexMatrix& pin2,
                                               Complex gamma12, double tol) {
  const double g = std::abs(gamma12);
  if (g > 1.0 + 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "|gamma12| must be <= 1");
  const CPMap rest = remainder_map(c, {pin1, pin2}, tol);
  const double s = std::sqrt(std::max(0.0, 1.0 - g * g));
  auto scalar = [](Complex z) { return ComplexMatrix::Constant(1, 1, z); };
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(direct_sum({pin1, scalar(1.0), scalar(gamma12)}));
  kraus.push_back(direct_sum({pin2, scalar(0.0), scalar(s)}));
  for (const auto& k : rest.kraus())
    kraus.push_back(direct_sum({k, scalar(0.0), scalar(0.0)}));
  const std::size_t din = c.dim_in(), dout = c.dim_out();
  return RoutedKrausChannel(PartitionedSpace({din, 1, 1}), PartitionedSpace({dout, 1, 1}),
                            Route::identity(3),
                            KrausChannel(din + 2, dout + 2, std::move(kraus)));
}

D11Params extract_d11(const RoutedKrausChannel& s, double tol) {
  const auto& si = s.space_in();
  const auto& so = s.space_out();
  if (si.num_sectors() != 3 || si.sector_dim(1) != 1 || si.sector_dim(2) != 1 ||
      so.num_sectors() != 3 || so.sector_dim(1) != 1 || so.sector_dim(2) != 1 ||
      !s.route().is_identity())
    throw Error(ErrorCode::kInvalidArgument, "expected type (d, 1, 1) with identity route");
  const std::size_t din = si.sector_dim(0), dout = so.sector_dim(0);
  const auto& kraus = s.channel().kraus();
  const std::size_t n = kraus.size();
  ComplexVector a(n), b(n);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    blocks.push_back(kraus[i].topLeftCorner(dout, din));
    a(i) = kraus[i](dout, din);
    b(i) = kraus[i](dout + 1, din + 1);
  }
  if (std::abs(a.norm() - 1.0) > tol || std::abs(b.norm() - 1.0) > tol)
    throw Error(ErrorCode::kMalformed, "one-dimensional sectors are not preserved");
  a /= a.norm();
  b /= b.norm();
  const Complex gamma = a.dot(b);  // <a|b>
  ComplexMatrix pin1 = ComplexMatrix::Zero(dout, din);
  for (std::size_t i = 0; i < n; ++i) pin1 += std::conj(a(i)) * blocks[i];
  const double s2 = 1.0 - std::norm(gamma);
  ComplexMatrix pin2 = ComplexMatrix::Zero(dout, din);
  bool unique = s2 > 1e-12;
  if (unique) {
    const ComplexVector u = (b - gamma * a) / std::sqrt(s2);
    for (std::size_t i = 0; i < n; ++i) pin2 += std::conj(u(i)) * blocks[i];
  }
  return {KrausChannel(din, dout, std::move(blocks)), pin1, pin2, gamma, unique};
}

RoutedKrausChannel build_isometric_sp(const ComplexMatrix& v, double tol) {
  if (!is_isometry(v, tol))
    throw Error(ErrorCode::kInvalidArgument, "operator is not an isometry");
  const std::size_t din = v.cols(), dout = v.rows();
  ComplexMatrix k = direct_sum({ComplexMatrix::Ones(1, 1), v});
  return RoutedKrausChannel(PartitionedSpace({1, din}), PartitionedSpace({1, dout}),
                            Route::identity(2), KrausChannel(din + 1, dout + 1, {k}));
}

CPMap random_route_follower(const SectorLabels& in, const SectorLabels& out,
                            const Route& route, std::size_t env_dim, Prng& rng) {
  if (route.rows() != out.num_sectors || route.cols() != in.num_sectors)
    throw Error(ErrorCode::kDimensionMismatch, "route does not fit the spaces");
  if (!route.is_total())
    throw Error(ErrorCode::kInvalidArgument, "no channel follows a non-total route");
  const auto in_idx = indices_by_sector(in);
  const auto out_idx = indices_by_sector(out);
  const std::size_t nin = in.num_sectors;
  std::vector<std::vector<Eigen::Index>> targets(nin);
  bool disjoint = true;
  std::vector<int> owner(out.num_sectors, -1);
  for (std::size_t k = 0; k < nin; ++k)
    for (std::size_t l = 0; l < out.num_sectors; ++l) {
      if (!route.at(l, k)) continue;
      targets[k].insert(targets[k].end(), out_idx[l].begin(), out_idx[l].end());
      if (owner[l] >= 0) disjoint = false;
      owner[l] = static_cast<int>(k);
    }
  for (auto& t : targets) std::sort(t.begin(), t.end());

  auto env_for = [&](std::size_t k) {
    std::size_t r = std::max<std::size_t>(env_dim, 1);
    const std::size_t o = targets[k].size();
    while (o * r < in_idx[k].size()) ++r;
    return r;
  };
  std::size_t shared = 1;
  if (disjoint)
    for (std::size_t k = 0; k < nin; ++k)
      if (!in_idx[k].empty()) shared = std::max(shared, env_for(k));

  const std::size_t din = in.label.size(), dout = out.label.size();
  std::vector<ComplexMatrix> kraus;
  if (disjoint) kraus.assign(shared, ComplexMatrix::Zero(dout, din));
  for (std::size_t k = 0; k < nin; ++k) {
    if (in_idx[k].empty()) continue;
    const std::size_t r = disjoint ? shared : env_for(k);
    const std::size_t o = targets[k].size();
    const ComplexMatrix v = random_isometry(in_idx[k].size(), o * r, rng);
    const std::size_t base = disjoint ? 0 : kraus.size();
    if (!disjoint) kraus.resize(base + r, ComplexMatrix::Zero(dout, din));
    for (std::size_t e = 0; e < r; ++e)
      for (std::size_t t = 0; t < o; ++t)
        for (std::size_t i = 0; i < in_idx[k].size(); ++i)
          kraus[base + e](targets[k][t], in_idx[k][i]) = v(t * r + e, i);
  }
  return CPMap(din, dout, std::move(kraus));
}

}  // namespace sectorctl
