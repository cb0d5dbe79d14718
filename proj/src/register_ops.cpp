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

#include "register_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sectorctl/error.hpp"

namespace sectorctl::detail {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

struct KrausTracks::Layout {
  std::vector<std::size_t> rest_of;    // per register index
  std::vector<std::size_t> target_of;  // per register index
  std::vector<std::size_t> in_index;   // rest * target_count + t -> register index
  std::size_t rest_count = 1;
  std::size_t target_count = 1;
  std::size_t produced_count = 1;
  std::vector<std::size_t> out_index;  // rest * produced_count + t' -> new index
  std::vector<Factor> new_factors;
};

KrausTracks::KrausTracks(std::vector<Factor> inputs) : factors_(std::move(inputs)) {
  input_dim_ = register_dim();
  tracks_.push_back(identity(input_dim_));
}

std::size_t KrausTracks::register_dim() const {
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.dim;
  return n;
}

std::size_t KrausTracks::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].name == name) return i;
  throw Error(ErrorCode::kInvalidArgument, "no register factor named '" + name + "'");
}

KrausTracks::Layout KrausTracks::layout(const std::vector<std::string>& targets,
                                        const std::vector<Factor>& produced) const {
  const std::size_t nf = factors_.size();
  std::vector<long> role(nf, -1);  // position within targets, or -1
  std::size_t first = nf;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const std::size_t i = index_of(targets[t]);
    if (role[i] >= 0) throw Error(ErrorCode::kInvalidArgument, "factor targeted twice");
    role[i] = static_cast<long>(t);
    first = std::min(first, i);
  }
  Layout L;
  std::vector<std::size_t> rest_dims;
  std::vector<std::size_t> target_dims(targets.size());
  for (std::size_t i = 0; i < nf; ++i) {
    if (role[i] < 0) rest_dims.push_back(factors_[i].dim);
    else target_dims[role[i]] = factors_[i].dim;
  }
  L.rest_count = product(rest_dims);
  L.target_count = product(target_dims);
  std::vector<std::size_t> produced_dims;
  for (const auto& f : produced) produced_dims.push_back(f.dim);
  L.produced_count = product(produced_dims);

  const std::size_t r_dim = register_dim();
  L.rest_of.resize(r_dim);
  L.target_of.resize(r_dim);
  L.in_index.resize(L.rest_count * L.target_count);
  std::vector<std::size_t> tidx;
  for (const auto& t : targets) tidx.push_back(index_of(t));
  std::vector<std::size_t> digits(nf);
  for (std::size_t r = 0; r < r_dim; ++r) {
    std::size_t rem = r;
    for (std::size_t i = nf; i-- > 0;) {
      digits[i] = rem % factors_[i].dim;
      rem /= factors_[i].dim;
    }
    std::size_t rest = 0, tgt = 0;
    for (std::size_t i = 0; i < nf; ++i)
      if (role[i] < 0) rest = rest * factors_[i].dim + digits[i];
    for (std::size_t t = 0; t < targets.size(); ++t)
      tgt = tgt * target_dims[t] + digits[tidx[t]];
    L.rest_of[r] = rest;
    L.target_of[r] = tgt;
    L.in_index[rest * L.target_count + tgt] = r;
  }

  // new factor list: produced factors sit where the first target was
  std::vector<long> source;  // >= 0: old factor index, < 0: -(produced idx + 1)
  for (std::size_t i = 0; i < nf; ++i) {
    if (i == first)
      for (std::size_t p = 0; p < produced.size(); ++p) source.push_back(-static_cast<long>(p) - 1);
    if (role[i] < 0) source.push_back(static_cast<long>(i));
  }
  if (first == nf)
    for (std::size_t p = 0; p < produced.size(); ++p) source.push_back(-static_cast<long>(p) - 1);
  for (long s : source)
    L.new_factors.push_back(s >= 0 ? factors_[s] : produced[-s - 1]);

  L.out_index.resize(L.rest_count * L.produced_count);
  std::vector<std::size_t> rest_digits(rest_dims.size()), prod_digits(produced.size());
  for (std::size_t rest = 0; rest < L.rest_count; ++rest) {
    std::size_t rem = rest;
    for (std::size_t i = rest_dims.size(); i-- > 0;) {
      rest_digits[i] = rem % rest_dims[i];
      rem /= rest_dims[i];
    }
    for (std::size_t tp = 0; tp < L.produced_count; ++tp) {
      rem = tp;
      for (std::size_t i = produced.size(); i-- > 0;) {
        prod_digits[i] = rem % produced_dims[i];
        rem /= produced_dims[i];
      }
      std::size_t idx = 0, ri = 0;
      for (long s : source) {
        if (s >= 0) {
          idx = idx * factors_[s].dim + rest_digits[ri++];
        } else {
          idx = idx * produced[-s - 1].dim + prod_digits[-s - 1];
        }
      }
      L.out_index[rest * L.produced_count + tp] = idx;
    }
  }
  return L;
}

void KrausTracks::apply(const std::vector<std::string>& targets,
                        const std::vector<ComplexMatrix>& kraus,
                        const std::vector<Factor>& produced) {
  const Layout L = layout(targets, produced);
  std::size_t new_dim = 1;
  for (const auto& f : L.new_factors) new_dim *= f.dim;
  std::vector<ComplexMatrix> out;
  for (const auto& e : kraus) {
    if (static_cast<std::size_t>(e.rows()) != L.produced_count ||
        static_cast<std::size_t>(e.cols()) != L.target_count)
      throw Error(ErrorCode::kDimensionMismatch, "operation does not fit its wires");
    // nonzeros of each column of e
    std::vector<std::vector<std::pair<std::size_t, Complex>>> nz(L.target_count);
    for (std::size_t t = 0; t < L.target_count; ++t)
      for (std::size_t tp = 0; tp < L.produced_count; ++tp)
        if (e(tp, t) != Complex(0.0)) nz[t].push_back({tp, e(tp, t)});
    for (const auto& k : tracks_) {
      ComplexMatrix next = ComplexMatrix::Zero(new_dim, input_dim_);
      bool any = false;
      for (Eigen::Index r = 0; r < k.rows(); ++r) {
        const auto& col = nz[L.target_of[r]];
        if (col.empty()) continue;
        if (k.row(r).isZero(0.0)) continue;
        const std::size_t rest = L.rest_of[r];
        for (const auto& [tp, val] : col) {
          next.row(L.out_index[rest * L.produced_count + tp]) += val * k.row(r);
          any = true;
        }
      }
      if (any && !next.isZero(0.0)) out.push_back(std::move(next));
    }
  }
  factors_ = L.new_factors;
  tracks_ = std::move(out);
}

void KrausTracks::apply_same(const std::vector<std::string>& targets,
                             const std::vector<ComplexMatrix>& kraus) {
  std::vector<Factor> same;
  for (const auto& t : targets) same.push_back(factors_[index_of(t)]);
  apply(targets, kraus, same);
}

void KrausTracks::permute(const std::vector<std::string>& targets,
                          const std::vector<std::size_t>& perm) {
  std::vector<Factor> same;
  for (const auto& t : targets) same.push_back(factors_[index_of(t)]);
  const Layout L = layout(targets, same);
  if (perm.size() != L.target_count)
    throw Error(ErrorCode::kDimensionMismatch, "permutation has wrong size");
  for (auto& k : tracks_) {
    ComplexMatrix next(k.rows(), k.cols());
    for (Eigen::Index r = 0; r < k.rows(); ++r)
      next.row(L.out_index[L.rest_of[r] * L.produced_count + perm[L.target_of[r]]]) = k.row(r);
    k = std::move(next);
  }
  factors_ = L.new_factors;
}

void KrausTracks::decode(const std::vector<std::string>& targets,
                         const std::vector<long>& selection,
                         const std::vector<Factor>& produced, const ComplexMatrix& rho0) {
  const Layout L = layout(targets, produced);
  if (selection.size() != L.target_count)
    throw Error(ErrorCode::kDimensionMismatch, "selection map has wrong size");
  if (static_cast<std::size_t>(rho0.rows()) != L.produced_count)
    throw Error(ErrorCode::kDimensionMismatch, "rho0 has wrong size");
  const EigResult e = eig_hermitian(rho0);
  std::vector<std::pair<double, ComplexVector>> mix;
  for (Eigen::Index a = e.values.size(); a-- > 0;)
    if (e.values(a) > 1e-15) mix.push_back({std::sqrt(e.values(a)), e.vectors.col(a)});
  std::size_t new_dim = 1;
  for (const auto& f : L.new_factors) new_dim *= f.dim;

  std::vector<ComplexMatrix> out;
  for (const auto& k : tracks_) {
    ComplexMatrix w = ComplexMatrix::Zero(new_dim, input_dim_);
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      const long s = selection[L.target_of[r]];
      if (s >= 0) w.row(L.out_index[L.rest_of[r] * L.produced_count + s]) = k.row(r);
    }
    if (!w.isZero(0.0)) out.push_back(std::move(w));
    // P branch: sqrt(p_a) |r_a><x| (x) I_rest for unselected x
    for (std::size_t x = 0; x < L.target_count; ++x) {
      if (selection[x] >= 0) continue;
      bool nonzero = false;
      for (std::size_t rest = 0; rest < L.rest_count && !nonzero; ++rest)
        nonzero = !k.row(L.in_index[rest * L.target_count + x]).isZero(0.0);
      if (!nonzero) continue;
      for (const auto& [amp, vecr] : mix) {
        ComplexMatrix t = ComplexMatrix::Zero(new_dim, input_dim_);
        for (std::size_t rest = 0; rest < L.rest_count; ++rest) {
          const auto row = k.row(L.in_index[rest * L.target_count + x]);
          if (row.isZero(0.0)) continue;
          for (std::size_t b = 0; b < L.produced_count; ++b)
            if (vecr(b) != Complex(0.0))
              t.row(L.out_index[rest * L.produced_count + b]) += amp * vecr(b) * row;
        }
        out.push_back(std::move(t));
      }
    }
  }
  factors_ = L.new_factors;
  tracks_ = std::move(out);
}

CPMap KrausTracks::finish(const std::vector<std::string>& order) const {
  if (order.size() != factors_.size())
    throw Error(ErrorCode::kInvalidArgument, "final order must list every factor");
  KrausTracks copy = *this;
  std::vector<Factor> same;
  for (const auto& name : order) same.push_back(factors_[index_of(name)]);
  // identity permutation over all factors in the requested order
  const Layout L = copy.layout(order, same);
  const std::size_t n = register_dim();
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : tracks_) {
    ComplexMatrix next(k.rows(), k.cols());
    for (Eigen::Index r = 0; r < k.rows(); ++r)
      next.row(L.out_index[L.rest_of[r] * L.produced_count + L.target_of[r]]) = k.row(r);
    kraus.push_back(std::move(next));
  }
  if (kraus.empty()) kraus.push_back(zeros(n, input_dim_));
  return CPMap(input_dim_, n, std::move(kraus));
}

}  // namespace sectorctl::detail
