// Copyright 2026 The uinv authors
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

#include "uinv/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace uinv {

double ChoiOperator::psd_margin() const {
  return herm_eig(matrix).eigenvalues.minCoeff();
}

double ChoiOperator::channel_residual() const {
  auto [red, lay] = partial_trace(matrix, layout, {output_label()});
  return (red - CMat::Identity(red.rows(), red.cols())).cwiseAbs().maxCoeff();
}

PureState max_entangled(long d) {
  if (d < 2) throw ShapeError("max_entangled needs d >= 2");
  CVec amps = CVec::Zero(d * d);
  for (long i = 0; i < d; ++i) amps(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return {amps, SpaceLayout({{"A", d}, {"B", d}})};
}

std::pair<CMat, CMat> shift_clock(long d) {
  if (d < 2) throw ShapeError("shift_clock needs d >= 2");
  CMat x = CMat::Zero(d, d), z = CMat::Zero(d, d);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (long l = 0; l < d; ++l) {
    x((l + 1) % d, l) = 1.0;
    z(l, l) = std::exp(cplx(0.0, w * static_cast<double>(l)));
  }
  return {x, z};
}

CMat shift_power(long d, long i) {
  long r = ((i % d) + d) % d;
  CMat x = CMat::Zero(d, d);
  for (long l = 0; l < d; ++l) x((l + r) % d, l) = 1.0;
  return x;
}

CMat clock_power(long d, long j) {
  long r = ((j % d) + d) % d;
  CMat z = CMat::Zero(d, d);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (long l = 0; l < d; ++l)
    z(l, l) = std::exp(cplx(0.0, w * static_cast<double>(r * l % d)));
  return z;
}

ChoiOperator choi_of_unitary(const CMat& u, const std::string& in_label,
                             const std::string& out_label) {
  if (u.rows() != u.cols()) throw ShapeError("choi_of_unitary: matrix not square");
  if (unitarity_residual(u) > 1e-8)
    throw NumericError("choi_of_unitary: input not unitary within 1e-8");
  const long d = u.rows();
  CVec v(d * d);  // sum_i |i> (x) U|i>
  for (long i = 0; i < d; ++i) v.segment(i * d, d) = u.col(i);
  ChoiOperator c;
  c.matrix = v * v.adjoint();
  c.layout = SpaceLayout({{in_label, d}, {out_label, d}});
  c.kind = ChoiOperator::Kind::Channel;
  return c;
}

CMat choi_of_kraus(const CMat& k) {
  const long din = k.cols(), dout = k.rows();
  CVec v(din * dout);
  for (long i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
  return v * v.adjoint();
}

std::pair<CMat, SpaceLayout> link_product(const CMat& a, const SpaceLayout& la, const CMat& b,
                                          const SpaceLayout& lb,
                                          const std::vector<std::string>& common) {
  for (const auto& l : common) {
    if (la.dim_of(l) != lb.dim_of(l))
      throw ShapeError("link_product: dimension mismatch on shared label '" + l + "'");
  }
  std::set<std::string> cset(common.begin(), common.end());
  std::vector<std::string> a_rest, b_rest;
  for (const auto& l : la.labels())
    if (!cset.count(l)) a_rest.push_back(l);
  for (const auto& l : lb.labels()) {
    if (!cset.count(l)) {
      if (la.has_label(l))
        throw LabelError("link_product: label '" + l + "' shared but not listed as common");
      b_rest.push_back(l);
    }
  }

  // Align both factors on [a_rest, common, b_rest] and embed with identities.
  std::vector<std::string> a_order = a_rest;
  a_order.insert(a_order.end(), common.begin(), common.end());
  auto [ap, ap_layout] = permute_systems(a, la, a_order);
  CMat apt = partial_transpose(ap, ap_layout, common);

  std::vector<std::string> b_order(common.begin(), common.end());
  b_order.insert(b_order.end(), b_rest.begin(), b_rest.end());
  auto [bp, bp_layout] = permute_systems(b, lb, b_order);

  SpaceLayout rest_b = lb.keep(b_rest);
  SpaceLayout rest_a = la.keep(a_rest);
  CMat left = kron(apt, CMat::Identity(rest_b.total_dim(), rest_b.total_dim()));
  CMat right = kron(CMat::Identity(rest_a.total_dim(), rest_a.total_dim()), bp);
  SpaceLayout full = ap_layout.concat(rest_b);

  CMat prod = left * right;
  return partial_trace(prod, full, common);
}

CMat antisym_isometry(long d) {
  if (d < 2) throw ShapeError("antisym_isometry needs d >= 2");
  long rows = 1;
  for (long i = 0; i < d - 1; ++i) rows *= d;
  CMat v = CMat::Zero(rows, d);
  double norm = 1.0;
  for (long i = 2; i < d; ++i) norm *= static_cast<double>(i);  // (d-1)!
  norm = 1.0 / std::sqrt(norm);

  // Iterate (k_2,...,k_d); when distinct, the missing value is k_1 and the
  // amplitude is the sign of the permutation (k_1,...,k_d).
  std::vector<long> tup(d - 1, 0);
  for (long lin = 0; lin < rows; ++lin) {
    long rem = lin;
    for (long p = d - 2; p >= 0; --p) {
      tup[p] = rem % d;
      rem /= d;
    }
    std::vector<bool> present(d, false);
    bool dup = false;
    for (long x : tup) {
      if (present[x]) {
        dup = true;
        break;
      }
      present[x] = true;
    }
    if (dup) continue;
    long k1 = -1;
    for (long x = 0; x < d; ++x)
      if (!present[x]) k1 = x;
    std::vector<long> perm;
    perm.push_back(k1);
    perm.insert(perm.end(), tup.begin(), tup.end());
    // permutation sign by counting inversions
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sign = -sign;
    v(lin, k1) = static_cast<double>(sign) * norm;
  }
  return v;
}

CMat conjugate_via_antisym(const CMat& u, long d) {
  if (u.rows() != d || u.cols() != d) throw ShapeError("conjugate_via_antisym: wrong dimension");
  cplx det = Eigen::MatrixXcd(u).determinant();
  if (std::abs(det - cplx(1.0, 0.0)) > 1e-8)
    throw NumericError("conjugate_via_antisym: determinant differs from 1 beyond 1e-8");
  CMat v = antisym_isometry(d);
  CMat upow = CMat::Identity(1, 1);
  for (long i = 0; i < d - 1; ++i) upow = kron(upow, u);
  return v.adjoint() * upow * v;
}

}  // namespace uinv
