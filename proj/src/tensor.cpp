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

#include "uinv/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#ifdef UINV_WITH_LAPACKE
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>
#endif

namespace uinv {

// ---------------------------------------------------------------------------
// SpaceLayout

SpaceLayout::SpaceLayout(std::vector<std::pair<std::string, long>> subsystems)
    : subs_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& [label, dim] : subs_) {
    if (dim <= 0) throw ShapeError("subsystem '" + label + "' has non-positive dimension");
    if (!seen.insert(label).second) throw LabelError("duplicate label '" + label + "'");
  }
  strides_.assign(subs_.size(), 1);
  for (long i = static_cast<long>(subs_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * subs_[i + 1].second;
  total_ = subs_.empty() ? 1 : strides_[0] * subs_[0].second;
}

bool SpaceLayout::has_label(const std::string& label) const {
  for (const auto& s : subs_)
    if (s.first == label) return true;
  return false;
}

long SpaceLayout::position(const std::string& label) const {
  for (long i = 0; i < size(); ++i)
    if (subs_[i].first == label) return i;
  throw LabelError("unknown label '" + label + "'");
}

SpaceLayout SpaceLayout::drop(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) position(l);  // validate
  std::set<std::string> rm(labels.begin(), labels.end());
  std::vector<std::pair<std::string, long>> kept;
  for (const auto& s : subs_)
    if (!rm.count(s.first)) kept.push_back(s);
  return SpaceLayout(kept);
}

SpaceLayout SpaceLayout::keep(const std::vector<std::string>& labels) const {
  std::vector<std::pair<std::string, long>> out;
  for (const auto& l : labels) out.emplace_back(l, dim_of(l));
  return SpaceLayout(out);
}

SpaceLayout SpaceLayout::concat(const SpaceLayout& other) const {
  auto subs = subs_;
  subs.insert(subs.end(), other.subs_.begin(), other.subs_.end());
  return SpaceLayout(subs);
}

std::vector<std::string> SpaceLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subs_.size());
  for (const auto& s : subs_) out.push_back(s.first);
  return out;
}

void SpaceLayout::decompose(long index, std::vector<long>& digits) const {
  digits.resize(subs_.size());
  for (long i = 0; i < size(); ++i) {
    digits[i] = index / strides_[i];
    index -= digits[i] * strides_[i];
  }
}

long SpaceLayout::compose(const std::vector<long>& digits) const {
  long index = 0;
  for (long i = 0; i < size(); ++i) index += digits[i] * strides_[i];
  return index;
}

// ---------------------------------------------------------------------------
// Rng (splitmix64 core + Box-Muller)

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

long Rng::uniform_index(long n) {
  if (n <= 0) throw ShapeError("uniform_index needs n > 0");
  std::uint64_t un = static_cast<std::uint64_t>(n);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<long>(x % un);
}

Rng Rng::fork(std::uint64_t tag) {
  std::uint64_t mix = state_ ^ (0x632BE59BD9B4E019ULL * (tag + 0x9E3779B97F4A7C15ULL));
  Rng child(mix);
  child.next_u64();
  return child;
}

// ---------------------------------------------------------------------------
// Dense operations

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat identity(long n) { return CMat::Identity(n, n); }

static void check_square(const CMat& m, const SpaceLayout& layout, const char* op) {
  if (m.rows() != m.cols() || m.rows() != layout.total_dim()) {
    std::ostringstream os;
    os << op << ": matrix is " << m.rows() << "x" << m.cols() << " but layout dimension is "
       << layout.total_dim();
    throw ShapeError(os.str());
  }
}

std::pair<CMat, SpaceLayout> partial_trace(const CMat& m, const SpaceLayout& layout,
                                           const std::vector<std::string>& traced_labels) {
  check_square(m, layout, "partial_trace");
  SpaceLayout out_layout = layout.drop(traced_labels);
  SpaceLayout tr_layout = layout.keep(traced_labels);
  const long n_out = out_layout.total_dim();
  const long n_tr = tr_layout.total_dim();

  // Map reduced/traced linear indices to their contribution in the full index.
  std::vector<long> kept_off(n_out), tr_off(n_tr);
  {
    std::vector<long> digits;
    for (long r = 0; r < n_out; ++r) {
      out_layout.decompose(r, digits);
      long off = 0;
      for (long i = 0; i < out_layout.size(); ++i)
        off += digits[i] * layout.stride(layout.position(out_layout.label(i)));
      kept_off[r] = off;
    }
    for (long t = 0; t < n_tr; ++t) {
      tr_layout.decompose(t, digits);
      long off = 0;
      for (long i = 0; i < tr_layout.size(); ++i)
        off += digits[i] * layout.stride(layout.position(tr_layout.label(i)));
      tr_off[t] = off;
    }
  }

  CMat out = CMat::Zero(n_out, n_out);
  for (long r = 0; r < n_out; ++r)
    for (long c = 0; c < n_out; ++c) {
      cplx acc = 0.0;
      for (long t = 0; t < n_tr; ++t) acc += m(kept_off[r] + tr_off[t], kept_off[c] + tr_off[t]);
      out(r, c) = acc;
    }
  return {std::move(out), std::move(out_layout)};
}

CMat partial_transpose(const CMat& m, const SpaceLayout& layout,
                       const std::vector<std::string>& labels) {
  check_square(m, layout, "partial_transpose");
  for (const auto& l : labels) layout.position(l);
  std::set<std::string> tset(labels.begin(), labels.end());

  const long n = layout.total_dim();
  // Split every index into its transposed part and the rest.
  std::vector<long> tpart(n);
  {
    std::vector<long> digits;
    for (long i = 0; i < n; ++i) {
      layout.decompose(i, digits);
      long t = 0;
      for (long p = 0; p < layout.size(); ++p)
        if (tset.count(layout.label(p))) t += digits[p] * layout.stride(p);
      tpart[i] = t;
    }
  }
  CMat out(n, n);
  for (long r = 0; r < n; ++r) {
    long rb = r - tpart[r];
    for (long c = 0; c < n; ++c) {
      long cb = c - tpart[c];
      out(r, c) = m(rb + tpart[c], cb + tpart[r]);
    }
  }
  return out;
}

std::pair<CMat, SpaceLayout> permute_systems(const CMat& m, const SpaceLayout& layout,
                                             const std::vector<std::string>& new_order) {
  check_square(m, layout, "permute_systems");
  if (static_cast<long>(new_order.size()) != layout.size())
    throw LabelError("permute_systems: new_order must list every label exactly once");
  std::set<std::string> seen(new_order.begin(), new_order.end());
  if (static_cast<long>(seen.size()) != layout.size())
    throw LabelError("permute_systems: new_order contains duplicates");
  SpaceLayout out_layout = layout.keep(new_order);

  const long n = layout.total_dim();
  std::vector<long> map(n);
  {
    std::vector<long> digits;
    for (long i = 0; i < n; ++i) {
      layout.decompose(i, digits);
      long idx = 0;
      for (long p = 0; p < layout.size(); ++p)
        idx += digits[p] * out_layout.stride(out_layout.position(layout.label(p)));
      map[i] = idx;
    }
  }
  CMat out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  return {std::move(out), std::move(out_layout)};
}

double hermiticity_residual(const CMat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMat& u) {
  return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

HermEig herm_eig(const CMat& m) {
  if (m.rows() != m.cols()) throw ShapeError("herm_eig: matrix not square");
  if (hermiticity_residual(m) > 1e-10)
    throw NumericError("herm_eig: input not Hermitian within 1e-10");
  const long n = m.rows();
  HermEig result;
#ifdef UINV_WITH_LAPACKE
  // zheevd on a column-major copy; divide-and-conquer is the fastest of the
  // LAPACK Hermitian drivers at the sizes the SDP projections use.
  Eigen::MatrixXcd a = m;  // col-major copy
  result.eigenvalues.resize(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                   a.data(), static_cast<lapack_int>(n),
                                   result.eigenvalues.data());
  if (info != 0) throw FactorizationError("zheevd failed with info=" + std::to_string(info));
  result.eigenvectors = a;
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw FactorizationError("eigensolver failed");
  result.eigenvalues = es.eigenvalues();
  result.eigenvectors = es.eigenvectors();
#endif
  return result;
}

CMat haar_unitary(long d, Rng& rng) {
  if (d < 2) throw ShapeError("haar_unitary needs d >= 2");
  Eigen::MatrixXcd z(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) z(i, j) = cplx(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the QR phase ambiguity: scale each column by the phase of the
  // corresponding R diagonal entry so the distribution is exactly Haar.
  for (long j = 0; j < d; ++j) {
    cplx r = qr.matrixQR()(j, j);
    double a = std::abs(r);
    q.col(j) *= (a > 0 ? r / a : cplx(1.0, 0.0));
  }
  return q;
}

CMat su_normalize(const CMat& u) {
  if (u.rows() != u.cols()) throw ShapeError("su_normalize: matrix not square");
  if (unitarity_residual(u) > 1e-8)
    throw NumericError("su_normalize: input not unitary within 1e-8");
  const long d = u.rows();
  cplx det = Eigen::MatrixXcd(u).determinant();
  double theta = std::arg(det);  // principal branch
  return u * std::exp(cplx(0.0, -theta / static_cast<double>(d)));
}

}  // namespace uinv
