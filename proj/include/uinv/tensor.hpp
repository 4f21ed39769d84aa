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

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "uinv/errors.hpp"

namespace uinv {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage. The single numeric carrier of the
/// library; Hermiticity/unitarity are checked by the operations that need them.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Subsystem bookkeeping

/// Ordered list of labeled subsystems with local dimensions. A matrix tagged
/// with a layout acts on the tensor product of the subsystems in this order,
/// with the *first* label owning the most significant index digit.
class SpaceLayout {
 public:
  SpaceLayout() = default;
  explicit SpaceLayout(std::vector<std::pair<std::string, long>> subsystems);

  long size() const { return static_cast<long>(subs_.size()); }
  long total_dim() const { return total_; }
  const std::vector<std::pair<std::string, long>>& subsystems() const { return subs_; }

  const std::string& label(long pos) const { return subs_[pos].first; }
  long dim(long pos) const { return subs_[pos].second; }

  bool has_label(const std::string& label) const;
  /// Position of `label`; throws LabelError if absent.
  long position(const std::string& label) const;
  long dim_of(const std::string& label) const { return subs_[position(label)].second; }

  /// Layout with the given labels removed, order of the rest preserved.
  SpaceLayout drop(const std::vector<std::string>& labels) const;
  /// Layout restricted to the given labels, in the given order.
  SpaceLayout keep(const std::vector<std::string>& labels) const;
  /// Concatenation; duplicate labels throw.
  SpaceLayout concat(const SpaceLayout& other) const;

  std::vector<std::string> labels() const;

  /// Decompose a linear index into per-subsystem digits (big-endian).
  void decompose(long index, std::vector<long>& digits) const;
  /// Inverse of decompose.
  long compose(const std::vector<long>& digits) const;
  /// Stride of subsystem at `pos` in the linear index.
  long stride(long pos) const { return strides_[pos]; }

  bool operator==(const SpaceLayout& other) const { return subs_ == other.subs_; }

 private:
  std::vector<std::pair<std::string, long>> subs_;
  std::vector<long> strides_;
  long total_ = 1;
};

// ---------------------------------------------------------------------------
// Deterministic RNG
//
// All randomness flows through this generator so outputs are reproducible
// across platforms (std::normal_distribution is implementation-defined, so
// Gaussians are produced by an explicit Box-Muller transform).

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Uniform integer in [0, n).
  long uniform_index(long n);
  /// Derive an independent stream (for per-trial / per-purpose streams).
  Rng fork(std::uint64_t tag);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Core operations

/// Kronecker product, (a ⊗ b)[(i*rb+p),(j*cb+q)] = a(i,j) b(p,q).
CMat kron(const CMat& a, const CMat& b);

/// Identity of dimension n.
CMat identity(long n);

/// Trace out the listed subsystems. Returns the reduced matrix and the layout
/// with those labels dropped (order of the rest preserved).
std::pair<CMat, SpaceLayout> partial_trace(const CMat& m, const SpaceLayout& layout,
                                           const std::vector<std::string>& traced_labels);

/// Transpose only the indices of the listed subsystems.
CMat partial_transpose(const CMat& m, const SpaceLayout& layout,
                       const std::vector<std::string>& labels);

/// Reorder subsystems to `new_order` (a permutation of the layout's labels).
std::pair<CMat, SpaceLayout> permute_systems(const CMat& m, const SpaceLayout& layout,
                                             const std::vector<std::string>& new_order);

struct HermEig {
  RVec eigenvalues;  // ascending
  CMat eigenvectors; // columns
};

/// Eigendecomposition of a Hermitian matrix (checked to 1e-10 max-abs).
/// m = V diag(w) V^dagger with V unitary.
HermEig herm_eig(const CMat& m);

/// Max-abs deviation from Hermitian symmetry.
double hermiticity_residual(const CMat& m);

/// Max-abs deviation of u^dagger u from identity.
double unitarity_residual(const CMat& u);

/// Haar-random unitary: Ginibre sample + QR with the R-diagonal phase fix.
CMat haar_unitary(long d, Rng& rng);

/// Rescale a unitary by e^{-i arg(det u)/d} so the determinant becomes one
/// (principal branch). Throws NumericError if u is not unitary.
CMat su_normalize(const CMat& u);

}  // namespace uinv
