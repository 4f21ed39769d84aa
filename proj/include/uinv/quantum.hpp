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

#include <string>
#include <utility>
#include <vector>

#include "uinv/tensor.hpp"

namespace uinv {

/// Choi operators use the unnormalized convention throughout: the Choi matrix
/// of a d-dimensional unitary channel has trace d, and the Choi of a channel
/// satisfies Tr_out C = I_in. Leg order is always (input, output).
struct ChoiOperator {
  enum class Kind { State, Channel, Generic };

  CMat matrix;
  SpaceLayout layout;  // exactly one input label followed by one output label
  Kind kind = Kind::Generic;

  const std::string& input_label() const { return layout.label(0); }
  const std::string& output_label() const { return layout.label(1); }

  /// Min eigenvalue (negative values measure PSD violation).
  double psd_margin() const;
  /// Max-abs deviation of Tr_out from the identity on the input space.
  double channel_residual() const;
};

struct PureState {
  CVec amplitudes;
  SpaceLayout layout;
};

/// |phi_d^+> = (1/sqrt d) sum_i |ii> on labels ("A", "B").
PureState max_entangled(long d);

/// Generalized shift and clock operators: X|l> = |l+1 mod d>, Z|l> = w^l |l>
/// with w = exp(2 pi i / d). They satisfy Z X = w X Z.
std::pair<CMat, CMat> shift_clock(long d);

/// Integer powers X^i, Z^j (negative exponents wrap mod d).
CMat shift_power(long d, long i);
CMat clock_power(long d, long j);

/// Choi operator of a unitary channel, c(U) = sum_ij |i><j| (x) U|i><j|U^dag,
/// tagged with the given input/output labels.
ChoiOperator choi_of_unitary(const CMat& u, const std::string& in_label = "in",
                             const std::string& out_label = "out");

/// Choi operator of the (possibly trace-decreasing) map r -> K r K^dag.
CMat choi_of_kraus(const CMat& k);

/// Link product A * B over the `common` labels: partial transpose of A on the
/// common subsystems, leg-aligned multiplication, then trace over them.
/// Result layout is (A's labels minus common) followed by (B's minus common).
std::pair<CMat, SpaceLayout> link_product(const CMat& a, const SpaceLayout& la, const CMat& b,
                                          const SpaceLayout& lb,
                                          const std::vector<std::string>& common);

/// Isometry from C^d into the (d-1)-fold antisymmetric subspace of (C^d)^{d-1},
/// V = sum_k (eps_k / sqrt((d-1)!)) |k_2..k_d><k_1|. Satisfies V^dag V = I_d.
CMat antisym_isometry(long d);

/// Universal complex conjugation: V^dag u^{(x)(d-1)} V, which equals u^* for
/// u in SU(d) (and det(u) u^* in general). Throws NumericError when
/// |det u - 1| > 1e-8.
CMat conjugate_via_antisym(const CMat& u, long d);

}  // namespace uinv
