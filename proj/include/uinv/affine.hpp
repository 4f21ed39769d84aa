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

#include <functional>
#include <string>
#include <vector>

#include "uinv/tensor.hpp"

namespace uinv {

/// Collector for the complex-linear terms of one output entry of a
/// matrix-valued affine constraint. Terms reference entries of named
/// Hermitian variables (by id) or real scalar variables.
class AffineTermSink {
 public:
  struct Term {
    int var;
    long i, j;
    cplx a;
  };
  struct ScalarTerm {
    int var;
    cplx a;
  };

  void add(int var, long i, long j, cplx a) { terms.push_back({var, i, j, a}); }
  void add_scalar(int var, cplx a) { scalar_terms.push_back({var, a}); }
  void clear() {
    terms.clear();
    scalar_terms.clear();
  }

  std::vector<Term> terms;
  std::vector<ScalarTerm> scalar_terms;
};

/// One Hermitian-matrix-valued affine equality L(vars) == rhs, described
/// entry-wise: `terms(r, c, sink)` fills the complex coefficients of output
/// entry (r, c) for r <= c, and `rhs(r, c)` gives the right-hand side entry.
/// Emitters and evaluators only visit the upper triangle; Hermiticity of the
/// map supplies the conjugate entries.
struct MatrixEqualityBlock {
  std::string name;
  long out_side = 1;  // complex dimension of the output space (1 = scalar row)
  std::function<void(long, long, AffineTermSink&)> terms;
  std::function<cplx(long, long)> rhs;

  /// Number of real equality rows this block expands to.
  long real_rows() const { return out_side * out_side; }
};

/// Concrete values for the variables a block set references.
struct VarAssignment {
  std::vector<const CMat*> herm;  // indexed by Hermitian variable id
  std::vector<double> scalars;    // indexed by scalar variable id
};

/// Max-abs residual of a set of blocks on a concrete assignment.
double evaluate_blocks(const std::vector<MatrixEqualityBlock>& blocks, const VarAssignment& vars);

/// Total real rows across blocks.
long count_rows(const std::vector<MatrixEqualityBlock>& blocks);

}  // namespace uinv
