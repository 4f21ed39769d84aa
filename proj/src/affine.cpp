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

#include "uinv/affine.hpp"

#include <cmath>

namespace uinv {

double evaluate_blocks(const std::vector<MatrixEqualityBlock>& blocks, const VarAssignment& vars) {
  double worst = 0.0;
  AffineTermSink sink;
  for (const auto& block : blocks) {
    for (long r = 0; r < block.out_side; ++r) {
      for (long c = r; c < block.out_side; ++c) {
        sink.clear();
        block.terms(r, c, sink);
        cplx acc = 0.0;
        for (const auto& t : sink.terms) acc += t.a * (*vars.herm[t.var])(t.i, t.j);
        for (const auto& t : sink.scalar_terms) acc += t.a * vars.scalars[t.var];
        acc -= block.rhs(r, c);
        worst = std::max(worst, std::abs(acc));
      }
    }
  }
  return worst;
}

long count_rows(const std::vector<MatrixEqualityBlock>& blocks) {
  long rows = 0;
  for (const auto& b : blocks) rows += b.real_rows();
  return rows;
}

}  // namespace uinv
