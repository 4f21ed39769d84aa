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

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "uinv/affine.hpp"
#include "uinv/quantum.hpp"
#include "uinv/tensor.hpp"

namespace uinv {

enum class StrategyMode { Parallel, Adaptive, Ico };

StrategyMode mode_from_string(const std::string& s);
std::string mode_to_string(StrategyMode m);

struct Tooth {
  std::vector<std::string> in_labels;
  std::vector<std::string> out_labels;
};

/// Causal structure of an inversion strategy. The layout is always the
/// canonical order P, I1, O1, ..., Ik, Ok, F where I_t is the wire the
/// strategy feeds into black-box slot t and O_t is the wire it receives back.
/// Teeth group these labels per mode:
///   adaptive: (P->I1), (O1->I2), ..., (Ok->F)      [k+1 teeth]
///   parallel: (P->I1..Ik), (O1..Ok->F)             [2 teeth]
///   ico:      the parallel grouping is stored, but validity is the
///             process-matrix condition, not the tooth recursion.
struct CombStructure {
  StrategyMode mode = StrategyMode::Adaptive;
  long d = 0;
  long slots = 0;  // k
  SpaceLayout layout;
  std::vector<Tooth> teeth;

  static CombStructure inversion(long d, long k, StrategyMode mode);

  std::vector<std::string> slot_in_labels() const;   // I1..Ik
  std::vector<std::string> slot_out_labels() const;  // O1..Ok
  /// Product of all tooth input dimensions (the required trace of a comb).
  double required_trace() const;
};

/// Residuals of the deterministic-comb conditions, checked by the recursive
/// normalized-partial-trace route (independent of the constraint emission
/// used for SDP assembly). tooth_residuals run from the last tooth to the
/// first.
struct CombResidualReport {
  std::vector<double> tooth_residuals;
  double trace_residual = 0.0;
  double psd_margin = 0.0;  // min eigenvalue of the candidate
  double max_equality_residual() const;
};

CombResidualReport comb_residuals(const CMat& c, const CombStructure& structure);

// ---------------------------------------------------------------------------
// Spanning sets

struct SpanningOptions {
  long dim_cap = 1 << 14;    // refuse when d^{2k} exceeds this
  bool prefer_sparse = false;  // seed with monomial/Givens families first
  int stall_window = 10;       // consecutive non-increasing samples to saturate
  double rel_rank_tol = 1e-8;  // relative Gram threshold for rank growth
  long max_samples = 100000;
};

/// Finite set of SU(d) unitaries whose k-fold Choi powers span
/// L_span = span{ c(U)^{(x)k} : U in SU(d) }. Members are kept only when they
/// increase the Gram rank, so rank == unitaries.size().
struct SpanningSet {
  long d = 0, k = 0;
  std::vector<CMat> unitaries;
  long rank = 0;
  long samples_tried = 0;
  long last_growth_sample = 0;  // sample index of the final rank increase

  /// Dense c(U_i)^{(x)k} on the slot-interleaved legs (I1 O1 I2 O2 ...).
  CMat choi_power(long i) const;
  /// Sparse entries of choi_power(i) (|entry| > 1e-14).
  std::vector<std::tuple<long, long, cplx>> choi_power_sparse(long i) const;
};

SpanningSet spanning_unitary_set(long d, long k, Rng& rng, const SpanningOptions& opt = {});

/// CPTP Choi matrices whose affine span is the full trace-preserving affine
/// subspace; generated from unitary channels plus measure-and-reprepare
/// channels (Haar-based by default, sparse families with prefer_sparse).
struct ChannelSpanningSet {
  long d_in = 0, d_out = 0;
  std::vector<CMat> chois;  // layout (in, out), trace-d_in convention
  long affine_rank = 0;
  long samples_tried = 0;
  long unitary_only_rank = 0;  // affine rank before reprepare channels

  std::vector<std::tuple<long, long, cplx>> sparse(long i) const;
};

ChannelSpanningSet channel_spanning_set(long d_in, long d_out, Rng& rng,
                                        const SpanningOptions& opt = {});

// ---------------------------------------------------------------------------
// Constraint emission (consumed by the SDP assembler; evaluable standalone)

/// Deterministic-comb conditions on Hermitian variable `var_c`, as one block
/// per tooth (last to first) plus the scalar trace row.
std::vector<MatrixEqualityBlock> comb_constraint_operators(const CombStructure& structure,
                                                           int var_c);

/// Process-matrix validity: for every tuple of spanning channels (one per
/// slot), plugging them into `var_c` must give a trace-preserving map P -> F.
std::vector<MatrixEqualityBlock> ico_constraint_operators(const CombStructure& structure,
                                                          const ChannelSpanningSet& span,
                                                          int var_c);

/// Universality equalities S * c(U_i)^{(x)k} = p c(U_i^{-1}) for every
/// spanning unitary, linear jointly in the Hermitian variable `var_s` and the
/// scalar success probability `var_p`.
std::vector<MatrixEqualityBlock> universality_constraints(const SpanningSet& spanning, long d,
                                                          long k, int var_s, int var_p);

// ---------------------------------------------------------------------------
// Residual checkers (link-product route, independent of emission)

/// Max-abs residual of S * c(U)^{(x)k} - p c(U^{-1}) for one unitary.
double universality_residual(const CMat& s, const CombStructure& structure, const CMat& u,
                             double p);

/// Max over spanning-channel tuples of || Tr_F[C * (J1 (x) ... (x) Jk)] - I_P ||.
double ico_residual(const CMat& c, const CombStructure& structure,
                    const ChannelSpanningSet& span);

}  // namespace uinv
