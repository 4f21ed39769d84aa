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

#include <map>
#include <string>
#include <vector>

#include "uinv/combs.hpp"
#include "uinv/quantum.hpp"

namespace uinv {

/// One Bell-measurement branch of an inversion round. The Kraus operator
/// includes the 1/d amplitude factor, so branch probability on |psi> is
/// ||kraus |psi>||^2 and the d^2 branches of a round sum to a CPTP map.
struct BranchOutcome {
  long round = 1;
  long i = 0;
  long j = 0;
  CMat kraus;
  enum class Status { Success, Retry, Exhausted } status = Status::Retry;
};

struct ProtocolReport {
  long d = 0;
  long k = 0;
  long rounds_used = 0;
  double success_prob_exact = 0.0;
  double success_prob_formula = 0.0;
  ChoiOperator success_channel_choi;  // equals p * Choi(u^{-1} channel)
  std::map<std::string, long> uses_consumed_per_branch;
};

/// Gate-teleportation branch operator (1/d) u^T X^i Z^j for Bell outcome
/// (i, j); the teleported gate is whatever `u` was applied to the resource.
CMat teleport_branch_kraus(const CMat& u, long d, long i, long j);

/// All d^2 branches of one inversion round: the conjugated gate u^* (obtained
/// from d-1 uses through the antisymmetric isometry) is teleported, so the
/// branch operators are (1/d) u^dag X^i Z^j. Requires u in SU(d).
std::vector<BranchOutcome> inversion_round_kraus(const CMat& u, long d, long round = 1);

/// Correction Z^{-j} X^{-i} u applied after a failed branch (i, j) != (0, 0);
/// composed with the branch operator the input state is restored exactly
/// (up to global phase). Costs one extra use of u.
CMat recovery_operator(const CMat& u, long d, long i, long j);

/// Success probability of Theorem 1: 1 - (1 - 1/d^2)^floor((k+1)/d).
double theorem1_probability(long d, long k);

/// Parallel-circuit upper bound of Theorem 2: 1 - (d+1)/(k + d^2 - 1).
double theorem2_parallel_bound(long d, long k);

/// Optimal parallel transposition probability: 1 - (d^2-1)/(k + d^2 - 1).
double transposition_parallel_optimum(long d, long k);

/// Number of full rounds affordable with k uses (floor((k+1)/d)): each round
/// costs d-1 uses up front and each retry costs 1 more.
long affordable_rounds(long d, long k);

/// Exact branch-tree simulation of the adaptive protocol: enumerates every
/// outcome sequence, accumulates the success-branch channel, and checks the
/// closed-form probability. Requires u in SU(d).
ProtocolReport adaptive_protocol(const CMat& u, long d, long k);

struct MonteCarloReport {
  long trials = 0;
  long successes = 0;
  double empirical_rate = 0.0;
  double min_fidelity = 1.0;   // over success trials; 1 when none succeeded
  double mean_fidelity = 1.0;
  double expected_rate = 0.0;  // theorem1_probability(d, k)
};

/// Stochastic cross-check of adaptive_protocol: samples branch outcomes with
/// their exact probabilities and verifies that every success returns
/// u^{-1}|psi> (fidelity 1). Trials use independent sub-streams of `rng`.
MonteCarloReport monte_carlo_run(const CMat& u, long d, long k, const PureState& psi, long trials,
                                 Rng& rng);

/// Choi matrix of the success branch of a single protocol round (k = d-1
/// uses), built by link-composing the circuit fragments, together with the
/// deterministic round comb C that dominates it. Layout is the canonical
/// P, I1, O1, ..., F order; the structure is the parallel two-tooth comb.
struct CombWitness {
  CMat S;
  CMat C;
  CombStructure structure;
  double success_probability = 0.0;          // 1/d^2
  double max_universality_residual = 0.0;    // over the internal spot checks
  double psd_margin_S = 0.0;
  double psd_margin_slack = 0.0;             // min eig of C - S
  CombResidualReport comb_report;            // residuals of C
};

/// Builds the witness and verifies S * c(U)^{(x)k} = (1/d^2) c(U^{-1}) on
/// random SU(d) samples (internal fixed-seed stream), S >= 0 and S <= C with
/// C a feasible comb. Throws ConstructionError with the residual report when
/// any check fails. Supported for d in {2, 3}.
CombWitness protocol_comb_witness(long d);

}  // namespace uinv
