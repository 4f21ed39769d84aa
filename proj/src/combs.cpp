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

#include "uinv/combs.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace uinv {

StrategyMode mode_from_string(const std::string& s) {
  if (s == "parallel") return StrategyMode::Parallel;
  if (s == "adaptive") return StrategyMode::Adaptive;
  if (s == "ico") return StrategyMode::Ico;
  throw LabelError("unknown mode '" + s + "' (expected parallel|adaptive|ico)");
}

std::string mode_to_string(StrategyMode m) {
  switch (m) {
    case StrategyMode::Parallel: return "parallel";
    case StrategyMode::Adaptive: return "adaptive";
    case StrategyMode::Ico: return "ico";
  }
  return "?";
}

CombStructure CombStructure::inversion(long d, long k, StrategyMode mode) {
  if (d < 2 || k < 0) throw ShapeError("inversion structure needs d >= 2, k >= 0");
  CombStructure s;
  s.mode = mode;
  s.d = d;
  s.slots = k;
  std::vector<std::pair<std::string, long>> subs;
  subs.emplace_back("P", d);
  for (long t = 1; t <= k; ++t) {
    subs.emplace_back("I" + std::to_string(t), d);
    subs.emplace_back("O" + std::to_string(t), d);
  }
  subs.emplace_back("F", d);
  s.layout = SpaceLayout(subs);

  if (mode == StrategyMode::Adaptive && k > 0) {
    s.teeth.push_back({{"P"}, {"I1"}});
    for (long t = 1; t < k; ++t)
      s.teeth.push_back({{"O" + std::to_string(t)}, {"I" + std::to_string(t + 1)}});
    s.teeth.push_back({{"O" + std::to_string(k)}, {"F"}});
  } else {
    // parallel / ico grouping (and the k = 0 degenerate single channel)
    if (k == 0) {
      s.teeth.push_back({{"P"}, {"F"}});
    } else {
      s.teeth.push_back({{"P"}, s.slot_in_labels()});
      s.teeth.push_back({s.slot_out_labels(), {"F"}});
    }
  }
  return s;
}

std::vector<std::string> CombStructure::slot_in_labels() const {
  std::vector<std::string> out;
  for (long t = 1; t <= slots; ++t) out.push_back("I" + std::to_string(t));
  return out;
}

std::vector<std::string> CombStructure::slot_out_labels() const {
  std::vector<std::string> out;
  for (long t = 1; t <= slots; ++t) out.push_back("O" + std::to_string(t));
  return out;
}

double CombStructure::required_trace() const {
  double t = 1.0;
  for (const auto& tooth : teeth)
    for (const auto& l : tooth.in_labels) t *= static_cast<double>(layout.dim_of(l));
  return t;
}

double CombResidualReport::max_equality_residual() const {
  double m = trace_residual;
  for (double r : tooth_residuals) m = std::max(m, r);
  return m;
}

CombResidualReport comb_residuals(const CMat& c, const CombStructure& structure) {
  if (structure.mode == StrategyMode::Ico)
    throw LabelError("comb_residuals applies to parallel/adaptive structures; use ico_residual");
  if (c.rows() != structure.layout.total_dim())
    throw ShapeError("comb_residuals: matrix does not match structure dimension");
  if (hermiticity_residual(c) > 1e-8)
    throw NumericError("comb_residuals: candidate not Hermitian within 1e-8");

  CombResidualReport report;
  report.psd_margin = herm_eig(c).eigenvalues.minCoeff();
  report.trace_residual = std::abs(c.trace().real() - structure.required_trace()) +
                          std::abs(c.trace().imag());

  CMat cur = c;
  SpaceLayout lay = structure.layout;
  for (long n = static_cast<long>(structure.teeth.size()) - 1; n >= 0; --n) {
    const Tooth& tooth = structure.teeth[n];
    auto [traced_out, lay_out] = partial_trace(cur, lay, tooth.out_labels);
    auto [next, lay_next] = partial_trace(traced_out, lay_out, tooth.in_labels);
    double d_in = 1.0;
    for (const auto& l : tooth.in_labels) d_in *= static_cast<double>(lay.dim_of(l));
    next /= d_in;

    // expected = next (x) I_in, permuted to lay_out's label order
    SpaceLayout in_lay = lay.keep(tooth.in_labels);
    CMat expected = kron(next, CMat::Identity(in_lay.total_dim(), in_lay.total_dim()));
    SpaceLayout ext_lay = lay_next.concat(in_lay);
    auto [expected_p, lay_p] = permute_systems(expected, ext_lay, lay_out.labels());
    report.tooth_residuals.push_back((traced_out - expected_p).cwiseAbs().maxCoeff());

    cur = next;
    lay = lay_next;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Spanning sets

namespace {

// Incremental Gram rank tracker: keeps the Cholesky factor of the Gram matrix
// of accepted elements; a candidate is accepted when its Schur complement
// against the kept set exceeds rel_tol times the diagonal scale (equivalent
// to the singular-value rank rule for these positive Gram matrices).
class GramRank {
 public:
  explicit GramRank(double rel_tol) : rel_tol_(rel_tol) {}

  bool try_add(const std::vector<double>& cross, double self) {
    scale_ = std::max(scale_, self);
    long r = rank();
    double delta = self;
    std::vector<double> w(r);
    if (r > 0) {
      // forward-substitute L w = cross
      for (long i = 0; i < r; ++i) {
        double acc = cross[i];
        for (long j = 0; j < i; ++j) acc -= l_[idx(i, j)] * w[j];
        w[i] = acc / l_[idx(i, i)];
        delta -= w[i] * w[i];
      }
    }
    if (delta <= rel_tol_ * scale_) return false;
    for (long j = 0; j < r; ++j) l_.push_back(w[j]);
    l_.push_back(std::sqrt(delta));
    ++rank_;
    return true;
  }

  long rank() const { return rank_; }

 private:
  static long idx(long i, long j) { return i * (i + 1) / 2 + j; }
  std::vector<double> l_;  // packed lower-triangular Cholesky factor
  long rank_ = 0;
  double rel_tol_;
  double scale_ = 0.0;
};

CMat monomial_unitary(long d, Rng& rng) {
  std::vector<long> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (long i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
  CMat m = CMat::Zero(d, d);
  for (long i = 0; i < d; ++i)
    m(perm[i], i) = std::exp(cplx(0.0, 2.0 * std::numbers::pi * rng.uniform()));
  return m;
}

// Monomial * (2x2 Haar block) * monomial: at most two nonzero entries per
// column, yet enough spread to reach ranks plain monomials cannot.
CMat dressed_givens(long d, Rng& rng) {
  CMat g = CMat::Identity(d, d);
  long a = rng.uniform_index(d);
  long b = rng.uniform_index(d - 1);
  if (b >= a) ++b;
  if (a > b) std::swap(a, b);
  CMat h = haar_unitary(2, rng);
  g(a, a) = h(0, 0);
  g(a, b) = h(0, 1);
  g(b, a) = h(1, 0);
  g(b, b) = h(1, 1);
  return monomial_unitary(d, rng) * g * monomial_unitary(d, rng);
}

double pow_int(double base, long e) {
  double r = 1.0;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

SpanningSet spanning_unitary_set(long d, long k, Rng& rng, const SpanningOptions& opt) {
  if (d < 2 || k < 1) throw ShapeError("spanning_unitary_set needs d >= 2, k >= 1");
  double side = pow_int(static_cast<double>(d), 2 * k);
  if (side > static_cast<double>(opt.dim_cap))
    throw SizeError("spanning_unitary_set: d^{2k} = " + std::to_string(static_cast<long>(side)) +
                    " exceeds cap " + std::to_string(opt.dim_cap));

  SpanningSet set;
  set.d = d;
  set.k = k;
  GramRank gram(opt.rel_rank_tol);
  const double self = pow_int(static_cast<double>(d), 2 * k);  // |Tr U^dag U|^{2k} / d^{... }

  // <c(U)^k, c(V)^k> = |Tr(U^dag V)|^{2k}; rank growth never needs the
  // Choi powers themselves.
  auto cross_of = [&](const CMat& v) {
    std::vector<double> cross(set.unitaries.size());
    for (size_t i = 0; i < set.unitaries.size(); ++i) {
      cplx t = (set.unitaries[i].adjoint() * v).trace();
      cross[i] = std::pow(std::abs(t), 2.0 * static_cast<double>(k));
    }
    return cross;
  };

  std::vector<int> families;
  if (opt.prefer_sparse) families = {0, 1, 2};
  else families = {2};

  for (int fam : families) {
    int stall = 0;
    while (stall < opt.stall_window && set.samples_tried < opt.max_samples) {
      CMat u;
      switch (fam) {
        case 0: u = monomial_unitary(d, rng); break;
        case 1: u = dressed_givens(d, rng); break;
        default: u = haar_unitary(d, rng); break;
      }
      u = su_normalize(u);
      ++set.samples_tried;
      if (gram.try_add(cross_of(u), self)) {
        set.unitaries.push_back(u);
        set.last_growth_sample = set.samples_tried;
        stall = 0;
      } else {
        ++stall;
      }
    }
  }
  set.rank = gram.rank();
  return set;
}

CMat SpanningSet::choi_power(long i) const {
  CMat c = choi_of_unitary(unitaries[i]).matrix;
  CMat out = c;
  for (long t = 1; t < k; ++t) out = kron(out, c);
  return out;
}

std::vector<std::tuple<long, long, cplx>> SpanningSet::choi_power_sparse(long i) const {
  const CMat& u = unitaries[i];
  // vec(U): v[(in)*d + out] = U[out, in]; the k-fold Choi power is the outer
  // product of w = v^{(x)k}, already on slot-interleaved legs.
  std::vector<std::pair<long, cplx>> v;
  for (long in = 0; in < d; ++in)
    for (long out = 0; out < d; ++out)
      if (std::abs(u(out, in)) > 1e-14) v.emplace_back(in * d + out, u(out, in));
  std::vector<std::pair<long, cplx>> w = v;
  const long dd = d * d;
  long dim = dd;
  for (long t = 1; t < k; ++t) {
    std::vector<std::pair<long, cplx>> next;
    next.reserve(w.size() * v.size());
    for (const auto& [wi, wa] : w)
      for (const auto& [vi, va] : v) next.emplace_back(wi * dd + vi, wa * va);
    w = std::move(next);
    dim *= dd;
  }
  std::vector<std::tuple<long, long, cplx>> entries;
  entries.reserve(w.size() * w.size());
  for (const auto& [a, wa] : w)
    for (const auto& [b, wb] : w) entries.emplace_back(a, b, wa * std::conj(wb));
  return entries;
}

// ---------------------------------------------------------------------------
// Channel spanning sets

namespace {

CMat measure_reprepare_choi(long d_in, long d_out, Rng& rng, bool sparse) {
  CMat choi = CMat::Zero(d_in * d_out, d_in * d_out);
  std::vector<CVec> basis(d_in);
  std::vector<CVec> preps(d_in);
  if (!sparse) {
    CMat v = haar_unitary(d_in, rng);
    for (long b = 0; b < d_in; ++b) basis[b] = v.col(b);
    for (long b = 0; b < d_in; ++b) {
      CMat w = haar_unitary(d_out, rng);
      preps[b] = w.col(0);
    }
  } else {
    // computational or two-level measurement basis, sparse pure preparations
    long style = rng.uniform_index(3);
    for (long b = 0; b < d_in; ++b) basis[b] = CVec::Unit(d_in, b);
    if (style > 0 && d_in >= 2) {
      long a = rng.uniform_index(d_in), bb = rng.uniform_index(d_in - 1);
      if (bb >= a) ++bb;
      cplx ph = style == 1 ? cplx(1, 0) : cplx(0, 1);
      basis[a] = (CVec::Unit(d_in, a) + ph * CVec::Unit(d_in, bb)) / std::sqrt(2.0);
      basis[bb] = (CVec::Unit(d_in, a) - ph * CVec::Unit(d_in, bb)) / std::sqrt(2.0);
    }
    for (long b = 0; b < d_in; ++b) {
      long style_p = rng.uniform_index(3);
      long a = rng.uniform_index(d_out);
      if (style_p == 0 || d_out < 2) {
        preps[b] = CVec::Unit(d_out, a);
      } else {
        long c = rng.uniform_index(d_out - 1);
        if (c >= a) ++c;
        cplx ph = style_p == 1 ? cplx(1, 0) : cplx(0, 1);
        preps[b] = (CVec::Unit(d_out, a) + ph * CVec::Unit(d_out, c)) / std::sqrt(2.0);
      }
    }
  }
  for (long b = 0; b < d_in; ++b) {
    CMat proj = basis[b] * basis[b].adjoint();
    CMat prep = preps[b] * preps[b].adjoint();
    choi += kron(proj.transpose(), prep);
  }
  return choi;
}

}  // namespace

ChannelSpanningSet channel_spanning_set(long d_in, long d_out, Rng& rng,
                                        const SpanningOptions& opt) {
  if (d_in < 2 || d_out < 2) throw ShapeError("channel_spanning_set needs dims >= 2");
  ChannelSpanningSet set;
  set.d_in = d_in;
  set.d_out = d_out;
  GramRank gram(opt.rel_rank_tol);

  // Affine independence via the augmented inner product <J,J'> + 1.
  auto cross_of = [&](const CMat& j) {
    std::vector<double> cross(set.chois.size());
    for (size_t i = 0; i < set.chois.size(); ++i)
      cross[i] = (set.chois[i] * j).trace().real() + 1.0;
    return cross;
  };
  auto self_of = [](const CMat& j) { return (j * j).trace().real() + 1.0; };

  for (int fam : {0, 1}) {
    int stall = 0;
    while (stall < opt.stall_window && set.samples_tried < opt.max_samples) {
      CMat j;
      if (fam == 0) {
        CMat u = opt.prefer_sparse ? monomial_unitary(std::min(d_in, d_out), rng)
                                   : haar_unitary(std::min(d_in, d_out), rng);
        if (d_in != d_out) throw ShapeError("unitary channels need d_in == d_out");
        j = choi_of_unitary(u).matrix;
      } else {
        j = measure_reprepare_choi(d_in, d_out, rng, opt.prefer_sparse);
      }
      ++set.samples_tried;
      if (gram.try_add(cross_of(j), self_of(j))) {
        set.chois.push_back(j);
        stall = 0;
      } else {
        ++stall;
      }
    }
    if (fam == 0) set.unitary_only_rank = gram.rank();
  }
  set.affine_rank = gram.rank();
  return set;
}

std::vector<std::tuple<long, long, cplx>> ChannelSpanningSet::sparse(long i) const {
  std::vector<std::tuple<long, long, cplx>> entries;
  const CMat& j = chois[i];
  for (long r = 0; r < j.rows(); ++r)
    for (long c = 0; c < j.cols(); ++c)
      if (std::abs(j(r, c)) > 1e-14) entries.emplace_back(r, c, j(r, c));
  return entries;
}

// ---------------------------------------------------------------------------
// Constraint emission

std::vector<MatrixEqualityBlock> comb_constraint_operators(const CombStructure& structure,
                                                           int var_c) {
  if (structure.mode == StrategyMode::Ico)
    throw LabelError("comb_constraint_operators applies to parallel/adaptive structures");
  const SpaceLayout& full = structure.layout;
  std::vector<MatrixEqualityBlock> blocks;

  // X_n accumulates the labels of teeth after n (traced in condition n).
  std::vector<std::string> x_labels;
  for (long n = static_cast<long>(structure.teeth.size()) - 1; n >= 0; --n) {
    const Tooth& tooth = structure.teeth[n];
    std::vector<std::string> traced = x_labels;
    traced.insert(traced.end(), tooth.out_labels.begin(), tooth.out_labels.end());

    SpaceLayout out_lay = full.drop(traced);
    SpaceLayout tr_lay = full.keep(traced);
    SpaceLayout in_lay = full.keep(tooth.in_labels);
    const long n_out = out_lay.total_dim();
    const long n_tr = tr_lay.total_dim();
    const long n_in = in_lay.total_dim();

    auto kept_off = std::make_shared<std::vector<long>>(n_out);
    auto in_part = std::make_shared<std::vector<long>>(n_out);
    auto tr_off = std::make_shared<std::vector<long>>(n_tr);
    auto in_off = std::make_shared<std::vector<long>>(n_in);
    {
      std::set<std::string> in_set(tooth.in_labels.begin(), tooth.in_labels.end());
      std::vector<long> digits;
      for (long u = 0; u < n_out; ++u) {
        out_lay.decompose(u, digits);
        long off = 0, inp = 0;
        for (long i = 0; i < out_lay.size(); ++i) {
          long contrib = digits[i] * full.stride(full.position(out_lay.label(i)));
          off += contrib;
          if (in_set.count(out_lay.label(i))) inp += contrib;
        }
        (*kept_off)[u] = off;
        (*in_part)[u] = inp;
      }
      for (long t = 0; t < n_tr; ++t) {
        tr_lay.decompose(t, digits);
        long off = 0;
        for (long i = 0; i < tr_lay.size(); ++i)
          off += digits[i] * full.stride(full.position(tr_lay.label(i)));
        (*tr_off)[t] = off;
      }
      for (long s = 0; s < n_in; ++s) {
        in_lay.decompose(s, digits);
        long off = 0;
        for (long i = 0; i < in_lay.size(); ++i)
          off += digits[i] * full.stride(full.position(in_lay.label(i)));
        (*in_off)[s] = off;
      }
    }

    MatrixEqualityBlock block;
    block.name = "comb_tooth" + std::to_string(n + 1);
    block.out_side = n_out;
    double inv_din = 1.0 / static_cast<double>(n_in);
    block.terms = [=](long u, long v, AffineTermSink& sink) {
      for (long t = 0; t < n_tr; ++t)
        sink.add(var_c, (*kept_off)[u] + (*tr_off)[t], (*kept_off)[v] + (*tr_off)[t], 1.0);
      if ((*in_part)[u] == (*in_part)[v]) {
        long bu = (*kept_off)[u] - (*in_part)[u];
        long bv = (*kept_off)[v] - (*in_part)[v];
        for (long s = 0; s < n_in; ++s)
          for (long t = 0; t < n_tr; ++t)
            sink.add(var_c, bu + (*in_off)[s] + (*tr_off)[t], bv + (*in_off)[s] + (*tr_off)[t],
                     -inv_din);
      }
    };
    block.rhs = [](long, long) { return cplx(0.0, 0.0); };
    blocks.push_back(std::move(block));

    x_labels.insert(x_labels.end(), tooth.in_labels.begin(), tooth.in_labels.end());
    x_labels.insert(x_labels.end(), tooth.out_labels.begin(), tooth.out_labels.end());
  }

  // normalization row Tr C = prod of tooth input dimensions
  MatrixEqualityBlock trace_block;
  trace_block.name = "comb_trace";
  trace_block.out_side = 1;
  const long dim = full.total_dim();
  trace_block.terms = [var_c, dim](long, long, AffineTermSink& sink) {
    for (long i = 0; i < dim; ++i) sink.add(var_c, i, i, 1.0);
  };
  double rt = structure.required_trace();
  trace_block.rhs = [rt](long, long) { return cplx(rt, 0.0); };
  blocks.push_back(std::move(trace_block));
  return blocks;
}

std::vector<MatrixEqualityBlock> ico_constraint_operators(const CombStructure& structure,
                                                          const ChannelSpanningSet& span,
                                                          int var_c) {
  const long k = structure.slots;
  const long d = structure.d;
  if (span.d_in != d || span.d_out != d)
    throw ShapeError("ico_constraint_operators: channel span dimension mismatch");
  const long n_span = static_cast<long>(span.chois.size());
  const long dd = d * d;
  long d_io = 1;
  for (long t = 0; t < k; ++t) d_io *= dd;
  const long d_f = d;

  std::vector<MatrixEqualityBlock> blocks;
  std::vector<long> tuple(k, 0);
  while (true) {
    // sparse kron of the tuple's Chois on the interleaved slot legs
    auto entries = std::make_shared<std::vector<std::tuple<long, long, cplx>>>();
    {
      std::vector<std::tuple<long, long, cplx>> acc = {{0, 0, cplx(1.0, 0.0)}};
      for (long t = 0; t < k; ++t) {
        auto je = span.sparse(tuple[t]);
        std::vector<std::tuple<long, long, cplx>> next;
        next.reserve(acc.size() * je.size());
        for (const auto& [ar, ac, av] : acc)
          for (const auto& [jr, jc, jv] : je)
            next.emplace_back(ar * dd + jr, ac * dd + jc, av * jv);
        acc = std::move(next);
      }
      *entries = std::move(acc);
    }

    MatrixEqualityBlock block;
    std::ostringstream name;
    name << "ico_tuple";
    for (long t = 0; t < k; ++t) name << "_" << tuple[t];
    block.name = name.str();
    block.out_side = d;
    block.terms = [=](long p, long q, AffineTermSink& sink) {
      for (long f = 0; f < d_f; ++f)
        for (const auto& [a, b, v] : *entries)
          sink.add(var_c, (p * d_io + a) * d_f + f, (q * d_io + b) * d_f + f, v);
    };
    block.rhs = [](long p, long q) { return p == q ? cplx(1.0, 0.0) : cplx(0.0, 0.0); };
    blocks.push_back(std::move(block));

    long pos = k - 1;
    while (pos >= 0 && ++tuple[pos] == n_span) tuple[pos--] = 0;
    if (pos < 0) break;
  }
  return blocks;
}

std::vector<MatrixEqualityBlock> universality_constraints(const SpanningSet& spanning, long d,
                                                          long k, int var_s, int var_p) {
  if (spanning.d != d || spanning.k != k)
    throw ShapeError("universality_constraints: spanning set mismatch");
  long d_io = 1;
  for (long t = 0; t < k; ++t) d_io *= d * d;
  const long d_f = d;
  std::vector<MatrixEqualityBlock> blocks;
  for (long i = 0; i < spanning.rank; ++i) {
    auto entries = std::make_shared<std::vector<std::tuple<long, long, cplx>>>(
        spanning.choi_power_sparse(i));
    auto target = std::make_shared<CMat>(
        choi_of_unitary(CMat(spanning.unitaries[i].adjoint())).matrix);
    MatrixEqualityBlock block;
    block.name = "universality_" + std::to_string(i);
    block.out_side = d * d;  // (P, F) composite
    block.terms = [=](long r, long c, AffineTermSink& sink) {
      long p = r / d_f, f = r % d_f;
      long q = c / d_f, g = c % d_f;
      for (const auto& [a, b, v] : *entries)
        sink.add(var_s, (p * d_io + a) * d_f + f, (q * d_io + b) * d_f + g, v);
      sink.add_scalar(var_p, -(*target)(r, c));
    };
    block.rhs = [](long, long) { return cplx(0.0, 0.0); };
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Residual checkers via the link product

double universality_residual(const CMat& s, const CombStructure& structure, const CMat& u,
                             double p) {
  const long k = structure.slots;
  CMat slots = CMat::Identity(1, 1);
  std::vector<std::pair<std::string, long>> subs;
  for (long t = 1; t <= k; ++t) {
    slots = kron(slots, choi_of_unitary(u).matrix);
    subs.emplace_back("I" + std::to_string(t), structure.d);
    subs.emplace_back("O" + std::to_string(t), structure.d);
  }
  SpaceLayout slot_lay(subs);
  std::vector<std::string> common = slot_lay.labels();
  auto [result, lay] = link_product(s, structure.layout, slots, slot_lay, common);
  CMat target = p * choi_of_unitary(CMat(u.adjoint())).matrix;
  // result layout is (P, F) = (input, output) of the induced map
  return (result - target).cwiseAbs().maxCoeff();
}

double ico_residual(const CMat& c, const CombStructure& structure,
                    const ChannelSpanningSet& span) {
  const long k = structure.slots;
  const long d = structure.d;
  const long n_span = static_cast<long>(span.chois.size());
  double worst = 0.0;
  std::vector<long> tuple(k, 0);
  while (true) {
    CMat slots = CMat::Identity(1, 1);
    std::vector<std::pair<std::string, long>> subs;
    for (long t = 0; t < k; ++t) {
      slots = kron(slots, span.chois[tuple[t]]);
      subs.emplace_back("I" + std::to_string(t + 1), d);
      subs.emplace_back("O" + std::to_string(t + 1), d);
    }
    SpaceLayout slot_lay(subs);
    auto [pf, lay] = link_product(c, structure.layout, slots, slot_lay, slot_lay.labels());
    auto [pmat, play] = partial_trace(pf, lay, {"F"});
    worst = std::max(worst, (pmat - CMat::Identity(d, d)).cwiseAbs().maxCoeff());

    long pos = k - 1;
    while (pos >= 0 && ++tuple[pos] == n_span) tuple[pos--] = 0;
    if (pos < 0) break;
  }
  return worst;
}

}  // namespace uinv
