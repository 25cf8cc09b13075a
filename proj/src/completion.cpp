// SPDX-License-Identifier: Apache-2.0
#include "r1tc/completion.hpp"

#include <chrono>
#include <cmath>

namespace r1tc {

std::string_view reason_name(SingularReason reason) {
  switch (reason) {
    case SingularReason::none:
      return "none";
    case SingularReason::empty_slice:
      return "empty-slice";
    case SingularReason::all_products_zero:
      return "all-products-zero";
  }
  return "unknown";
}

SingularityVerdict is_singular(const Vector& a, const Vector& b, const SliceIndex& slices) {
  if (a.size() != slices.dims.n1 || b.size() != slices.dims.n2) {
    throw ValidationError("is_singular: factor lengths do not match tensor dimensions");
  }
  const double tau = 1e-8 * a.norm() * b.norm();
  SingularityVerdict v;
  for (std::size_t k = 0; k < slices.slices.size(); ++k) {
    const auto& slice = slices.slices[k];
    if (slice.empty()) {
      if (!v.singular) {
        v.singular = true;
        v.reason = SingularReason::empty_slice;
        v.witness_slice = static_cast<int>(k);
      }
      continue;
    }
    double top = 0.0;
    for (const auto& slot : slice) top = std::max(top, std::abs(a[slot.i] * b[slot.j]));
    if (top <= tau) {
      // An unretrievable observed slice outranks an empty one as the witness.
      if (v.retrievable) {
        v.singular = true;
        v.retrievable = false;
        v.reason = SingularReason::all_products_zero;
        v.witness_slice = static_cast<int>(k);
      }
    }
  }
  return v;
}

SingularPairError::SingularPairError(SingularityVerdict verdict)
    : ValidationError("singular pair: slice " + std::to_string(verdict.witness_slice.value_or(-1) + 1) +
                      " (" + std::string(reason_name(verdict.reason)) + ")"),
      verdict_(verdict) {}

std::vector<int> unobserved_slices(const SliceIndex& slices) {
  std::vector<int> out;
  for (std::size_t k = 0; k < slices.slices.size(); ++k) {
    if (slices.slices[k].empty()) out.push_back(static_cast<int>(k));
  }
  return out;
}

namespace {

Vector retrieve_unchecked(const SliceIndex& slices, const Vector& a, const Vector& b) {
  Vector c = Vector::Zero(slices.dims.n3);
  for (std::size_t k = 0; k < slices.slices.size(); ++k) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& slot : slices.slices[k]) {
      const double p = a[slot.i] * b[slot.j];
      num += slot.value * p;
      den += p * p;
    }
    if (den > 0.0) c[static_cast<Eigen::Index>(k)] = num / den;
  }
  return c;
}

}  // namespace

Vector retrieve_c(const SliceIndex& slices, const Vector& a, const Vector& b) {
  const SingularityVerdict v = is_singular(a, b, slices);
  if (!v.retrievable) throw SingularPairError(v);
  return retrieve_unchecked(slices, a, b);
}

Candidate score_candidate(const ObservedTensor& tensor, const SliceIndex& slices,
                          const QuadForm& q, FactorPair pair) {
  Candidate cand;
  cand.verdict = is_singular(pair.a, pair.b, slices);
  cand.f_value = eval_f(q, pair.a, pair.b);
  RankOneCompletion& rc = cand.completion;
  rc.a = pair.a;
  rc.b = pair.b;
  rc.c = cand.verdict.retrievable ? retrieve_unchecked(slices, pair.a, pair.b)
                                  : Vector::Zero(tensor.dims().n3);
  const CompletionErrors err = completion_errors(tensor, rc.a, rc.b, rc.c);
  rc.err_abs = err.abs;
  rc.err_rel = err.rel;
  cand.pair = std::move(pair);
  return cand;
}

CompletionResult complete(const ObservedTensor& tensor, const CompletionConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const SliceIndex slices = omega_slices(tensor);
  const QuadForm q = assemble_quadform(tensor.dims().n1, tensor.dims().n2, build_phi(slices, tensor));
  const SdpSolution sol = solve_relaxation(q, cfg.sdp);
  DecompositionReport dec = extract_candidates(sol);

  CompletionResult out;
  out.route = dec.route;
  out.rank = dec.rank;
  out.eigenvalues = dec.eigenvalues;
  out.note = dec.note;
  out.pstar = sol.pstar;
  out.cert_lb = sol.cert_lb;
  out.residuals = sol.residuals;
  out.iters = sol.iters;
  out.converged = sol.converged;

  for (FactorPair& pair : dec.pairs) {
    out.all.push_back(score_candidate(tensor, slices, q, std::move(pair)));
  }

  bool any_retrievable = false;
  for (const Candidate& c : out.all) any_retrievable = any_retrievable || c.verdict.retrievable;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < out.all.size(); ++i) {
    const Candidate& c = out.all[i];
    if (any_retrievable && !c.verdict.retrievable) continue;
    if (!best || c.completion.err_abs < out.all[*best].completion.err_abs) best = i;
  }
  out.best_index = best.value_or(0);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace r1tc
