// SPDX-License-Identifier: Apache-2.0
#include "r1tc/nls.hpp"

#include <cmath>

#include "r1tc/rng.hpp"

namespace r1tc {

namespace {

constexpr int kMaxIters = 1000;
constexpr double kGradTol = 1e-10;
constexpr double kStepTol = 1e-12;

}  // namespace

NlsResiduals nls_residuals(const ObservedTensor& tensor, const Vector& a, const Vector& b,
                           const Vector& c) {
  const Dims& d = tensor.dims();
  if (a.size() != d.n1 || b.size() != d.n2 || c.size() != d.n3) {
    throw ValidationError("nls_residuals: factor lengths do not match tensor dimensions");
  }
  const auto rows = static_cast<Eigen::Index>(tensor.size());
  NlsResiduals out{Vector(rows), Matrix::Zero(rows, d.n1 + d.n2 + d.n3)};
  Eigen::Index row = 0;
  for (const Entry& e : tensor.entries()) {
    const double ai = a[e.idx.i];
    const double bj = b[e.idx.j];
    const double ck = c[e.idx.k];
    out.r[row] = e.value - ai * bj * ck;
    out.J(row, e.idx.i) = -bj * ck;
    out.J(row, d.n1 + e.idx.j) = -ai * ck;
    out.J(row, d.n1 + d.n2 + e.idx.k) = -ai * bj;
    ++row;
  }
  return out;
}

NlsRun nls_solve_from(const ObservedTensor& tensor, NlsStart start) {
  const Dims& d = tensor.dims();
  const Eigen::Index n = d.n1 + d.n2 + d.n3;
  Vector x(n);
  x << start.a, start.b, start.c;
  auto split = [&](const Vector& v) {
    return NlsStart{v.head(d.n1), v.segment(d.n1, d.n2), v.tail(d.n3)};
  };

  NlsRun run;
  run.start = std::move(start);
  NlsResiduals cur = nls_residuals(tensor, run.start.a, run.start.b, run.start.c);
  double cost = cur.r.squaredNorm();
  Matrix jtj = cur.J.transpose() * cur.J;
  Vector g = cur.J.transpose() * cur.r;
  double mu = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-300);

  int iter = 0;
  while (iter < kMaxIters) {
    if (g.norm() < kGradTol) break;
    ++iter;
    Matrix damped = jtj;
    damped.diagonal().array() += mu;
    const Eigen::LDLT<Matrix> ldlt(damped);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      mu *= 2.0;
      continue;
    }
    const Vector step = -ldlt.solve(g);
    if (!step.allFinite()) {
      mu *= 2.0;
      continue;
    }
    if (step.norm() < kStepTol) break;
    const Vector trial = x + step;
    const NlsStart t = split(trial);
    NlsResiduals next = nls_residuals(tensor, t.a, t.b, t.c);
    const double next_cost = next.r.squaredNorm();
    if (next_cost < cost) {
      x = trial;
      cur = std::move(next);
      cost = next_cost;
      jtj = cur.J.transpose() * cur.J;
      g = cur.J.transpose() * cur.r;
      mu /= 3.0;
    } else {
      mu *= 2.0;
    }
  }

  NlsStart fin = split(x);
  run.iterations = iter;
  run.converged = g.norm() <= 1e-8 * std::max(1.0, std::sqrt(cost));
  const double na = fin.a.norm();
  const double nb = fin.b.norm();
  RankOneCompletion& sol = run.solution;
  if (na > 0.0 && nb > 0.0) {
    sol.a = fin.a / na;
    sol.b = fin.b / nb;
    sol.c = fin.c * (na * nb);
  } else {
    sol.a = fin.a;
    sol.b = fin.b;
    sol.c = fin.c;
  }
  const CompletionErrors err = completion_errors(tensor, sol.a, sol.b, sol.c);
  sol.err_abs = err.abs;
  sol.err_rel = err.rel;
  return run;
}

NlsRun nls_solve(const ObservedTensor& tensor, std::uint64_t seed) {
  const Dims& d = tensor.dims();
  Philox4x64 rng(seed);
  NlsStart s{Vector(d.n1), Vector(d.n2), Vector(d.n3)};
  for (auto& v : s.a) v = rng.normal();
  for (auto& v : s.b) v = rng.normal();
  for (auto& v : s.c) v = rng.normal();
  return nls_solve_from(tensor, std::move(s));
}

}  // namespace r1tc
