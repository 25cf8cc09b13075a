// SPDX-License-Identifier: Apache-2.0
#include "r1tc/sdp.hpp"

#include <cmath>
#include <ostream>

#include "r1tc/linalg.hpp"
#include "r1tc/simd/kernels.hpp"

namespace r1tc {

namespace {

Eigen::Index side_of(int n1, int n2) { return static_cast<Eigen::Index>(n1) * n2; }

}  // namespace

KronSymMatrix::KronSymMatrix(int n1, int n2, Matrix m, Unchecked)
    : n1_(n1), n2_(n2), m_(std::move(m)) {}

KronSymMatrix::KronSymMatrix(int n1, int n2, Matrix m) : n1_(n1), n2_(n2), m_(std::move(m)) {
  if (n1 < 1 || n2 < 1) throw ValidationError("KronSymMatrix: dimensions must be positive");
  if (m_.rows() != side_of(n1, n2) || m_.cols() != side_of(n1, n2)) {
    throw ValidationError("KronSymMatrix: matrix side must be n1*n2");
  }
  Matrix p(m_.rows(), m_.cols());
  project_kron_sym_into(m_, p, n1, n2);
  if ((p - m_).norm() > 1e-12 * std::max(1.0, m_.norm())) {
    throw ValidationError("KronSymMatrix: matrix is not in the Kronecker-symmetric subspace");
  }
}

KronSymMatrix KronSymMatrix::from_factors(const Vector& a, const Vector& b) {
  const Vector x = kron(a, b);
  Matrix m = x * x.transpose();
  return project_kron_sym(m, static_cast<int>(a.size()), static_cast<int>(b.size()));
}

void project_kron_sym_into(const Matrix& in, Matrix& out, int n1, int n2) {
  const Eigen::Index side = side_of(n1, n2);
  if (in.rows() != side || in.cols() != side) {
    throw ValidationError("project_kron_sym: matrix side must be n1*n2");
  }
  out.resize(side, side);
  Matrix s(n2, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = i; j < n1; ++j) {
      s = in.block(i * n2, j * n2, n2, n2) + in.block(j * n2, i * n2, n2, n2);
      // (S + S^T) / 4 is exactly symmetric: each entry adds the same two numbers.
      for (int q = 0; q < n2; ++q) {
        for (int p = q; p < n2; ++p) {
          const double v = 0.25 * (s(p, q) + s(q, p));
          out(i * n2 + p, j * n2 + q) = v;
          out(i * n2 + q, j * n2 + p) = v;
          out(j * n2 + p, i * n2 + q) = v;
          out(j * n2 + q, i * n2 + p) = v;
        }
      }
    }
  }
}

KronSymMatrix project_kron_sym(const Matrix& m, int n1, int n2) {
  Matrix out;
  project_kron_sym_into(m, out, n1, n2);
  return KronSymMatrix(n1, n2, std::move(out), KronSymMatrix::Unchecked{});
}

KronSymMatrix strictly_feasible_point(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw ValidationError("strictly_feasible_point: dimensions must be positive");
  const Eigen::Index side = side_of(n1, n2);
  return KronSymMatrix(n1, n2, Matrix::Identity(side, side) / static_cast<double>(side),
                       KronSymMatrix::Unchecked{});
}

SdpSolution solve_relaxation(const QuadForm& q, const SdpOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("solve_relaxation: tol must be positive");
  if (options.max_iters < 0) throw ValidationError("solve_relaxation: max_iters must be >= 0");

  const int n1 = q.n1();
  const int n2 = q.n2();
  const Eigen::Index side = side_of(n1, n2);
  const auto count = static_cast<std::size_t>(side * side);
  const double inv_side = 1.0 / static_cast<double>(side);
  const auto& kern = simd::kernels();
  const double alpha = options.over_relaxation;

  // The objective only sees the subspace component of B.
  Matrix cost;
  project_kron_sym_into(q.matrix(), cost, n1, n2);
  double scale = 1.0;
  if (options.rescale) {
    const double norm = cost.norm();
    if (norm > 0.0) scale = norm;
  }
  cost /= scale;

  if (options.trace != nullptr) *options.trace << "iter,objective,primal_res,dual_res\n";

  Matrix z = strictly_feasible_point(n1, n2).matrix();
  Matrix u = Matrix::Zero(side, side);
  Matrix x(side, side);
  Matrix v(side, side);
  Matrix relaxed(side, side);
  Matrix z_prev(side, side);
  double rho = 1.0;

  SdpSolution sol(strictly_feasible_point(n1, n2));
  sol.scale = scale;

  auto project_affine = [&](const Matrix& in, Matrix& out) {
    project_kron_sym_into(in, out, n1, n2);
    out.diagonal().array() += (1.0 - out.trace()) * inv_side;
  };

  double primal = 0.0;
  double dual = 0.0;
  int iter = 0;
  bool converged = false;
  project_affine(z, x);
  while (iter < options.max_iters) {
    ++iter;
    // X-update: affine projection of Z - U - C / rho.
    kern.sub_sub_scaled(z.data(), u.data(), 1.0 / rho, cost.data(), v.data(), count);
    project_affine(v, x);

    // Over-relaxation, then Z-update by PSD projection.
    relaxed = z;
    kern.axpby(alpha, x.data(), 1.0 - alpha, relaxed.data(), count);
    z_prev.swap(z);
    v = relaxed + u;
    z = psd_part(v);

    // Scaled dual ascent.
    kern.accumulate_diff(relaxed.data(), z.data(), u.data(), count);

    primal = std::sqrt(kern.diff_sq(x.data(), z.data(), count));
    dual = rho * std::sqrt(kern.diff_sq(z.data(), z_prev.data(), count));

    if (options.trace != nullptr && options.trace_every > 0 && iter % options.trace_every == 0) {
      *options.trace << iter << ',' << scale * kern.dot(cost.data(), x.data(), count) << ','
                     << primal << ',' << dual << '\n';
    }
    if (primal <= options.tol && dual <= options.tol) {
      converged = true;
      break;
    }
    // Penalty balancing is checked only every adapt_every iterations; changing
    // rho on consecutive iterations makes the iterates oscillate.
    if (options.adapt_every <= 0 || iter % options.adapt_every != 0) {
      continue;
    }
    if (primal > 10.0 * dual) {
      rho *= 2.0;
      u *= 0.5;
    } else if (dual > 10.0 * primal) {
      rho *= 0.5;
      u *= 2.0;
    }
  }

  sol.x = KronSymMatrix(n1, n2, x, KronSymMatrix::Unchecked{});
  sol.iters = iter;
  sol.rho = rho;
  sol.pstar = scale * kern.dot(cost.data(), x.data(), count);
  sol.residuals.primal = primal;
  sol.residuals.dual = dual;
  sol.residuals.psd = std::max(0.0, -lambda_min(x));
  sol.converged = converged && sol.residuals.psd <= options.tol;

  // Stationarity in X gives C + rho U = gamma I + N with N orthogonal to the
  // subspace. In the units of the full (unprojected) B the orthogonal part is
  // (I - P)(B + scale * rho * U); the best bound for that N is lambda_min(B - N).
  Matrix multiplier = q.matrix() + (scale * rho) * u;
  Matrix in_subspace;
  project_kron_sym_into(multiplier, in_subspace, n1, n2);
  sol.dual_complement = multiplier - in_subspace;
  if (sol.converged) {
    const double mu = lambda_min(q.matrix() - sol.dual_complement);
    sol.cert_lb = certify_lower_bound(q, mu, sol.dual_complement);
  }
  return sol;
}

double certify_lower_bound(const QuadForm& q, double mu, const Matrix& complement) {
  const Matrix& b = q.matrix();
  if (complement.rows() != b.rows() || complement.cols() != b.cols()) {
    throw ValidationError("certify_lower_bound: multiplier has the wrong side");
  }
  Matrix p;
  project_kron_sym_into(complement, p, q.n1(), q.n2());
  if (p.norm() > 1e-9 * std::max(1.0, complement.norm())) {
    throw ValidationError(
        "certify_lower_bound: multiplier is not orthogonal to the Kronecker-symmetric subspace");
  }
  Matrix shifted = b - complement;
  shifted.diagonal().array() -= mu;
  return mu + std::min(0.0, lambda_min(shifted));
}

}  // namespace r1tc
