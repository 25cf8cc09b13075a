// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <utility>

#include "r1tc/objective.hpp"

namespace r1tc {

/// A symmetric matrix of side n1*n2 in the span of E_ij (x) E_kl.
///
/// Viewed as an n1 x n1 grid of n2 x n2 blocks M_ij, membership means
/// M = M^T, every block symmetric and M_ij = M_ji.
class KronSymMatrix {
 public:
  /// Validates membership to a relative tolerance of 1e-12.
  KronSymMatrix(int n1, int n2, Matrix m);

  /// (a a^T) (x) (b b^T).
  static KronSymMatrix from_factors(const Vector& a, const Vector& b);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  const Matrix& matrix() const { return m_; }
  auto block(int i, int j) const { return m_.block(i * n2_, j * n2_, n2_, n2_); }

 private:
  struct Unchecked {};
  KronSymMatrix(int n1, int n2, Matrix m, Unchecked);
  friend KronSymMatrix project_kron_sym(const Matrix& m, int n1, int n2);
  friend KronSymMatrix strictly_feasible_point(int n1, int n2);
  friend struct SdpSolution solve_relaxation(const QuadForm& q, const struct SdpOptions& options);

  int n1_;
  int n2_;
  Matrix m_;
};

/// Orthogonal projection onto the Kronecker-symmetric subspace:
/// N_ij = (M_ij + M_ij^T + M_ji + M_ji^T) / 4.
KronSymMatrix project_kron_sym(const Matrix& m, int n1, int n2);

/// Raw-matrix form of the projection, writing into `out` (may not alias `in`).
void project_kron_sym_into(const Matrix& in, Matrix& out, int n1, int n2);

/// I / (n1 n2): trace one, positive definite, in the subspace.
KronSymMatrix strictly_feasible_point(int n1, int n2);

struct SdpOptions {
  double tol = 1e-8;
  int max_iters = 200000;
  double over_relaxation = 1.6;
  /// Iterations between checks of the primal/dual residual ratio (rho x2 or /2 past 10).
  int adapt_every = 100;
  /// Divide B by its Frobenius norm before solving; pstar is reported unscaled.
  bool rescale = true;
  /// Optional CSV trace: iter,objective,primal_res,dual_res.
  std::ostream* trace = nullptr;
  int trace_every = 1;
};

struct SdpResiduals {
  double primal = 0.0;  // ||X - Z||_F between the affine and PSD iterates
  double dual = 0.0;    // rho * ||Z_k - Z_{k-1}||_F
  double psd = 0.0;     // max(0, -lambda_min(X))
};

struct SdpSolution {
  explicit SdpSolution(KronSymMatrix start) : x(std::move(start)) {}

  KronSymMatrix x;
  double pstar = 0.0;
  /// Certified lower bound on min f over unit pairs; -inf when no usable certificate.
  double cert_lb = -std::numeric_limits<double>::infinity();
  SdpResiduals residuals;
  int iters = 0;
  bool converged = false;
  /// Factor B was divided by internally (1 when rescaling is off or B = 0).
  double scale = 1.0;
  double rho = 1.0;
  /// Dual multiplier component orthogonal to the subspace, in the units of B.
  Matrix dual_complement;
};

/// min <B, X>  s.t.  X PSD, trace X = 1, X Kronecker-symmetric.
///
/// Over-relaxed ADMM splitting between the affine set {subspace, trace one}
/// and the PSD cone. Both projections are exact. Deterministic for fixed inputs.
SdpSolution solve_relaxation(const QuadForm& q, const SdpOptions& options = {});

/// gamma = mu + min(0, lambda_min(B - mu I - N)) for N orthogonal to the
/// subspace; a valid lower bound on f over unit (a, b) for any such N.
double certify_lower_bound(const QuadForm& q, double mu, const Matrix& complement);

}  // namespace r1tc
