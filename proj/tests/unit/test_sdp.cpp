// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "r1tc/fixtures.hpp"
#include "r1tc/linalg.hpp"
#include "r1tc/sdp.hpp"

using namespace r1tc;
using testing::random_unit;
using testing::random_vector;

namespace {

Matrix random_matrix(Philox4x64& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (auto& x : m.reshaped()) x = rng.normal();
  return m;
}

// Membership from first principles: symmetric, symmetric blocks, M_ij = M_ji.
double membership_defect(const Matrix& m, int n1, int n2) {
  double worst = (m - m.transpose()).cwiseAbs().maxCoeff();
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j) {
      const Matrix bij = m.block(i * n2, j * n2, n2, n2);
      const Matrix bji = m.block(j * n2, i * n2, n2, n2);
      worst = std::max(worst, (bij - bij.transpose()).cwiseAbs().maxCoeff());
      worst = std::max(worst, (bij - bji).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("projection lands in the subspace, is idempotent and self-adjoint") {
  Philox4x64 rng(1);
  for (auto [n1, n2] : {std::pair{2, 2}, {3, 4}, {4, 3}, {1, 5}}) {
    const auto side = static_cast<Eigen::Index>(n1) * n2;
    const Matrix m = random_matrix(rng, side);
    const Matrix w = random_matrix(rng, side);
    const Matrix p = project_kron_sym(m, n1, n2).matrix();
    CHECK(membership_defect(p, n1, n2) <= 1e-12);
    CHECK((project_kron_sym(p, n1, n2).matrix() - p).cwiseAbs().maxCoeff() <= 1e-12);
    const double lhs = (p.array() * w.array()).sum();
    const double rhs = (m.array() * project_kron_sym(w, n1, n2).matrix().array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * side * side);
  }
}

TEST_CASE("from_factors and the feasible point are members") {
  Philox4x64 rng(2);
  const Vector a = random_unit(rng, 3), b = random_unit(rng, 4);
  const KronSymMatrix g = KronSymMatrix::from_factors(a, b);
  CHECK((g.matrix() - kron(a, b) * kron(a, b).transpose()).norm() < 1e-14);
  const KronSymMatrix x0 = strictly_feasible_point(3, 4);
  CHECK(x0.matrix().trace() == doctest::Approx(1.0));
  CHECK(lambda_min(x0.matrix()) > 0.0);
  CHECK_THROWS_AS(KronSymMatrix(2, 2, random_matrix(rng, 4)), ValidationError);
}

TEST_CASE("Choi instance: known optimum and a tight certificate") {
  const QuadForm q = quadform_from_tensor(fixture_tensor("example55"));
  const SdpSolution sol = solve_relaxation(q);
  REQUIRE(sol.converged);
  CHECK(sol.pstar == doctest::Approx(0.9028).epsilon(1e-3));
  CHECK(sol.cert_lb <= sol.pstar + 1e-6);
  CHECK(sol.cert_lb >= 0.90);
  CHECK(sol.cert_lb < 1.0);
}

TEST_CASE("weak duality over random unit pairs and iterate feasibility") {
  Philox4x64 rng(3);
  for (int inst = 0; inst < 4; ++inst) {
    const ObservedTensor t = testing::random_values(rng, {3, 3, 4}, 0.7);
    const QuadForm q = quadform_from_tensor(t);
    const SdpSolution sol = solve_relaxation(q);
    REQUIRE(sol.converged);
    CHECK(std::abs(sol.x.matrix().trace() - 1.0) <= 1e-7);
    CHECK(lambda_min(sol.x.matrix()) >= -1e-7);
    CHECK(sol.cert_lb <= sol.pstar + 1e-6);
    for (int p = 0; p < 100; ++p) {
      const Vector a = random_unit(rng, 3), b = random_unit(rng, 3);
      CHECK(sol.pstar <= eval_f(q, a, b) + 1e-6);
      CHECK(sol.cert_lb <= eval_f(q, a, b) + 1e-6);
    }
  }
}

TEST_CASE("certificate with mu = lambda_min(B) and N = 0 is lambda_min(B)") {
  Philox4x64 rng(4);
  const QuadForm q = quadform_from_tensor(testing::random_values(rng, {3, 2, 3}, 0.8));
  const double lm = lambda_min(q.matrix());
  CHECK(certify_lower_bound(q, lm, Matrix::Zero(6, 6)) == doctest::Approx(lm).epsilon(1e-12));
}

TEST_CASE("noise-free data gives optimum zero and a nonpositive certificate") {
  Philox4x64 rng(5);
  const ObservedTensor t = testing::random_tensor(rng, {3, 3, 3}, 0.8);
  const SdpSolution sol = solve_relaxation(quadform_from_tensor(t));
  REQUIRE(sol.converged);
  CHECK(std::abs(sol.pstar) < 1e-6);
  CHECK(sol.cert_lb <= 1e-6);
}

TEST_CASE("solves are bit-for-bit deterministic") {
  Philox4x64 rng(6);
  const QuadForm q = quadform_from_tensor(testing::random_values(rng, {3, 4, 3}, 0.7));
  const SdpSolution s1 = solve_relaxation(q);
  const SdpSolution s2 = solve_relaxation(q);
  CHECK(s1.iters == s2.iters);
  CHECK(s1.pstar == s2.pstar);
  CHECK((s1.x.matrix().array() == s2.x.matrix().array()).all());
}

TEST_CASE("rescaling B does not change the optimum") {
  Philox4x64 rng(7);
  const QuadForm q = quadform_from_tensor(testing::random_values(rng, {3, 3, 3}, 0.8));
  SdpOptions raw;
  raw.rescale = false;
  raw.tol = 1e-10;
  SdpOptions scaled = raw;
  scaled.rescale = true;
  const SdpSolution a = solve_relaxation(q, raw);
  const SdpSolution b = solve_relaxation(q, scaled);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.pstar == doctest::Approx(b.pstar).epsilon(1e-6));
}

TEST_CASE("iteration cap reports non-convergence and the trace is written") {
  Philox4x64 rng(8);
  const QuadForm q = quadform_from_tensor(testing::random_values(rng, {3, 3, 3}, 0.8));
  std::ostringstream trace;
  SdpOptions o;
  o.max_iters = 5;
  o.trace = &trace;
  const SdpSolution sol = solve_relaxation(q, o);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iters == 5);
  CHECK(std::isinf(sol.cert_lb));
  CHECK(trace.str().rfind("iter,objective,primal_res,dual_res\n", 0) == 0);
}
