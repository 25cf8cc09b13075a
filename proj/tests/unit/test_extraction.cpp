// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "r1tc/extraction.hpp"
#include "r1tc/fixtures.hpp"

using namespace r1tc;
using testing::random_unit;

namespace {

double dist_up_to_sign(const Vector& u, const Vector& v) {
  return std::min((u - v).cwiseAbs().maxCoeff(), (u + v).cwiseAbs().maxCoeff());
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

KronSymMatrix mixture(const std::vector<std::pair<Vector, Vector>>& pairs, const std::vector<double>& w) {
  const int n1 = static_cast<int>(pairs[0].first.size());
  const int n2 = static_cast<int>(pairs[0].second.size());
  Matrix g = Matrix::Zero(n1 * n2, n1 * n2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    g += w[i] * KronSymMatrix::from_factors(pairs[i].first, pairs[i].second).matrix();
  }
  return KronSymMatrix(n1, n2, g);
}

}  // namespace

TEST_CASE("sign_normalize makes the dominant entry positive, first index on ties") {
  Vector v = vec({0.1, -0.9, 0.3});
  sign_normalize(v);
  CHECK(v[1] == 0.9);
  Vector t = vec({-0.5, 0.5});
  sign_normalize(t);
  CHECK(t[0] == 0.5);
}

TEST_CASE("numerical rank counts eigenvalues above 1e-6") {
  Matrix m = Matrix::Zero(4, 4);
  m.diagonal() << 1.0, 1e-3, 5e-7, 0.0;
  CHECK(numerical_rank(m) == 2);
}

TEST_CASE("rank-1 closed form round-trips random pairs") {
  Philox4x64 rng(1);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n1 = 1 + static_cast<int>(rng.below(6));
    const int n2 = 1 + static_cast<int>(rng.below(6));
    const Vector a = random_unit(rng, n1), b = random_unit(rng, n2);
    const auto pair = extract_rank1(KronSymMatrix::from_factors(a, b));
    REQUIRE(pair.has_value());
    CHECK(dist_up_to_sign(pair->a, a) <= 1e-9);
    CHECK(dist_up_to_sign(pair->b, b) <= 1e-9);
  }
}

TEST_CASE("rank-1 closed form refuses a rank-2 matrix") {
  const KronSymMatrix g = mixture({{vec({1, 0}), vec({1, 0})}, {vec({0, 1}), vec({0, 1})}}, {0.5, 0.5});
  CHECK_FALSE(extract_rank1(g).has_value());
}

TEST_CASE("eigenvector candidates from the printed Choi eigenvectors") {
  const auto p1 = candidate_from_eigenvector(
      vec({0.0, 0.0283, 0.0222, 0.1314, 0.0, -0.2085, 0.0048, -0.9685, 0.0}), 3, 3);
  CHECK(dist_up_to_sign(p1.a, vec({0.0, 0.9993, 0.0363})) <= 1e-3);
  CHECK(dist_up_to_sign(p1.b, vec({0.0, 0.7868, 0.6172})) <= 1e-3);
  const auto p4 = candidate_from_eigenvector(
      vec({0.5774, 0.0, 0.0, 0.0, 0.5774, 0.0, 0.0, 0.0, 0.5774}), 3, 3);
  CHECK(dist_up_to_sign(p4.a, vec({1, 0, 0})) <= 1e-12);
  CHECK(dist_up_to_sign(p4.b, vec({1, 0, 0})) <= 1e-12);
}

TEST_CASE("eigenvector candidate falls back to the reshape's singular pair") {
  // First block and first column vanish; the reshape is (e2)(e3)^T.
  Vector p = Vector::Zero(9);
  p[1 * 3 + 2] = 1.0;
  const FactorPair c = candidate_from_eigenvector(p, 3, 3);
  CHECK(dist_up_to_sign(c.a, vec({0, 1, 0})) <= 1e-12);
  CHECK(dist_up_to_sign(c.b, vec({0, 0, 1})) <= 1e-12);
}

TEST_CASE("greedy decomposition recovers random separable mixtures") {
  Philox4x64 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const int r = 2 + rep % 2;
    std::vector<std::pair<Vector, Vector>> pairs;
    std::vector<double> w;
    double total = 0.0;
    for (int i = 0; i < r; ++i) {
      pairs.emplace_back(random_unit(rng, 3), random_unit(rng, 4));
      w.push_back(0.2 + rng.uniform());
      total += w.back();
    }
    for (double& x : w) x /= total;
    const DecompositionReport rep_out = greedy_kron_decompose(mixture(pairs, w), r);
    CAPTURE(rep_out.note);
    REQUIRE(rep_out.route == Route::separable);
    REQUIRE(rep_out.pairs.size() == static_cast<std::size_t>(r));
    CHECK(*rep_out.residual <= 1e-6);
    double sum = 0.0;
    for (const auto& p : rep_out.pairs) sum += *p.weight;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    for (const auto& [a, b] : pairs) {
      double best = 1e9;
      for (const auto& p : rep_out.pairs) best = std::min(best, std::max(dist_up_to_sign(p.a, a), dist_up_to_sign(p.b, b)));
      CHECK(best <= 1e-5);
    }
  }
}

TEST_CASE("greedy decomposition gives up on high-rank input without searching the range") {
  // Full-rank on 8 x 8: a range search would need a 4096-row design per found
  // vector, so the decomposition must fail fast and leave it to the spectral route.
  Philox4x64 rng(9);
  std::vector<std::pair<Vector, Vector>> pairs;
  std::vector<double> w;
  for (int i = 0; i < 90; ++i) {
    pairs.emplace_back(random_unit(rng, 8), random_unit(rng, 8));
    w.push_back(1.0 / 90);
  }
  const KronSymMatrix g = mixture(pairs, w);
  const int r = numerical_rank(g.matrix());
  REQUIRE(r > 48);
  const DecompositionReport out = greedy_kron_decompose(g, r);
  CHECK(out.route == Route::spectral);
  CHECK(out.note.find("rank too large") != std::string::npos);
}

TEST_CASE("spectral candidates are ordered by eigenvalue and carry it as weight") {
  const KronSymMatrix g =
      mixture({{vec({1, 0}), vec({1, 0})}, {vec({0, 1}), vec({0, 1})}}, {0.7, 0.3});
  const auto c = spectral_candidates(g);
  REQUIRE(c.size() == 2);
  CHECK(*c[0].weight == doctest::Approx(0.7));
  CHECK(*c[1].weight == doctest::Approx(0.3));
  CHECK(dist_up_to_sign(c[0].a, vec({1, 0})) < 1e-12);
}
