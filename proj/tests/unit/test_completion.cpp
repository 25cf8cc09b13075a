// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "r1tc/completion.hpp"
#include "r1tc/harness.hpp"

using namespace r1tc;
using testing::random_vector;

namespace {

double g_value(const ObservedTensor& t, const Vector& a, const Vector& b, const Vector& c) {
  return std::pow(completion_errors(t, a, b, c).abs, 2);
}

ObservedTensor full_cube(int n1, int n2, int n3) {
  std::vector<Entry> e;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) e.push_back({{i, j, k}, 1.0});
  return ObservedTensor({n1, n2, n3}, std::move(e));
}

}  // namespace

TEST_CASE("every product zero in a slice is singular") {
  const SliceIndex s = omega_slices(full_cube(2, 2, 3));
  Vector a = Vector::Zero(3), b = Vector::Zero(3);
  a[2] = b[2] = 1.0;
  // Dimensions are 2 x 2, so use the analogous pair with support outside [2] x [2].
  const ObservedTensor t({3, 3, 3}, [] {
    std::vector<Entry> e;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) e.push_back({{i, j, k}, 1.0});
    return e;
  }());
  const SingularityVerdict v = is_singular(a, b, omega_slices(t));
  CHECK(v.singular);
  CHECK_FALSE(v.retrievable);
  CHECK(v.reason == SingularReason::all_products_zero);
  CHECK(v.witness_slice == 0);
  CHECK_THROWS_AS(retrieve_c(omega_slices(t), a, b), SingularPairError);
  CHECK(s.slices.size() == 3);
}

TEST_CASE("positive factors with every slice observed are nonsingular") {
  const SliceIndex s = omega_slices(full_cube(2, 3, 2));
  const SingularityVerdict v = is_singular(Vector::Ones(2), Vector::Ones(3), s);
  CHECK_FALSE(v.singular);
  CHECK(v.retrievable);
  CHECK(v.reason == SingularReason::none);
}

TEST_CASE("an empty slice is singular but still retrievable with c_k = 0") {
  const ObservedTensor t({2, 2, 3}, {{{0, 0, 0}, 2.0}, {{1, 1, 2}, 3.0}});
  const SliceIndex s = omega_slices(t);
  CHECK(unobserved_slices(s) == std::vector<int>{1});
  const SingularityVerdict v = is_singular(Vector::Ones(2), Vector::Ones(2), s);
  CHECK(v.singular);
  CHECK(v.retrievable);
  CHECK(v.reason == SingularReason::empty_slice);
  CHECK(v.witness_slice == 1);
  const Vector c = retrieve_c(s, Vector::Ones(2), Vector::Ones(2));
  CHECK(c[0] == 2.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 3.0);
}

TEST_CASE("retrieve_c is the least-squares minimizer") {
  Philox4x64 rng(1);
  for (int inst = 0; inst < 100; ++inst) {
    const Dims d{3, 3, 3};
    const ObservedTensor t = testing::random_values(rng, d, 0.7);
    const Vector a = random_vector(rng, 3), b = random_vector(rng, 3);
    const SliceIndex s = omega_slices(t);
    if (!is_singular(a, b, s).retrievable) continue;
    const Vector c = retrieve_c(s, a, b);
    const double g0 = g_value(t, a, b, c);
    for (int p = 0; p < 20; ++p) {
      const Vector delta = 1e-3 * random_vector(rng, 3);
      CHECK(g0 <= g_value(t, a, b, c + delta) + 1e-12);
    }
  }
}

TEST_CASE("noise-free random instance completes exactly") {
  const Instance inst = generate_instance({{5, 5, 5}, 0.8, 0.0, 17});
  const CompletionResult r = complete(inst.tensor);
  CHECK(r.converged);
  CHECK(r.best().completion.err_abs <= 1e-6);
}

TEST_CASE("best is the minimal errAbs among retrievable candidates") {
  const Instance inst = generate_instance({{4, 4, 4}, 0.4, 1e-2, 5});
  const CompletionResult r = complete(inst.tensor);
  REQUIRE(!r.all.empty());
  for (const Candidate& c : r.all) {
    if (c.verdict.retrievable) CHECK(r.best().completion.err_abs <= c.completion.err_abs);
  }
  CHECK(r.f_at_best() >= r.pstar - 1e-6);
}

TEST_CASE("complete is deterministic") {
  const Instance inst = generate_instance({{4, 5, 3}, 0.6, 1e-3, 8});
  const CompletionResult r1 = complete(inst.tensor);
  const CompletionResult r2 = complete(inst.tensor);
  CHECK(r1.iters == r2.iters);
  CHECK(r1.best().completion.err_abs == r2.best().completion.err_abs);
}
