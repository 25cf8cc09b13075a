// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "r1tc/rng.hpp"
#include "r1tc/simd/kernels.hpp"

using namespace r1tc;

namespace {

std::vector<double> draw(Philox4x64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

double scale(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] * y[i]) + x[i] * x[i] + y[i] * y[i];
  return std::max(s, 1.0);
}

}  // namespace

TEST_CASE("selected table is usable") {
  const auto& k = simd::kernels();
  CHECK(simd::isa_supported(k.isa));
  CHECK(!simd::isa_name(k.isa).empty());
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const simd::KernelTable* v = simd::avx2_kernels();
  if (v == nullptr || !simd::isa_supported(simd::Isa::avx2)) {
    MESSAGE("AVX2 not available; equivalence check skipped");
    return;
  }
  const auto& s = simd::scalar_kernels();
  Philox4x64 rng(3);
  // Lengths around the 4- and 8-wide loop boundaries plus a large one.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 31u, 33u, 64u, 67u, 1001u}) {
    CAPTURE(n);
    const auto x = draw(rng, n);
    const auto y = draw(rng, n);
    const auto z = draw(rng, n);
    const double tol = 1e-14 * scale(x, y);
    CHECK(std::abs(s.dot(x.data(), y.data(), n) - v->dot(x.data(), y.data(), n)) <= tol);
    CHECK(std::abs(s.diff_sq(x.data(), y.data(), n) - v->diff_sq(x.data(), y.data(), n)) <= tol);

    auto y1 = y, y2 = y;
    s.axpby(0.7, x.data(), -1.3, y1.data(), n);
    v->axpby(0.7, x.data(), -1.3, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1 + std::abs(y1[i])));

    std::vector<double> o1(n), o2(n);
    s.sub_sub_scaled(x.data(), y.data(), 0.3, z.data(), o1.data(), n);
    v->sub_sub_scaled(x.data(), y.data(), 0.3, z.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-15 * (1 + std::abs(o1[i])));

    auto u1 = z, u2 = z;
    s.accumulate_diff(x.data(), y.data(), u1.data(), n);
    v->accumulate_diff(x.data(), y.data(), u2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(u1[i] == u2[i]);
  }
}

TEST_CASE("scalar kernels against their definitions") {
  const auto& s = simd::scalar_kernels();
  const double x[3] = {1, 2, 3}, y[3] = {4, -5, 6};
  CHECK(s.dot(x, y, 3) == 12.0);
  CHECK(s.diff_sq(x, y, 3) == 9.0 + 49.0 + 9.0);
  double w[3] = {4, -5, 6};
  s.axpby(2.0, x, 0.5, w, 3);
  CHECK(w[0] == 4.0);
  CHECK(w[1] == 1.5);
  CHECK(w[2] == 9.0);
}
