// SPDX-License-Identifier: Apache-2.0
#include "r1tc/simd/kernels.hpp"

namespace r1tc::simd {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double diff_sq(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void axpby(double alpha, const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void sub_sub_scaled(const double* x, const double* y, double gamma, const double* z, double* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i] - gamma * z[i];
}

void accumulate_diff(const double* x, const double* z, double* u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) u[i] += x[i] - z[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, dot, diff_sq, axpby, sub_sub_scaled, accumulate_diff};
  return table;
}

}  // namespace r1tc::simd
