// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

// Dense double-precision inner loops used by the relaxation solver and the
// objective. Each kernel has a scalar reference and an AVX2/FMA variant; the
// variant is chosen once at startup from CPUID and can be forced with the
// environment variable R1TC_SIMD=scalar|avx2.
namespace r1tc::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// sum (x[i] - y[i])^2
  double (*diff_sq)(const double* x, const double* y, std::size_t n);
  /// y[i] = alpha * x[i] + beta * y[i]
  void (*axpby)(double alpha, const double* x, double beta, double* y, std::size_t n);
  /// out[i] = x[i] - y[i] - gamma * z[i]
  void (*sub_sub_scaled)(const double* x, const double* y, double gamma, const double* z,
                         double* out, std::size_t n);
  /// u[i] += x[i] - z[i]
  void (*accumulate_diff)(const double* x, const double* z, double* u, std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the translation unit was built without AVX2 support.
const KernelTable* avx2_kernels();

bool isa_supported(Isa isa);
/// The table selected for this process.
const KernelTable& kernels();
std::string_view isa_name(Isa isa);

}  // namespace r1tc::simd
