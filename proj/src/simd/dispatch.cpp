// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string>

#include "r1tc/simd/kernels.hpp"

namespace r1tc::simd {

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("R1TC_SIMD")) {
    const std::string want(forced);
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2" && isa_supported(Isa::avx2)) return *avx2_kernels();
  }
  if (isa_supported(Isa::avx2)) return *avx2_kernels();
  return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& chosen = select();
  return chosen;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace r1tc::simd
