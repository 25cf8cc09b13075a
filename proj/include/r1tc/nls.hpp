// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "r1tc/tensor.hpp"

namespace r1tc {

struct NlsResiduals {
  Vector r;  // A_ijk - a_i b_j c_k in entry order
  Matrix J;  // d r / d [a; b; c]
};

NlsResiduals nls_residuals(const ObservedTensor& tensor, const Vector& a, const Vector& b,
                           const Vector& c);

struct NlsStart {
  Vector a;
  Vector b;
  Vector c;
};

struct NlsRun {
  NlsStart start;
  /// Rebalanced so that ||a|| = ||b|| = 1; err_rat is left for the caller.
  RankOneCompletion solution;
  int iterations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt on sum (A_ijk - a_i b_j c_k)^2 over Omega.
NlsRun nls_solve_from(const ObservedTensor& tensor, NlsStart start);

/// As nls_solve_from with a, b, c drawn i.i.d. standard normal from `seed`.
NlsRun nls_solve(const ObservedTensor& tensor, std::uint64_t seed);

}  // namespace r1tc
