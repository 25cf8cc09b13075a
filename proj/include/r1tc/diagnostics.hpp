// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "r1tc/tensor.hpp"

namespace r1tc {

/// The gradient rows z_{s,t,k} of the noise-free forms at (a, b), one per
/// pair s < t in each slice, each scaled by sqrt(2) c_k. Columns are [a; b].
Matrix build_Zhat(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices);

/// build_Zhat followed by the two rows [a^T 0] and [0 b^T].
Matrix build_Z(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices);

/// Hessian at (a, b) of the sum of squared noise-free forms: sum z z^T.
Matrix hessian_H(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices);

struct IdentifiabilityReport {
  int z_rank = 0;
  int required = 0;
  bool pass = false;
  /// The required-th largest singular value of Z (0 when Z has fewer rows).
  double smallest_singular_value = 0.0;
};

/// Numerical rank of Z (singular values above 1e-6) against n1 + n2.
IdentifiabilityReport identifiability_check(const Vector& a, const Vector& b, const Vector& c,
                                            const SliceIndex& slices);

}  // namespace r1tc
