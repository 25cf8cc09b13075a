// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace r1tc {

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
struct SymEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full symmetric eigendecomposition (Eigen tridiagonal QR). Only the lower triangle
/// of `m` is read. Reentrant.
SymEig sym_eig(const Eigen::MatrixXd& m);

/// Eigenpairs with eigenvalue strictly above `floor`.
SymEig sym_eig_above(const Eigen::MatrixXd& m, double floor);

/// Smallest eigenvalue.
double lambda_min(const Eigen::MatrixXd& m);

/// Projection onto the PSD cone in Frobenius norm: negative eigenvalues clamped to zero.
Eigen::MatrixXd psd_part(const Eigen::MatrixXd& m);

}  // namespace r1tc
