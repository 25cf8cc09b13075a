// SPDX-License-Identifier: Apache-2.0
#include "r1tc/linalg.hpp"

#include <stdexcept>

namespace r1tc {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decompose(const Eigen::MatrixXd& m) {
  if (m.cols() != m.rows()) throw std::invalid_argument("sym_eig: matrix is not square");
  // Only the lower triangle is referenced by the solver.
  if (!m.triangularView<Eigen::Lower>().toDenseMatrix().allFinite()) {
    throw std::runtime_error("sym_eig: matrix has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("sym_eig: QR iteration did not converge");
  return es;
}

}  // namespace

SymEig sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return SymEig{};
  const auto es = decompose(m);
  return SymEig{es.eigenvalues(), es.eigenvectors()};
}

SymEig sym_eig_above(const Eigen::MatrixXd& m, double floor) {
  if (m.rows() == 0) return SymEig{Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
  const auto es = decompose(m);
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < w.size() && !(w[first] > floor)) ++first;
  const Eigen::Index count = w.size() - first;
  return SymEig{w.tail(count), es.eigenvectors().rightCols(count)};
}

double lambda_min(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  if (m.cols() != m.rows()) throw std::invalid_argument("sym_eig: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("sym_eig: QR iteration did not converge");
  return es.eigenvalues()[0];
}

Eigen::MatrixXd psd_part(const Eigen::MatrixXd& m) {
  const SymEig pos = sym_eig_above(m, 0.0);
  if (pos.values.size() == 0) return Eigen::MatrixXd::Zero(m.rows(), m.cols());
  const Eigen::MatrixXd scaled = pos.vectors * pos.values.cwiseSqrt().asDiagonal();
  Eigen::MatrixXd out = scaled * scaled.transpose();
  return out;
}

}  // namespace r1tc
