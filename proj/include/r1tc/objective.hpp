// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "r1tc/tensor.hpp"

namespace r1tc {

/// One bilinear form  A_s * a[i_t] b[j_t] - A_t * a[i_s] b[j_s]  built from two
/// observations s < t of the same slice k. Rows index the vector a (x) b,
/// i.e. row = i * n2 + j.
struct PhiPair {
  int k = 0;
  int s = 0;
  int t = 0;
  double coeff_s = 0.0;  // A_{i_s j_s k}
  double coeff_t = 0.0;  // A_{i_t j_t k}
  int row_s = 0;
  int row_t = 0;
};

/// Every unordered pair of observations within each slice, ordered by k then (s, t).
std::vector<PhiPair> build_phi(const SliceIndex& slices, const ObservedTensor& tensor);

/// f(a, b) = (a (x) b)^T B (a (x) b) with B = sum over Phi of w w^T.
class QuadForm {
 public:
  QuadForm(int n1, int n2, Matrix b);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  const Matrix& matrix() const { return b_; }

 private:
  int n1_;
  int n2_;
  Matrix b_;
};

QuadForm assemble_quadform(int n1, int n2, std::span<const PhiPair> pairs);

/// Convenience: Phi construction and assembly in one step.
QuadForm quadform_from_tensor(const ObservedTensor& tensor);

/// a (x) b with the a-index varying slowest.
Vector kron(const Vector& a, const Vector& b);

double eval_f(const QuadForm& q, const Vector& a, const Vector& b);

/// (grad_a f, grad_b f).
std::pair<Vector, Vector> grad_f(const QuadForm& q, const Vector& a, const Vector& b);

}  // namespace r1tc
