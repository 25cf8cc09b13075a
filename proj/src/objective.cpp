// SPDX-License-Identifier: Apache-2.0
#include "r1tc/objective.hpp"

#include "r1tc/simd/kernels.hpp"

namespace r1tc {

std::vector<PhiPair> build_phi(const SliceIndex& slices, const ObservedTensor& tensor) {
  if (!(slices.dims == tensor.dims())) throw ValidationError("slice index does not match tensor");
  const int n2 = tensor.dims().n2;
  std::vector<PhiPair> pairs;
  std::size_t total = 0;
  for (const auto& slice : slices.slices) {
    if (slice.size() > 1) total += slice.size() * (slice.size() - 1) / 2;
  }
  pairs.reserve(total);
  for (std::size_t k = 0; k < slices.slices.size(); ++k) {
    const auto& slice = slices.slices[k];
    for (std::size_t s = 0; s < slice.size(); ++s) {
      for (std::size_t t = s + 1; t < slice.size(); ++t) {
        pairs.push_back(PhiPair{static_cast<int>(k), static_cast<int>(s), static_cast<int>(t),
                                slice[s].value, slice[t].value, slice[s].i * n2 + slice[s].j,
                                slice[t].i * n2 + slice[t].j});
      }
    }
  }
  return pairs;
}

QuadForm::QuadForm(int n1, int n2, Matrix b) : n1_(n1), n2_(n2), b_(std::move(b)) {
  const Eigen::Index side = static_cast<Eigen::Index>(n1) * n2;
  if (b_.rows() != side || b_.cols() != side) {
    throw ValidationError("quadratic form matrix has the wrong side");
  }
}

QuadForm assemble_quadform(int n1, int n2, std::span<const PhiPair> pairs) {
  const Eigen::Index side = static_cast<Eigen::Index>(n1) * n2;
  Matrix b = Matrix::Zero(side, side);
  // w = coeff_s * e_{row_t} - coeff_t * e_{row_s}
  for (const PhiPair& p : pairs) {
    const double ws = -p.coeff_t;
    const double wt = p.coeff_s;
    b(p.row_s, p.row_s) += ws * ws;
    b(p.row_t, p.row_t) += wt * wt;
    b(p.row_s, p.row_t) += ws * wt;
    b(p.row_t, p.row_s) += ws * wt;
  }
  return QuadForm(n1, n2, std::move(b));
}

QuadForm quadform_from_tensor(const ObservedTensor& tensor) {
  const auto pairs = build_phi(omega_slices(tensor), tensor);
  return assemble_quadform(tensor.dims().n1, tensor.dims().n2, pairs);
}

Vector kron(const Vector& a, const Vector& b) {
  Vector x(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) x.segment(i * b.size(), b.size()) = a[i] * b;
  return x;
}

namespace {

void check_dims(const QuadForm& q, const Vector& a, const Vector& b) {
  if (a.size() != q.n1() || b.size() != q.n2()) {
    throw ValidationError("factor lengths do not match the quadratic form");
  }
}

}  // namespace

double eval_f(const QuadForm& q, const Vector& a, const Vector& b) {
  check_dims(q, a, b);
  const Vector x = kron(a, b);
  const auto& k = simd::kernels();
  const Matrix& m = q.matrix();
  const auto n = static_cast<std::size_t>(x.size());
  double value = 0.0;
  for (Eigen::Index col = 0; col < x.size(); ++col) {
    if (x[col] == 0.0) continue;
    value += x[col] * k.dot(m.col(col).data(), x.data(), n);
  }
  return value;
}

std::pair<Vector, Vector> grad_f(const QuadForm& q, const Vector& a, const Vector& b) {
  check_dims(q, a, b);
  const Vector g = 2.0 * (q.matrix() * kron(a, b));
  // g reshaped as an n1 x n2 row-major matrix G: grad_a = G b, grad_b = G^T a.
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      gm(g.data(), q.n1(), q.n2());
  return {gm * b, gm.transpose() * a};
}

}  // namespace r1tc
