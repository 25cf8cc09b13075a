// SPDX-License-Identifier: Apache-2.0
#include "r1tc/diagnostics.hpp"

#include <cmath>

namespace r1tc {

namespace {

void check_dims(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices) {
  if (a.size() != slices.dims.n1 || b.size() != slices.dims.n2 || c.size() != slices.dims.n3) {
    throw ValidationError("factor lengths do not match tensor dimensions");
  }
}

Eigen::Index pair_count(const SliceIndex& slices) {
  Eigen::Index rows = 0;
  for (const auto& s : slices.slices) {
    const auto m = static_cast<Eigen::Index>(s.size());
    rows += m * (m - 1) / 2;
  }
  return rows;
}

// Fills rows of `out` starting at 0; out must have pair_count rows.
void fill_zhat(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices,
               Matrix& out) {
  const Eigen::Index n1 = a.size();
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < slices.slices.size(); ++k) {
    const auto& slice = slices.slices[k];
    const double ck = std::sqrt(2.0) * c[static_cast<Eigen::Index>(k)];
    for (std::size_t s = 0; s < slice.size(); ++s) {
      for (std::size_t t = s + 1; t < slice.size(); ++t) {
        const auto& x = slice[s];
        const auto& y = slice[t];
        const double ps = a[x.i] * b[x.j];
        const double pt = a[y.i] * b[y.j];
        out(row, y.i) += ck * ps * b[y.j];
        out(row, x.i) -= ck * pt * b[x.j];
        out(row, n1 + y.j) += ck * ps * a[y.i];
        out(row, n1 + x.j) -= ck * pt * a[x.i];
        ++row;
      }
    }
  }
}

}  // namespace

Matrix build_Zhat(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices) {
  check_dims(a, b, c, slices);
  Matrix z = Matrix::Zero(pair_count(slices), a.size() + b.size());
  fill_zhat(a, b, c, slices, z);
  return z;
}

Matrix build_Z(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices) {
  check_dims(a, b, c, slices);
  const Eigen::Index rows = pair_count(slices);
  Matrix z = Matrix::Zero(rows + 2, a.size() + b.size());
  fill_zhat(a, b, c, slices, z);
  z.row(rows).head(a.size()) = a.transpose();
  z.row(rows + 1).tail(b.size()) = b.transpose();
  return z;
}

Matrix hessian_H(const Vector& a, const Vector& b, const Vector& c, const SliceIndex& slices) {
  const Matrix z = build_Zhat(a, b, c, slices);
  Matrix h = Matrix::Zero(z.cols(), z.cols());
  h.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  return h.selfadjointView<Eigen::Lower>();
}

IdentifiabilityReport identifiability_check(const Vector& a, const Vector& b, const Vector& c,
                                            const SliceIndex& slices) {
  const Matrix z = build_Z(a, b, c, slices);
  IdentifiabilityReport rep;
  rep.required = static_cast<int>(a.size() + b.size());
  const Vector sv = Eigen::BDCSVD<Matrix>(z).singularValues();
  rep.z_rank = static_cast<int>((sv.array() > 1e-6).count());
  rep.pass = rep.z_rank == rep.required;
  if (sv.size() >= rep.required) rep.smallest_singular_value = sv[rep.required - 1];
  return rep;
}

}  // namespace r1tc
