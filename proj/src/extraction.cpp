// SPDX-License-Identifier: Apache-2.0
#include "r1tc/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "r1tc/linalg.hpp"
#include "r1tc/rng.hpp"

namespace r1tc {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr int kMaxAlternations = 200;
constexpr double kMinImprovement = 1e-12;
constexpr double kMinWeight = 1e-8;
constexpr double kMaxResidual = 1e-6;
constexpr double kTraceSlack = 1e-6;

// Range search settings.
constexpr int kRangeAlternations = 1000;
constexpr double kRangeFit = 1.0 - 1e-9;
constexpr int kRandomStarts = 32;
// The NNLS design has r^2 rows and one column per product vector found.
constexpr int kMaxRangeRank = 48;
constexpr std::uint64_t kRandomSeed = 0x5eedf00dULL;

// The n1 x n2 matrix P with P(i, j) = p[i * n2 + j].
RowMajor reshape(const Vector& p, int n1, int n2) {
  return Eigen::Map<const RowMajor>(p.data(), n1, n2);
}

Vector top_eigenvector(const Matrix& m) {
  const SymEig e = sym_eig(m);
  return e.vectors.col(e.vectors.cols() - 1);
}

// (I (x) b)^T G (I (x) b): entry (i, i') is b^T G_{ii'} b.
Matrix contract_b(const Matrix& g, int n1, int n2, const Vector& b) {
  Matrix out(n1, n1);
  for (int i = 0; i < n1; ++i) {
    for (int k = 0; k < n1; ++k) {
      out(i, k) = b.dot(g.block(i * n2, k * n2, n2, n2) * b);
    }
  }
  return out;
}

// (a (x) I)^T G (a (x) I) = sum a_i a_k G_{ik}.
Matrix contract_a(const Matrix& g, int n1, int n2, const Vector& a) {
  Matrix out = Matrix::Zero(n2, n2);
  for (int i = 0; i < n1; ++i) {
    for (int k = 0; k < n1; ++k) {
      const double w = a[i] * a[k];
      if (w != 0.0) out.noalias() += w * g.block(i * n2, k * n2, n2, n2);
    }
  }
  return out;
}

Matrix outer_kron(const Vector& a, const Vector& b) {
  const Vector x = kron(a, b);
  return x * x.transpose();
}

FactorPair make_pair(Vector a, Vector b, std::optional<double> weight, Route source) {
  a.normalize();
  b.normalize();
  sign_normalize(a);
  sign_normalize(b);
  return FactorPair{std::move(a), std::move(b), weight, source};
}

// Maximizes <G, (aa^T) (x) (bb^T)> over unit a, b by alternating top eigenvectors.
double maximize_overlap(const Matrix& g, int n1, int n2, Vector& a, Vector& b) {
  double value = -std::numeric_limits<double>::infinity();
  for (int step = 0; step < kMaxAlternations; ++step) {
    a = top_eigenvector(contract_b(g, n1, n2, b));
    const Matrix ga = contract_a(g, n1, n2, a);
    b = top_eigenvector(ga);
    const double next = b.dot(ga * b);
    const bool done = next - value < kMinImprovement;
    value = next;
    if (done) break;
  }
  return value;
}

// Lawson-Hanson active set method for min ||A x - y|| subject to x >= 0.
Vector nnls(const Matrix& A, const Vector& y) {
  const Eigen::Index n = A.cols();
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, A.norm() * y.norm());

  auto solve_passive = [&](Vector& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix sub(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
    const Vector s = sub.colPivHouseholderQr().solve(y);
    z = Vector::Zero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) z[idx[c]] = s[static_cast<Eigen::Index>(c)];
  };

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Vector w = A.transpose() * (y - A * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    Vector z;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      solve_passive(z);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x[j] / (x[j] - z[j]));
        }
      }
      if (feasible) break;
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
    }
    x = z;
  }
  return x.cwiseMax(0.0);
}

struct Term {
  Vector a;
  Vector b;
  double weight = 0.0;
};

double relative_residual(const Matrix& g, const std::vector<Term>& terms) {
  Matrix r = g;
  for (const Term& t : terms) r.noalias() -= t.weight * outer_kron(t.a, t.b);
  const double gn = g.norm();
  return gn > 0.0 ? r.norm() / gn : r.norm();
}

bool weights_ok(const std::vector<Term>& terms, double trace) {
  double sum = 0.0;
  for (const Term& t : terms) {
    if (!(t.weight > kMinWeight)) return false;
    sum += t.weight;
  }
  return std::abs(sum - trace) <= kTraceSlack;
}

// Round-by-round deflation. Exact when the product vectors are orthogonal.
std::vector<Term> deflate(const Matrix& g, int n1, int n2, int r) {
  std::vector<Term> terms;
  Matrix res = g;
  for (int round = 0; round < r; ++round) {
    const FactorPair start = candidate_from_eigenvector(top_eigenvector(res), n1, n2);
    Vector a = start.a;
    Vector b = start.b;
    const double lambda = maximize_overlap(res, n1, n2, a, b);
    terms.push_back({a, b, lambda});
    if (!(lambda > kMinWeight)) break;
    res.noalias() -= lambda * outer_kron(a, b);
  }
  return terms;
}

// Fraction of a (x) b inside the column span of u: sum_l (a^T P_l b)^2.
double range_fit(const std::vector<RowMajor>& panels, const Vector& a, const Vector& b) {
  double q = 0.0;
  for (const RowMajor& p : panels) {
    const double v = a.dot(p * b);
    q += v * v;
  }
  return q;
}

double climb_range(const std::vector<RowMajor>& panels, Vector& a, Vector& b) {
  const Eigen::Index n1 = a.size();
  const Eigen::Index n2 = b.size();
  double value = range_fit(panels, a, b);
  for (int step = 0; step < kRangeAlternations; ++step) {
    Matrix ma = Matrix::Zero(n1, n1);
    for (const RowMajor& p : panels) {
      const Vector v = p * b;
      ma.noalias() += v * v.transpose();
    }
    a = top_eigenvector(ma);
    Matrix mb = Matrix::Zero(n2, n2);
    for (const RowMajor& p : panels) {
      const Vector v = p.transpose() * a;
      mb.noalias() += v * v.transpose();
    }
    b = top_eigenvector(mb);
    const double next = b.dot(mb * b);
    const bool done = next - value < 1e-15;
    value = next;
    if (done || value >= 1.0 - 1e-15) break;
  }
  return value;
}

// Product vectors in the range of G, then nonnegative weights fitted in the
// eigenbasis coordinates.
std::vector<Term> range_search(const Matrix& g, int n1, int n2, const std::vector<Term>& seeds) {
  const SymEig e = sym_eig_above(g, kRankThreshold);
  const Eigen::Index r = e.values.size();
  std::vector<RowMajor> panels;
  for (Eigen::Index l = 0; l < r; ++l) panels.push_back(reshape(e.vectors.col(l), n1, n2));

  std::vector<std::pair<Vector, Vector>> starts;
  for (Eigen::Index l = r - 1; l >= 0; --l) {
    const FactorPair c = candidate_from_eigenvector(e.vectors.col(l), n1, n2);
    starts.emplace_back(c.a, c.b);
    Eigen::JacobiSVD<Matrix> svd(Matrix(panels[static_cast<std::size_t>(l)]),
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s) {
      starts.emplace_back(svd.matrixU().col(s), svd.matrixV().col(s));
    }
  }
  for (const Term& t : seeds) starts.emplace_back(t.a, t.b);
  Philox4x64 rng(kRandomSeed);
  for (int s = 0; s < kRandomStarts; ++s) {
    Vector a(n1);
    Vector b(n2);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal();
    starts.emplace_back(a.normalized(), b.normalized());
  }

  std::vector<Term> found;
  for (auto& [a, b] : starts) {
    if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) continue;
    a.normalize();
    b.normalize();
    if (climb_range(panels, a, b) < kRangeFit) continue;
    sign_normalize(a);
    sign_normalize(b);
    const bool seen = std::any_of(found.begin(), found.end(), [&](const Term& t) {
      return std::abs(t.a.dot(a)) * std::abs(t.b.dot(b)) > 1.0 - 1e-8;
    });
    if (!seen) found.push_back({a, b, 0.0});
  }
  if (found.empty()) return found;

  // Weights: diag(d) = sum w_i c_i c_i^T with c_i = U^T (a_i (x) b_i).
  Matrix design(r * r, static_cast<Eigen::Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Vector c = e.vectors.transpose() * kron(found[i].a, found[i].b);
    const Matrix cc = c * c.transpose();
    design.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(cc.data(), r * r);
  }
  const Matrix target = e.values.asDiagonal();
  const Vector w = nnls(design, Eigen::Map<const Vector>(target.data(), r * r));

  std::vector<Term> kept;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (w[static_cast<Eigen::Index>(i)] > kMinWeight) {
      kept.push_back({found[i].a, found[i].b, w[static_cast<Eigen::Index>(i)]});
    }
  }
  return kept;
}

}  // namespace

std::string_view route_name(Route route) {
  switch (route) {
    case Route::rank1:
      return "rank1";
    case Route::separable:
      return "separable";
    case Route::spectral:
      return "spectral";
  }
  return "unknown";
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  const SymEig e = sym_eig(m);
  return static_cast<int>((e.values.array().abs() > kRankThreshold).count());
}

void sign_normalize(Vector& v) {
  if (v.size() == 0) return;
  // Entries within rounding of the maximum count as tied; the first one wins.
  const double top = v.cwiseAbs().maxCoeff();
  Eigen::Index idx = 0;
  while (std::abs(v[idx]) < top * (1.0 - 1e-6)) ++idx;
  if (v[idx] < 0.0) v = -v;
}

std::optional<FactorPair> extract_rank1(const KronSymMatrix& g) {
  const Matrix& m = g.matrix();
  const int n1 = g.n1();
  const int n2 = g.n2();
  Eigen::Index top = 0;
  m.diagonal().cwiseAbs().maxCoeff(&top);
  const int istar = static_cast<int>(top) / n2;
  const int jstar = static_cast<int>(top) % n2;

  Vector a(n1);
  for (int i = 0; i < n1; ++i) a[i] = m(i * n2 + jstar, istar * n2 + jstar);
  Vector b = m.block(istar * n2, istar * n2 + jstar, n2, 1);
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) return std::nullopt;

  FactorPair pair = make_pair(std::move(a), std::move(b), std::nullopt, Route::rank1);
  if ((m - outer_kron(pair.a, pair.b)).norm() > 1e-4) return std::nullopt;
  return pair;
}

FactorPair candidate_from_eigenvector(const Vector& p, int n1, int n2) {
  if (p.size() != static_cast<Eigen::Index>(n1) * n2) {
    throw ValidationError("candidate_from_eigenvector: length must be n1*n2");
  }
  const RowMajor shaped = reshape(p, n1, n2);
  Vector a = shaped.col(0);
  Vector b = shaped.row(0).transpose();
  const double floor = 1e-8 * p.norm();
  if (!(a.norm() > floor) || !(b.norm() > floor)) {
    Eigen::JacobiSVD<Matrix> svd(Matrix(shaped), Eigen::ComputeThinU | Eigen::ComputeThinV);
    a = svd.matrixU().col(0);
    b = svd.matrixV().col(0);
  }
  return make_pair(std::move(a), std::move(b), std::nullopt, Route::spectral);
}

std::vector<FactorPair> spectral_candidates(const KronSymMatrix& g) {
  const SymEig e = sym_eig_above(g.matrix(), kRankThreshold);
  std::vector<FactorPair> out;
  for (Eigen::Index l = e.values.size() - 1; l >= 0; --l) {
    FactorPair c = candidate_from_eigenvector(e.vectors.col(l), g.n1(), g.n2());
    c.weight = e.values[l];
    out.push_back(std::move(c));
  }
  return out;
}

DecompositionReport greedy_kron_decompose(const KronSymMatrix& g, int r) {
  const Matrix& m = g.matrix();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const double trace = m.trace();
  DecompositionReport report;
  report.rank = r;
  report.route = Route::spectral;

  auto accept = [&](std::vector<Term> terms, double residual) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& x, const Term& y) { return x.weight > y.weight; });
    report.route = Route::separable;
    report.residual = residual;
    for (Term& t : terms) {
      report.pairs.push_back(make_pair(std::move(t.a), std::move(t.b), t.weight, Route::separable));
    }
  };

  if (r < 1) {
    report.note = "zero rank";
    return report;
  }
  const std::vector<Term> greedy = deflate(m, n1, n2, r);
  const double greedy_res = relative_residual(m, greedy);
  if (weights_ok(greedy, trace) && greedy_res <= kMaxResidual) {
    accept(greedy, greedy_res);
    return report;
  }

  if (r > kMaxRangeRank) {
    report.note = "greedy deflation failed; rank too large for the range search";
    return report;
  }
  const std::vector<Term> ranged = range_search(m, n1, n2, greedy);
  if (ranged.empty()) {
    report.note = "no product vectors in the range";
    return report;
  }
  const double ranged_res = relative_residual(m, ranged);
  if (weights_ok(ranged, trace) && ranged_res <= kMaxResidual) {
    accept(ranged, ranged_res);
    return report;
  }
  report.note = ranged_res > kMaxResidual ? "reconstruction residual too large"
                                          : "weights do not sum to the trace";
  return report;
}

DecompositionReport extract_candidates(const SdpSolution& sol) {
  const KronSymMatrix& g = sol.x;
  DecompositionReport report;
  const SymEig e = sym_eig(g.matrix());
  report.rank = static_cast<int>((e.values.array().abs() > kRankThreshold).count());
  std::vector<double> above;
  for (Eigen::Index l = e.values.size() - 1; l >= 0; --l) {
    if (e.values[l] > kRankThreshold) above.push_back(e.values[l]);
  }
  report.eigenvalues = Eigen::Map<const Vector>(above.data(), static_cast<Eigen::Index>(above.size()));

  if (report.rank == 1) {
    if (auto pair = extract_rank1(g)) {
      report.route = Route::rank1;
      report.pairs.push_back(*std::move(pair));
      return report;
    }
    report.note = "rank-one reconstruction failed";
  } else if (report.rank >= 2) {
    DecompositionReport sep = greedy_kron_decompose(g, report.rank);
    if (sep.route == Route::separable) {
      sep.eigenvalues = report.eigenvalues;
      return sep;
    }
    report.note = sep.note;
  }
  report.route = Route::spectral;
  report.pairs = spectral_candidates(g);
  if (report.pairs.empty()) {
    // Never leave the caller without a candidate: use the top eigenvector.
    FactorPair c = candidate_from_eigenvector(e.vectors.col(e.vectors.cols() - 1), g.n1(), g.n2());
    c.weight = e.values[e.values.size() - 1];
    report.pairs.push_back(std::move(c));
  }
  return report;
}

}  // namespace r1tc
