// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "r1tc/sdp.hpp"

namespace r1tc {

enum class Route { rank1, separable, spectral };

std::string_view route_name(Route route);

/// Unit factors (a, b), each sign-normalized so its largest-magnitude entry
/// is positive (first index wins ties).
struct FactorPair {
  Vector a;
  Vector b;
  std::optional<double> weight;
  Route source = Route::spectral;
};

struct DecompositionReport {
  int rank = 0;
  Route route = Route::spectral;
  std::vector<FactorPair> pairs;
  /// ||G - sum w (aa^T) (x) (bb^T)||_F / ||G||_F; set on the separable route.
  std::optional<double> residual;
  /// Eigenvalues of G above the rank threshold, descending.
  Vector eigenvalues;
  /// Why the separable route was not taken, if it was tried.
  std::string note;
};

inline constexpr double kRankThreshold = 1e-6;

/// Number of eigenvalues with |lambda| > 1e-6.
int numerical_rank(const Matrix& m);

/// Flips the sign of v so its largest-magnitude entry is positive.
void sign_normalize(Vector& v);

/// Closed-form factors of a rank-one G = (aa^T) (x) (bb^T). Returns nullopt
/// when the reconstruction misses G by more than 1e-4 in Frobenius norm.
std::optional<FactorPair> extract_rank1(const KronSymMatrix& g);

/// Best-effort separable decomposition G = sum w_i (a_i a_i^T) (x) (b_i b_i^T).
///
/// First tries r rounds of greedy deflation. If that does not reproduce G,
/// searches the range of G for product vectors a (x) b and fits nonnegative
/// weights to them. Success is only reported for a verified decomposition;
/// failure proves nothing about separability. On failure the route is
/// spectral, the pairs are empty and `note` says why.
DecompositionReport greedy_kron_decompose(const KronSymMatrix& g, int r);

/// a from entries p[i*n2] and b from p[0..n2) of an eigenvector, normalized.
/// Falls back to the dominant singular pair of the n1 x n2 reshape of p when
/// either slice has norm below 1e-8 ||p||.
FactorPair candidate_from_eigenvector(const Vector& p, int n1, int n2);

/// One candidate per eigenvalue above 1e-6, by descending eigenvalue.
std::vector<FactorPair> spectral_candidates(const KronSymMatrix& g);

/// Rank one: closed form. Rank two or more: separable decomposition, else spectral.
DecompositionReport extract_candidates(const SdpSolution& sol);

}  // namespace r1tc
