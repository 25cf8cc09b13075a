// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "r1tc/extraction.hpp"

namespace r1tc {

enum class SingularReason { none, empty_slice, all_products_zero };

std::string_view reason_name(SingularReason reason);

/// Singularity of (a, b) for c-retrieval.
///
/// `singular` follows the definition: some slice is empty or every observed
/// product a_i b_j in it vanishes (|a_i b_j| <= 1e-8 ||a|| ||b||). An empty
/// slice alone does not stop retrieval, its c_k is simply set to 0, so
/// `retrievable` is false only when an observed slice has all products zero.
struct SingularityVerdict {
  bool singular = false;
  bool retrievable = true;
  SingularReason reason = SingularReason::none;
  std::optional<int> witness_slice;
};

SingularityVerdict is_singular(const Vector& a, const Vector& b, const SliceIndex& slices);

class SingularPairError : public ValidationError {
 public:
  explicit SingularPairError(SingularityVerdict verdict);
  const SingularityVerdict& verdict() const { return verdict_; }

 private:
  SingularityVerdict verdict_;
};

/// Slices with no observation; their c_k is reported as 0.
std::vector<int> unobserved_slices(const SliceIndex& slices);

/// c_k = sum_s A_s a_{i_s} b_{j_s} / sum_s (a_{i_s} b_{j_s})^2 per slice, 0 for
/// empty slices. Throws SingularPairError when some observed slice cannot be
/// retrieved.
Vector retrieve_c(const SliceIndex& slices, const Vector& a, const Vector& b);

struct CompletionConfig {
  SdpOptions sdp;
};

struct Candidate {
  FactorPair pair;
  RankOneCompletion completion;
  SingularityVerdict verdict;
  double f_value = 0.0;
};

struct CompletionResult {
  std::vector<Candidate> all;
  std::size_t best_index = 0;
  Route route = Route::spectral;
  int rank = 0;
  Vector eigenvalues;
  std::string note;
  double pstar = 0.0;
  double cert_lb = 0.0;
  SdpResiduals residuals;
  int iters = 0;
  bool converged = false;
  double seconds = 0.0;

  const Candidate& best() const { return all.at(best_index); }
  double f_at_best() const { return best().f_value; }
};

/// Phi, B, the relaxation, candidate extraction, then c-retrieval and scoring
/// for each candidate. The best candidate has the smallest errAbs among the
/// retrievable ones (lowest index on ties); singular candidates are scored
/// with c = 0. A non-converged relaxation still yields candidates, with
/// converged = false.
CompletionResult complete(const ObservedTensor& tensor, const CompletionConfig& cfg = {});

/// The candidate scoring step on its own, for callers that hold their own pairs.
Candidate score_candidate(const ObservedTensor& tensor, const SliceIndex& slices,
                          const QuadForm& q, FactorPair pair);

}  // namespace r1tc
