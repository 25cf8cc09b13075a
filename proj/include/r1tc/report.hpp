// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "r1tc/completion.hpp"
#include "r1tc/diagnostics.hpp"
#include "r1tc/harness.hpp"

namespace r1tc {

/// ||a (x) b (x) c - x (x) y (x) z||_F over the full index cube.
double rank1_distance(const Vector& a, const Vector& b, const Vector& c, const Vector& x,
                      const Vector& y, const Vector& z);

/// Comparison of the best candidate against a known ground truth.
struct Diagnosis {
  double noise_norm = 0.0;
  std::optional<double> err_rat;
  double full_distance = 0.0;  // rank1_distance to the truth
  IdentifiabilityReport identifiability;  // evaluated at the truth
};

Diagnosis diagnose(const ObservedTensor& tensor, const CompletionResult& result,
                   const GroundTruth& truth);

/// key=value lines; candidate indices and witness slices are one-based.
void write_report(std::ostream& out, const CompletionResult& result,
                  const std::optional<Diagnosis>& diag = std::nullopt);

/// candidate,factor,index,value with one-based candidate and index.
void write_factors_csv(std::ostream& out, const CompletionResult& result);

/// Lines "a ...", "b ...", "c ..." and "noise_norm x". The noise vector itself
/// is not stored.
void write_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth parse_truth(std::istream& in, const std::string& source = "<truth>");
GroundTruth load_truth(const std::filesystem::path& path);

}  // namespace r1tc
