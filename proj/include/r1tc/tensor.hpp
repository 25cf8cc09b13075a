// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace r1tc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised for malformed tensor files; carries the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Raised when inputs violate a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Dims {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  std::size_t volume() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
           static_cast<std::size_t>(n3);
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Zero-based (i, j, k). Files use one-based indices; conversion happens in IO.
struct Index3 {
  int i = 0;
  int j = 0;
  int k = 0;
  friend auto operator<=>(const Index3&, const Index3&) = default;
};

struct Entry {
  Index3 idx;
  double value = 0.0;
};

/// A third-order tensor known only on the index set Omega.
///
/// Entries keep their construction order. Construction validates that every
/// index lies inside dims, that no index repeats and that Omega is non-empty.
class ObservedTensor {
 public:
  ObservedTensor(Dims dims, std::vector<Entry> entries);

  const Dims& dims() const { return dims_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  Dims dims_;
  std::vector<Entry> entries_;
};

/// Per third-index slice k, the observed (i, j) positions sorted
/// lexicographically together with their values.
struct SliceIndex {
  struct Slot {
    int i = 0;
    int j = 0;
    double value = 0.0;
  };

  Dims dims;
  std::vector<std::vector<Slot>> slices;

  std::size_t count(int k) const { return slices[static_cast<std::size_t>(k)].size(); }
  std::size_t total() const;
};

SliceIndex omega_slices(const ObservedTensor& tensor);

ObservedTensor parse_tensor(std::istream& in, const std::string& source = "<stream>");
ObservedTensor load_tensor(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const ObservedTensor& tensor);
void save_tensor(const std::filesystem::path& path, const ObservedTensor& tensor);

/// sqrt of the sum over Omega of value_at(idx)^2.
template <class Evaluator>
double omega_norm(const ObservedTensor& tensor, Evaluator&& value_at) {
  double sum = 0.0;
  for (const Entry& e : tensor.entries()) {
    const double v = value_at(e.idx);
    sum += v * v;
  }
  return std::sqrt(sum);
}

/// Norm of the observed data itself.
double omega_norm(const ObservedTensor& tensor);

struct CompletionErrors {
  double abs = 0.0;
  std::optional<double> rel;  // absent when the data norm is zero
};

CompletionErrors completion_errors(const ObservedTensor& tensor, const Vector& a, const Vector& b,
                                   const Vector& c);

/// A rank-1 completion a (x) b (x) c with unit a, b and its quality on Omega.
struct RankOneCompletion {
  Vector a;
  Vector b;
  Vector c;
  double err_abs = 0.0;
  std::optional<double> err_rel;
  std::optional<double> err_rat;  // only when the injected noise is known
};

}  // namespace r1tc
