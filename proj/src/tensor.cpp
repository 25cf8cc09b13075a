// SPDX-License-Identifier: Apache-2.0
#include "r1tc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace r1tc {

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

namespace {

std::string describe(const Index3& idx) {
  std::ostringstream os;
  os << "(" << idx.i + 1 << "," << idx.j + 1 << "," << idx.k + 1 << ")";
  return os.str();
}

bool in_range(const Dims& d, const Index3& idx) {
  return idx.i >= 0 && idx.i < d.n1 && idx.j >= 0 && idx.j < d.n2 && idx.k >= 0 && idx.k < d.n3;
}

// Strips a trailing '#' comment and surrounding whitespace.
std::string strip(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

}  // namespace

ObservedTensor::ObservedTensor(Dims dims, std::vector<Entry> entries)
    : dims_(dims), entries_(std::move(entries)) {
  if (dims_.n1 < 1 || dims_.n2 < 1 || dims_.n3 < 1) {
    throw ValidationError("tensor dimensions must be positive");
  }
  if (entries_.empty()) throw ValidationError("observation set must be non-empty");
  std::vector<Index3> seen;
  seen.reserve(entries_.size());
  for (const Entry& e : entries_) {
    if (!in_range(dims_, e.idx)) {
      throw ValidationError("index " + describe(e.idx) + " outside tensor dimensions");
    }
    if (!std::isfinite(e.value)) {
      throw ValidationError("non-finite value at " + describe(e.idx));
    }
    seen.push_back(e.idx);
  }
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) throw ValidationError("duplicate index " + describe(*dup));
}

std::size_t SliceIndex::total() const {
  std::size_t n = 0;
  for (const auto& s : slices) n += s.size();
  return n;
}

SliceIndex omega_slices(const ObservedTensor& tensor) {
  SliceIndex out;
  out.dims = tensor.dims();
  out.slices.resize(static_cast<std::size_t>(tensor.dims().n3));
  for (const Entry& e : tensor.entries()) {
    out.slices[static_cast<std::size_t>(e.idx.k)].push_back({e.idx.i, e.idx.j, e.value});
  }
  for (auto& slice : out.slices) {
    std::sort(slice.begin(), slice.end(), [](const SliceIndex::Slot& x, const SliceIndex::Slot& y) {
      return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    });
  }
  return out;
}

ObservedTensor parse_tensor(std::istream& in, const std::string& source) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Dims> dims;
  std::vector<Entry> entries;
  std::map<Index3, std::size_t> first_seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string extra;
    if (!dims) {
      Dims d;
      if (!(fields >> d.n1 >> d.n2 >> d.n3) || (fields >> extra)) {
        throw ParseError(source, line_no, "expected header 'n1 n2 n3'");
      }
      if (d.n1 < 1 || d.n2 < 1 || d.n3 < 1) {
        throw ParseError(source, line_no, "dimensions must be positive");
      }
      dims = d;
      continue;
    }
    long long i = 0, j = 0, k = 0;
    std::string value_text;
    if (!(fields >> i >> j >> k >> value_text) || (fields >> extra)) {
      throw ParseError(source, line_no, "expected entry 'i j k value'");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "invalid value '" + value_text + "'");
    }
    if (!std::isfinite(value)) throw ParseError(source, line_no, "non-finite value");
    const Index3 idx{static_cast<int>(i - 1), static_cast<int>(j - 1), static_cast<int>(k - 1)};
    if (i < 1 || j < 1 || k < 1 || !in_range(*dims, idx)) {
      throw ParseError(source, line_no, "index out of range");
    }
    const auto [it, fresh] = first_seen.emplace(idx, line_no);
    if (!fresh) {
      throw ParseError(source, line_no,
                       "duplicate index " + describe(idx) + " (first on line " +
                           std::to_string(it->second) + ")");
    }
    entries.push_back({idx, value});
  }
  if (!dims) throw ParseError(source, line_no, "missing header line");
  if (entries.empty()) throw ParseError(source, line_no, "no entries");
  return ObservedTensor(*dims, std::move(entries));
}

ObservedTensor load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_tensor(in, path.string());
}

void write_tensor(std::ostream& out, const ObservedTensor& tensor) {
  const Dims& d = tensor.dims();
  out << d.n1 << ' ' << d.n2 << ' ' << d.n3 << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const Entry& e : tensor.entries()) {
    out << e.idx.i + 1 << ' ' << e.idx.j + 1 << ' ' << e.idx.k + 1 << ' ' << e.value << '\n';
  }
  out.precision(old_precision);
}

void save_tensor(const std::filesystem::path& path, const ObservedTensor& tensor) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_tensor(out, tensor);
}

double omega_norm(const ObservedTensor& tensor) {
  const auto& entries = tensor.entries();
  double sum = 0.0;
  for (const Entry& e : entries) sum += e.value * e.value;
  return std::sqrt(sum);
}

CompletionErrors completion_errors(const ObservedTensor& tensor, const Vector& a, const Vector& b,
                                   const Vector& c) {
  const Dims& d = tensor.dims();
  if (a.size() != d.n1 || b.size() != d.n2 || c.size() != d.n3) {
    throw ValidationError("factor lengths do not match tensor dimensions");
  }
  CompletionErrors out;
  double sum = 0.0;
  for (const Entry& e : tensor.entries()) {
    const double r = e.value - a[e.idx.i] * b[e.idx.j] * c[e.idx.k];
    sum += r * r;
  }
  out.abs = std::sqrt(sum);
  const double data_norm = omega_norm(tensor);
  if (data_norm > 0.0) out.rel = out.abs / data_norm;
  return out;
}

}  // namespace r1tc
