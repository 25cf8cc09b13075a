// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "r1tc/completion.hpp"

namespace r1tc {

struct InstanceSpec {
  Dims dims;
  double den = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  Vector a;
  Vector b;
  Vector c;
  Vector noise;  // in the tensor's entry order
  double noise_norm = 0.0;
};

struct Instance {
  ObservedTensor tensor;
  GroundTruth truth;
};

/// ceil(n1 n2 n3 den), ignoring representation error in den.
std::size_t observation_count(const Dims& dims, double den);

/// Factors uniform on [0, 1), then Omega by partial Fisher-Yates over linear
/// indices (i slowest, k fastest), then Normal(0, sigma) noise per entry, all
/// from one Philox stream keyed by spec.seed. Entries are in linear index order.
Instance generate_instance(const InstanceSpec& spec);

/// Seed of trial `trial` in grid cell `cell`: seed xor mix64((cell << 32) | trial).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial);

/// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct GridCell {
  Dims dims;
  double den = 1.0;
  double sigma = 0.0;
};

std::vector<GridCell> parse_grid(std::istream& in, const std::string& source = "<grid>");
std::vector<GridCell> load_grid(const std::filesystem::path& path);

struct BenchOptions {
  int trials = 20;
  std::uint64_t seed = 1;
  int nls_seeds = 10;
  unsigned threads = 0;
  CompletionConfig completion;
};

struct RankRow {
  GridCell cell;
  int trials = 0;
  double pct_rank1 = 0.0;
  double pct_rank2 = 0.0;
  double pct_rank3plus = 0.0;
  int unconverged = 0;
};

struct PerfRow {
  GridCell cell;
  long long dim_y = 0;
  long long len_g = 0;
  double time_s_avg = 0.0;
  double errrat_min = 0.0;
  double errrat_max = 0.0;
  int unconverged = 0;
};

struct NlsRow {
  GridCell cell;
  double errnls_min = 0.0;
  double errnls_max = 0.0;
  double errsdp_min = 0.0;
  double errsdp_max = 0.0;
  int unconverged = 0;
};

/// Number of free moments y: n1(n1+1)n2(n2+1)/4.
long long moment_dim(const Dims& dims);
/// Side of G[y]: n1 n2.
long long gram_side(const Dims& dims);

/// Per-trial outcome shared by the drivers.
struct TrialOutcome {
  int rank = 0;
  bool converged = false;
  double seconds = 0.0;
  double err_rat = 0.0;
};

TrialOutcome run_trial(const InstanceSpec& spec, const CompletionConfig& cfg);

std::vector<RankRow> run_rank_table(const std::vector<GridCell>& grid, const BenchOptions& opt);
std::vector<PerfRow> run_perf_table(const std::vector<GridCell>& grid, const BenchOptions& opt);
std::vector<NlsRow> run_nls_table(const std::vector<GridCell>& grid, const BenchOptions& opt);

void write_rank_csv(std::ostream& out, const std::vector<RankRow>& rows);
void write_perf_csv(std::ostream& out, const std::vector<PerfRow>& rows);
void write_nls_csv(std::ostream& out, const std::vector<NlsRow>& rows);

}  // namespace r1tc
