// SPDX-License-Identifier: Apache-2.0
#include "r1tc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "r1tc/nls.hpp"
#include "r1tc/rng.hpp"

namespace r1tc {

std::size_t observation_count(const Dims& dims, double den) {
  const double exact = static_cast<double>(dims.volume()) * den;
  // 1000 * 0.18 must give 180, not 181.
  return static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12)));
}

Instance generate_instance(const InstanceSpec& spec) {
  const Dims& d = spec.dims;
  if (d.n1 < 1 || d.n2 < 1 || d.n3 < 1) throw ValidationError("dimensions must be positive");
  if (!(spec.den > 0.0 && spec.den <= 1.0)) throw ValidationError("den must lie in (0, 1]");
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw ValidationError("sigma must be finite and nonnegative");
  }
  const std::size_t volume = d.volume();
  const std::size_t m = std::min(observation_count(d, spec.den), volume);
  if (m == 0) throw ValidationError("den too small: no observations");

  Philox4x64 rng(spec.seed);
  GroundTruth truth;
  truth.a.resize(d.n1);
  truth.b.resize(d.n2);
  truth.c.resize(d.n3);
  for (auto& v : truth.a) v = rng.uniform();
  for (auto& v : truth.b) v = rng.uniform();
  for (auto& v : truth.c) v = rng.uniform();

  std::vector<std::size_t> linear(volume);
  for (std::size_t i = 0; i < volume; ++i) linear[i] = i;
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t j = t + static_cast<std::size_t>(rng.below(volume - t));
    std::swap(linear[t], linear[j]);
  }
  linear.resize(m);
  std::sort(linear.begin(), linear.end());

  const auto n23 = static_cast<std::size_t>(d.n2) * static_cast<std::size_t>(d.n3);
  std::vector<Entry> entries;
  entries.reserve(m);
  truth.noise.resize(static_cast<Eigen::Index>(m));
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t lin = linear[t];
    const Index3 idx{static_cast<int>(lin / n23), static_cast<int>((lin % n23) / d.n3),
                     static_cast<int>(lin % d.n3)};
    const double noise = spec.sigma * rng.normal();
    truth.noise[static_cast<Eigen::Index>(t)] = noise;
    entries.push_back({idx, truth.a[idx.i] * truth.b[idx.j] * truth.c[idx.k] + noise});
  }
  truth.noise_norm = truth.noise.norm();
  return Instance{ObservedTensor(d, std::move(entries)), std::move(truth)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial) {
  return seed ^ mix64((static_cast<std::uint64_t>(cell) << 32) | static_cast<std::uint64_t>(trial));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<GridCell> parse_grid(std::istream& in, const std::string& source) {
  std::vector<GridCell> grid;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = raw.substr(0, raw.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    GridCell cell;
    std::string extra;
    if (!(fields >> cell.dims.n1 >> cell.dims.n2 >> cell.dims.n3 >> cell.den >> cell.sigma) ||
        (fields >> extra)) {
      throw ParseError(source, line_no, "expected 'n1 n2 n3 den sigma'");
    }
    if (cell.dims.n1 < 1 || cell.dims.n2 < 1 || cell.dims.n3 < 1) {
      throw ParseError(source, line_no, "dimensions must be positive");
    }
    if (!(cell.den > 0.0 && cell.den <= 1.0)) throw ParseError(source, line_no, "den must lie in (0, 1]");
    if (!(cell.sigma >= 0.0) || !std::isfinite(cell.sigma)) {
      throw ParseError(source, line_no, "sigma must be finite and nonnegative");
    }
    grid.push_back(cell);
  }
  if (grid.empty()) throw ParseError(source, line_no, "grid has no cells");
  return grid;
}

std::vector<GridCell> load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_grid(in, path.string());
}

long long moment_dim(const Dims& d) {
  return static_cast<long long>(d.n1) * (d.n1 + 1) * d.n2 * (d.n2 + 1) / 4;
}

long long gram_side(const Dims& d) { return static_cast<long long>(d.n1) * d.n2; }

TrialOutcome run_trial(const InstanceSpec& spec, const CompletionConfig& cfg) {
  const Instance inst = generate_instance(spec);
  const CompletionResult res = complete(inst.tensor, cfg);
  TrialOutcome out;
  out.rank = res.rank;
  out.converged = res.converged;
  out.seconds = res.seconds;
  out.err_rat = inst.truth.noise_norm > 0.0 ? res.best().completion.err_abs / inst.truth.noise_norm
                                            : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

InstanceSpec spec_for(const GridCell& cell, std::uint64_t seed, std::size_t c, std::size_t t) {
  return InstanceSpec{cell.dims, cell.den, cell.sigma, trial_seed(seed, c, t)};
}

// Every (cell, trial) outcome, computed on the pool and stored by index.
std::vector<std::vector<TrialOutcome>> run_all(const std::vector<GridCell>& grid,
                                               const BenchOptions& opt) {
  if (opt.trials < 1) throw ValidationError("trials must be positive");
  const auto trials = static_cast<std::size_t>(opt.trials);
  std::vector<std::vector<TrialOutcome>> out(grid.size(), std::vector<TrialOutcome>(trials));
  parallel_for(grid.size() * trials, opt.threads, [&](std::size_t i) {
    const std::size_t c = i / trials;
    const std::size_t t = i % trials;
    out[c][t] = run_trial(spec_for(grid[c], opt.seed, c, t), opt.completion);
  });
  return out;
}

struct MinMax {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isnan(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double min() const { return lo <= hi ? lo : std::numeric_limits<double>::quiet_NaN(); }
  double max() const { return lo <= hi ? hi : std::numeric_limits<double>::quiet_NaN(); }
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<RankRow> run_rank_table(const std::vector<GridCell>& grid, const BenchOptions& opt) {
  const auto outcomes = run_all(grid, opt);
  std::vector<RankRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    RankRow row{grid[c], opt.trials};
    int r1 = 0, r2 = 0, r3 = 0;
    for (const TrialOutcome& o : outcomes[c]) {
      if (!o.converged) {
        ++row.unconverged;
        continue;
      }
      if (o.rank <= 1) {
        ++r1;
      } else if (o.rank == 2) {
        ++r2;
      } else {
        ++r3;
      }
    }
    const int counted = opt.trials - row.unconverged;
    if (counted > 0) {
      row.pct_rank1 = 100.0 * r1 / counted;
      row.pct_rank2 = 100.0 * r2 / counted;
      row.pct_rank3plus = 100.0 * r3 / counted;
    } else {
      row.pct_rank1 = row.pct_rank2 = row.pct_rank3plus = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<PerfRow> run_perf_table(const std::vector<GridCell>& grid, const BenchOptions& opt) {
  const auto outcomes = run_all(grid, opt);
  std::vector<PerfRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const Dims& d = grid[c].dims;
    PerfRow row{grid[c]};
    row.dim_y = moment_dim(d);
    row.len_g = gram_side(d);
    MinMax rat;
    double total = 0.0;
    for (const TrialOutcome& o : outcomes[c]) {
      total += o.seconds;
      if (!o.converged) {
        ++row.unconverged;
        continue;
      }
      rat.add(o.err_rat);
    }
    row.time_s_avg = total / opt.trials;
    row.errrat_min = rat.min();
    row.errrat_max = rat.max();
    rows.push_back(row);
  }
  return rows;
}

std::vector<NlsRow> run_nls_table(const std::vector<GridCell>& grid, const BenchOptions& opt) {
  if (opt.trials < 1) throw ValidationError("trials must be positive");
  if (opt.nls_seeds < 1) throw ValidationError("nls seeds must be positive");
  const auto trials = static_cast<std::size_t>(opt.trials);
  const auto seeds = static_cast<std::size_t>(opt.nls_seeds);

  struct Cell {
    double sdp = 0.0;
    bool converged = false;
    std::vector<double> nls;
  };
  std::vector<std::vector<Cell>> out(grid.size(), std::vector<Cell>(trials));
  parallel_for(grid.size() * trials, opt.threads, [&](std::size_t i) {
    const std::size_t c = i / trials;
    const std::size_t t = i % trials;
    const InstanceSpec spec = spec_for(grid[c], opt.seed, c, t);
    const Instance inst = generate_instance(spec);
    const double noise = inst.truth.noise_norm;
    const CompletionResult res = complete(inst.tensor, opt.completion);
    Cell& cell = out[c][t];
    cell.converged = res.converged;
    cell.sdp = res.best().completion.err_abs / noise;
    for (std::size_t s = 0; s < seeds; ++s) {
      // Start seeds are derived from the instance seed so they do not depend on the seed count.
      const NlsRun run = nls_solve(inst.tensor, trial_seed(spec.seed, 0x6e6c73, s));
      cell.nls.push_back(run.solution.err_abs / noise);
    }
  });

  std::vector<NlsRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    NlsRow row{grid[c]};
    MinMax nls;
    MinMax sdp;
    for (const Cell& cell : out[c]) {
      for (double v : cell.nls) nls.add(v);
      if (!cell.converged) {
        ++row.unconverged;
        continue;
      }
      sdp.add(cell.sdp);
    }
    row.errnls_min = nls.min();
    row.errnls_max = nls.max();
    row.errsdp_min = sdp.min();
    row.errsdp_max = sdp.max();
    rows.push_back(row);
  }
  return rows;
}

void write_rank_csv(std::ostream& out, const std::vector<RankRow>& rows) {
  out << "n,den,sigma,trials,pct_rank1,pct_rank2,pct_rank3plus,unconverged\n";
  for (const RankRow& r : rows) {
    out << r.cell.dims.n1 << ',' << num(r.cell.den) << ',' << num(r.cell.sigma) << ',' << r.trials
        << ',' << fixed(r.pct_rank1, 1) << ',' << fixed(r.pct_rank2, 1) << ','
        << fixed(r.pct_rank3plus, 1) << ',' << r.unconverged << '\n';
  }
}

void write_perf_csv(std::ostream& out, const std::vector<PerfRow>& rows) {
  out << "n1,n2,n3,den,sigma,dim_y,len_G,time_s_avg,errrat_min,errrat_max\n";
  for (const PerfRow& r : rows) {
    const Dims& d = r.cell.dims;
    out << d.n1 << ',' << d.n2 << ',' << d.n3 << ',' << num(r.cell.den) << ',' << num(r.cell.sigma)
        << ',' << r.dim_y << ',' << r.len_g << ',' << fixed(r.time_s_avg, 4) << ','
        << fixed(r.errrat_min, 4) << ',' << fixed(r.errrat_max, 4) << '\n';
  }
}

void write_nls_csv(std::ostream& out, const std::vector<NlsRow>& rows) {
  out << "n1,n2,n3,den,sigma,errnls_min,errnls_max,errsdp_min,errsdp_max\n";
  for (const NlsRow& r : rows) {
    const Dims& d = r.cell.dims;
    out << d.n1 << ',' << d.n2 << ',' << d.n3 << ',' << num(r.cell.den) << ',' << num(r.cell.sigma)
        << ',' << fixed(r.errnls_min, 4) << ',' << fixed(r.errnls_max, 4) << ','
        << fixed(r.errsdp_min, 4) << ',' << fixed(r.errsdp_max, 4) << '\n';
  }
}

}  // namespace r1tc
