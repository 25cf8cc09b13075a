// SPDX-License-Identifier: Apache-2.0
#include "r1tc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "r1tc/harness.hpp"
#include "r1tc/regression.hpp"
#include "r1tc/report.hpp"

namespace r1tc {

namespace {

struct CompleteArgs {
  std::string tensor;
  double tol = 1e-8;
  int max_iters = 200000;
  std::string report;
  std::string factors;
  std::string truth;
};

struct GenArgs {
  int n1 = 0, n2 = 0, n3 = 0;
  double den = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
};

struct BenchArgs {
  std::string kind;
  std::string grid;
  int trials = 20;
  std::uint64_t seed = 1;
  int nls_seeds = 10;
  unsigned threads = 0;
  int max_iters = 200000;
  double tol = 1e-8;
  std::string out;
};

SdpOptions sdp_options(double tol, int max_iters) {
  if (!(tol > 0.0)) throw ValidationError("--tol must be positive");
  if (max_iters < 1) throw ValidationError("--max-iters must be positive");
  SdpOptions o;
  o.tol = tol;
  o.max_iters = max_iters;
  return o;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path);
  return f;
}

int run_complete(const CompleteArgs& a, std::ostream& out) {
  const ObservedTensor tensor = load_tensor(a.tensor);
  CompletionConfig cfg;
  cfg.sdp = sdp_options(a.tol, a.max_iters);
  std::optional<GroundTruth> truth;
  if (!a.truth.empty()) truth = load_truth(a.truth);
  const CompletionResult res = complete(tensor, cfg);
  std::optional<Diagnosis> diag;
  if (truth) diag = diagnose(tensor, res, *truth);
  write_report(out, res, diag);
  if (!a.report.empty()) {
    std::ofstream f = open_out(a.report);
    write_report(f, res, diag);
  }
  if (!a.factors.empty()) {
    std::ofstream f = open_out(a.factors);
    write_factors_csv(f, res);
  }
  return res.converged ? kExitOk : kExitNotConverged;
}

int run_gen(const GenArgs& a) {
  if (a.n1 < 1 || a.n2 < 1 || a.n3 < 1) throw ValidationError("dimensions must be positive");
  if (!(a.den > 0.0 && a.den <= 1.0)) throw ValidationError("den must lie in (0, 1]");
  if (!(a.sigma >= 0.0)) throw ValidationError("sigma must be nonnegative");
  const Instance inst = generate_instance({{a.n1, a.n2, a.n3}, a.den, a.sigma, a.seed});
  {
    std::ofstream f = open_out(a.out);
    write_tensor(f, inst.tensor);
  }
  if (!a.truth.empty()) {
    std::ofstream f = open_out(a.truth);
    write_truth(f, inst.truth);
  }
  return kExitOk;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  const std::vector<GridCell> grid = load_grid(a.grid);
  BenchOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.nls_seeds = a.nls_seeds;
  opt.threads = a.threads;
  opt.completion.sdp = sdp_options(a.tol, a.max_iters);
  if (opt.trials < 1) throw ValidationError("--trials must be positive");
  if (opt.nls_seeds < 1) throw ValidationError("--nls-seeds must be positive");

  std::ofstream file;
  if (!a.out.empty()) file = open_out(a.out);
  std::ostream& dst = a.out.empty() ? out : file;
  if (a.kind == "rank") {
    write_rank_csv(dst, run_rank_table(grid, opt));
  } else if (a.kind == "perf") {
    write_perf_csv(dst, run_perf_table(grid, opt));
  } else {
    write_nls_csv(dst, run_nls_table(grid, opt));
  }
  return kExitOk;
}

int run_regress(int max_iters, std::ostream& out) {
  CompletionConfig cfg;
  cfg.sdp = sdp_options(1e-8, max_iters);
  int passed = 0;
  const auto outcomes = run_regression(cfg);
  for (const CheckOutcome& o : outcomes) {
    print_outcome(out, o);
    passed += o.pass();
  }
  out << passed << '/' << outcomes.size() << " fixtures pass\n";
  return passed == static_cast<int>(outcomes.size()) ? kExitOk : kExitInvalid;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-1 tensor completion by a convex relaxation"};
  app.require_subcommand(1);

  CompleteArgs ca;
  auto* complete_cmd = app.add_subcommand("complete", "Complete an observed tensor");
  complete_cmd->add_option("tensor-file", ca.tensor, "Tensor file")->required()->check(CLI::ExistingFile);
  complete_cmd->add_option("--tol", ca.tol, "Solver tolerance")->capture_default_str();
  complete_cmd->add_option("--max-iters", ca.max_iters, "Solver iteration cap")->capture_default_str();
  complete_cmd->add_option("--report", ca.report, "Also write the report here");
  complete_cmd->add_option("--factors", ca.factors, "Write candidate factors as CSV");
  complete_cmd->add_option("--diagnose", ca.truth, "Ground-truth file for diagnostics")
      ->check(CLI::ExistingFile);

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random rank-1 instance");
  gen_cmd->add_option("n1", ga.n1)->required();
  gen_cmd->add_option("n2", ga.n2)->required();
  gen_cmd->add_option("n3", ga.n3)->required();
  gen_cmd->add_option("den", ga.den)->required();
  gen_cmd->add_option("sigma", ga.sigma)->required();
  gen_cmd->add_option("seed", ga.seed)->required();
  gen_cmd->add_option("--out", ga.out, "Tensor file to write")->required();
  gen_cmd->add_option("--truth", ga.truth, "Ground-truth file to write");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment table over a grid");
  bench_cmd->add_option("kind", ba.kind, "rank, perf or nls")
      ->required()
      ->check(CLI::IsMember({"rank", "perf", "nls"}));
  bench_cmd->add_option("grid-file", ba.grid, "Grid file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--trials", ba.trials, "Trials per cell")->capture_default_str();
  bench_cmd->add_option("--seed", ba.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--nls-seeds", ba.nls_seeds, "Random starts per instance (nls)")
      ->capture_default_str();
  bench_cmd->add_option("--threads", ba.threads, "Worker threads, 0 = all cores")->capture_default_str();
  bench_cmd->add_option("--max-iters", ba.max_iters, "Solver iteration cap")->capture_default_str();
  bench_cmd->add_option("--tol", ba.tol, "Solver tolerance")->capture_default_str();
  bench_cmd->add_option("--out", ba.out, "CSV output (default stdout)");

  int regress_iters = 200000;
  auto* regress_cmd = app.add_subcommand("regress", "Run the worked-example fixtures");
  regress_cmd->add_option("--max-iters", regress_iters, "Solver iteration cap")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitInvalid;
  }

  try {
    if (complete_cmd->parsed()) return run_complete(ca, out);
    if (gen_cmd->parsed()) return run_gen(ga);
    if (bench_cmd->parsed()) return run_bench(ba, out);
    return run_regress(regress_iters, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace r1tc
