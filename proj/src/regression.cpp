// SPDX-License-Identifier: Apache-2.0
#include "r1tc/regression.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "r1tc/fixtures.hpp"
#include "r1tc/harness.hpp"

namespace r1tc {

bool CheckOutcome::pass() const {
  for (const Clause& c : clauses) {
    if (!c.pass) return false;
  }
  return !clauses.empty();
}

double distance_up_to_sign(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) return std::numeric_limits<double>::infinity();
  return std::min((u - v).cwiseAbs().maxCoeff(), (u + v).cwiseAbs().maxCoeff());
}

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Clause within(const std::string& what, double value, double target, double tol) {
  return {what + " = " + fmt(target) + " +- " + fmt(tol), std::abs(value - target) <= tol, fmt(value)};
}

// Index of the candidate whose (a, b) matches (a, b) best, and that distance.
std::pair<std::size_t, double> nearest_pair(const CompletionResult& r, const Vector& a,
                                            const Vector& b) {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < r.all.size(); ++n) {
    const FactorPair& p = r.all[n].pair;
    const double d = std::max(distance_up_to_sign(p.a, a), distance_up_to_sign(p.b, b));
    if (d < dist) {
      dist = d;
      best = n;
    }
  }
  return {best, dist};
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

CheckOutcome check_example51(const CompletionConfig& cfg) {
  const auto t0 = Clock::now();
  CheckOutcome out{1, "example51 rank-1 recovery", {}, 0.0};
  const CompletionResult r = complete(fixture_tensor("example51"), cfg);
  out.seconds = elapsed(t0);
  const RankOneCompletion& best = r.best().completion;
  out.clauses.push_back({"rank = 1", r.rank == 1, std::to_string(r.rank)});
  const double da = distance_up_to_sign(best.a, vec({0.4073, 0.8169, 0.4083}));
  const double db = distance_up_to_sign(best.b, vec({0.3276, -0.1642, 0.6589, 0.6579}));
  const double dc = distance_up_to_sign(best.c, vec({149.9733, 150.0009, 225.0418}));
  out.clauses.push_back({"a matches to 1e-3", da <= 1e-3, fmt(best.a) + " dist " + fmt(da)});
  out.clauses.push_back({"b matches to 1e-3", db <= 1e-3, fmt(best.b) + " dist " + fmt(db)});
  out.clauses.push_back({"c matches to 1e-2", dc <= 1e-2, fmt(best.c) + " dist " + fmt(dc)});
  out.clauses.push_back(within("errAbs", best.err_abs, 0.2996, 5e-3));
  out.clauses.push_back({"runtime <= 30 s", out.seconds <= 30.0, fmt(out.seconds) + " s"});
  return out;
}

CheckOutcome check_example53(const CompletionConfig& cfg) {
  const auto t0 = Clock::now();
  CheckOutcome out{2, "example53 separable rank 3", {}, 0.0};
  const CompletionResult r = complete(fixture_tensor("example53"), cfg);
  out.seconds = elapsed(t0);
  out.clauses.push_back({"rank = 3", r.rank == 3, std::to_string(r.rank)});
  out.clauses.push_back({"decomposition succeeds with 3 pairs",
                         r.route == Route::separable && r.all.size() == 3,
                         std::string(route_name(r.route)) + ", " + std::to_string(r.all.size()) +
                             " pairs" + (r.note.empty() ? "" : ", " + r.note)});
  const Vector printed[3][2] = {
      {vec({0.4471, 0.8944, 0.0000}), vec({0.9998, 0.0002, 0.0000})},
      {vec({0.0001, 1.0000, 0.0000}), vec({0.0002, 0.9998, 0.0000})},
      {vec({0.2693, 0.5373, 0.7992}), vec({0.2698, 0.5385, 0.7982})}};
  for (int p = 0; p < 3; ++p) {
    const auto [idx, dist] = nearest_pair(r, printed[p][0], printed[p][1]);
    out.clauses.push_back({"printed pair " + std::to_string(p + 1) + " matched to 5e-3", dist <= 5e-3,
                           "candidate " + std::to_string(idx + 1) + " dist " + fmt(dist)});
  }
  int nonsingular = 0;
  for (const Candidate& c : r.all) nonsingular += c.verdict.singular ? 0 : 1;
  out.clauses.push_back({"exactly one nonsingular pair", nonsingular == 1, std::to_string(nonsingular)});
  const RankOneCompletion& best = r.best().completion;
  out.clauses.push_back(within("errAbs", best.err_abs, 0.0091, 2e-3));
  out.clauses.push_back(within("errRel", best.err_rel.value_or(NAN), 0.0010, 5e-4));
  out.clauses.push_back({"(info) relaxation converged", true,
                         std::string(r.converged ? "yes" : "no") + " after " +
                             std::to_string(r.iters) + " iterations, pstar " + fmt(r.pstar)});
  return out;
}

CheckOutcome check_example54(const CompletionConfig& cfg) {
  const auto t0 = Clock::now();
  CheckOutcome out{3, "example54 two exact completions", {}, 0.0};
  const CompletionResult r = complete(fixture_tensor("example54"), cfg);
  out.seconds = elapsed(t0);
  out.clauses.push_back({"rank = 2", r.rank == 2, std::to_string(r.rank)});
  const double s2 = std::sqrt(2.0);
  const Vector pa[2] = {vec({2.0 / 3, -2.0 / 3, 1.0 / 3}), vec({2.0 / 3, 2.0 / 3, 1.0 / 3})};
  const Vector pb[2] = {vec({-s2 / 6, -s2 / 6, 2 * s2 / 3}), vec({s2 / 6, s2 / 6, 2 * s2 / 3})};
  const Vector pc[2] = {vec({4.5 * s2, -18 * s2, 4.5 * s2}), vec({4.5 * s2, 18 * s2, 4.5 * s2})};
  for (int p = 0; p < 2; ++p) {
    const auto [idx, dist] = nearest_pair(r, pa[p], pb[p]);
    const std::string tag = "pair " + std::to_string(p + 1);
    out.clauses.push_back({tag + " recovered to 1e-4", dist <= 1e-4,
                           "candidate " + std::to_string(idx + 1) + " dist " + fmt(dist)});
    if (idx >= r.all.size()) continue;
    const Candidate& c = r.all[idx];
    out.clauses.push_back({tag + " nonsingular", !c.verdict.singular, c.verdict.singular ? "singular" : "ok"});
    out.clauses.push_back({tag + " errAbs <= 1e-6", c.completion.err_abs <= 1e-6, fmt(c.completion.err_abs)});
    const double dc = distance_up_to_sign(c.completion.c, pc[p]);
    out.clauses.push_back({tag + " c matches to 1e-4", dc <= 1e-4, fmt(c.completion.c)});
  }
  return out;
}

CheckOutcome check_example55(const CompletionConfig& cfg) {
  const auto t0 = Clock::now();
  CheckOutcome out{4, "example55 non-tight relaxation", {}, 0.0};
  const CompletionResult r = complete(fixture_tensor("example55"), cfg);
  out.seconds = elapsed(t0);
  out.clauses.push_back(within("pstar", r.pstar, 0.9028, 1e-3));
  out.clauses.push_back({"rank = 4", r.rank == 4, std::to_string(r.rank)});
  const double expect[4] = {0.2765, 0.2765, 0.2765, 0.1706};
  bool eig_ok = r.eigenvalues.size() == 4;
  for (Eigen::Index i = 0; eig_ok && i < 4; ++i) eig_ok = std::abs(r.eigenvalues[i] - expect[i]) <= 1e-3;
  out.clauses.push_back({"eigenvalues {0.2765 x3, 0.1706} +- 1e-3", eig_ok, fmt(r.eigenvalues)});
  out.clauses.push_back({"decomposition reports failure", r.route == Route::spectral,
                         std::string(route_name(r.route)) + (r.note.empty() ? "" : ": " + r.note)});
  const Vector e1 = vec({1.0, 0.0, 0.0});
  const bool have4 = r.all.size() >= 4;
  const double d4 =
      have4 ? std::max(distance_up_to_sign(r.all[3].pair.a, e1), distance_up_to_sign(r.all[3].pair.b, e1))
            : std::numeric_limits<double>::infinity();
  out.clauses.push_back({"pair 4 = (e1, e1) +- 1e-3", d4 <= 1e-3, "dist " + fmt(d4)});
  out.clauses.push_back(within("best errRel", r.best().completion.err_rel.value_or(NAN), 0.3651, 1e-3));
  const double f11 = have4 ? r.all[3].f_value : 1.0;
  out.clauses.push_back({"certified bound in [0.89, 0.91] and below f(e1, e1)",
                         r.cert_lb >= 0.89 && r.cert_lb <= 0.91 && r.cert_lb < f11,
                         fmt(r.cert_lb) + " vs f " + fmt(f11)});
  return out;
}

CheckOutcome check_example52(const CompletionConfig& cfg, int seeds) {
  const auto t0 = Clock::now();
  CheckOutcome out{5, "example52 protocol, sigma 1e-4", {}, 0.0};
  int rank1 = 0;
  int small = 0;
  int both = 0;
  double worst = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    const Instance inst = example52_instance(trial_seed(0x52, 0, static_cast<std::size_t>(s)), 1e-4);
    const CompletionResult r = complete(inst.tensor, cfg);
    const double e = r.best().completion.err_abs;
    rank1 += r.rank == 1;
    small += e <= 5e-4;
    both += r.rank == 1 && e <= 5e-4;
    worst = std::max(worst, e);
    best_err = std::min(best_err, e);
  }
  out.seconds = elapsed(t0);
  const int need = (seeds * 9 + 9) / 10;
  out.clauses.push_back({"rank 1 and errAbs <= 5e-4 in >= " + std::to_string(need) + "/" +
                             std::to_string(seeds) + " seeds",
                         both >= need,
                         std::to_string(both) + " (rank 1: " + std::to_string(rank1) +
                             ", errAbs ok: " + std::to_string(small) + ", errAbs range [" +
                             fmt(best_err) + ", " + fmt(worst) + "])"});
  return out;
}

std::vector<CheckOutcome> run_regression(const CompletionConfig& cfg) {
  return {check_example51(cfg), check_example53(cfg), check_example54(cfg), check_example55(cfg),
          check_example52(cfg)};
}

void print_outcome(std::ostream& out, const CheckOutcome& o) {
  out << (o.pass() ? "PASS " : "FAIL ") << o.id << ' ' << o.name << " (" << fmt(o.seconds) << " s)\n";
  for (const Clause& c : o.clauses) {
    out << "    [" << (c.pass ? "ok" : "no") << "] " << c.what << ": " << c.observed << '\n';
  }
}

}  // namespace r1tc
