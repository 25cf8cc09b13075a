// SPDX-License-Identifier: Apache-2.0
#include "r1tc/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace r1tc {

double rank1_distance(const Vector& a, const Vector& b, const Vector& c, const Vector& x,
                      const Vector& y, const Vector& z) {
  if (a.size() != x.size() || b.size() != y.size() || c.size() != z.size()) {
    throw ValidationError("rank1_distance: factor lengths differ");
  }
  const double aa = a.squaredNorm() * b.squaredNorm() * c.squaredNorm();
  const double xx = x.squaredNorm() * y.squaredNorm() * z.squaredNorm();
  const double ax = a.dot(x) * b.dot(y) * c.dot(z);
  return std::sqrt(std::max(0.0, aa + xx - 2.0 * ax));
}

Diagnosis diagnose(const ObservedTensor& tensor, const CompletionResult& result,
                   const GroundTruth& truth) {
  const Dims& d = tensor.dims();
  if (truth.a.size() != d.n1 || truth.b.size() != d.n2 || truth.c.size() != d.n3) {
    throw ValidationError("truth factors do not match tensor dimensions");
  }
  const RankOneCompletion& best = result.best().completion;
  Diagnosis out;
  out.noise_norm = truth.noise_norm;
  if (truth.noise_norm > 0.0) out.err_rat = best.err_abs / truth.noise_norm;
  out.full_distance = rank1_distance(best.a, best.b, best.c, truth.a, truth.b, truth.c);
  out.identifiability = identifiability_check(truth.a, truth.b, truth.c, omega_slices(tensor));
  return out;
}

namespace {

void put_vector(std::ostream& out, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
}

template <class T>
void put_opt(std::ostream& out, const std::optional<T>& v) {
  if (v) {
    out << *v;
  } else {
    out << "none";
  }
}

}  // namespace

void write_report(std::ostream& out, const CompletionResult& r, const std::optional<Diagnosis>& diag) {
  const auto old_precision = out.precision(10);
  out << "route=" << route_name(r.route) << '\n'
      << "rank=" << r.rank << '\n'
      << "pstar=" << r.pstar << '\n'
      << "cert_lb=" << r.cert_lb << '\n'
      << "converged=" << (r.converged ? "true" : "false") << '\n'
      << "iters=" << r.iters << '\n'
      << "primal_res=" << r.residuals.primal << '\n'
      << "dual_res=" << r.residuals.dual << '\n'
      << "psd_res=" << r.residuals.psd << '\n'
      << "seconds=" << r.seconds << '\n'
      << "eigenvalues=";
  put_vector(out, r.eigenvalues);
  out << '\n';
  if (!r.note.empty()) out << "note=" << r.note << '\n';
  out << "candidates=" << r.all.size() << '\n';
  if (!r.all.empty()) out << "best=" << r.best_index + 1 << '\n';
  for (std::size_t n = 0; n < r.all.size(); ++n) {
    const Candidate& c = r.all[n];
    const std::string p = "candidate." + std::to_string(n + 1) + ".";
    out << p << "a=";
    put_vector(out, c.completion.a);
    out << '\n' << p << "b=";
    put_vector(out, c.completion.b);
    out << '\n' << p << "c=";
    put_vector(out, c.completion.c);
    out << '\n' << p << "weight=";
    put_opt(out, c.pair.weight);
    out << '\n' << p << "f=" << c.f_value << '\n' << p << "err_abs=" << c.completion.err_abs << '\n'
        << p << "err_rel=";
    put_opt(out, c.completion.err_rel);
    out << '\n'
        << p << "singular=" << (c.verdict.singular ? "true" : "false") << '\n'
        << p << "retrievable=" << (c.verdict.retrievable ? "true" : "false") << '\n'
        << p << "reason=" << reason_name(c.verdict.reason) << '\n'
        << p << "witness_slice=";
    if (c.verdict.witness_slice) {
      out << *c.verdict.witness_slice + 1;
    } else {
      out << "none";
    }
    out << '\n';
  }
  if (diag) {
    out << "noise_norm=" << diag->noise_norm << '\n' << "err_rat=";
    put_opt(out, diag->err_rat);
    out << '\n'
        << "full_distance=" << diag->full_distance << '\n'
        << "identifiable=" << (diag->identifiability.pass ? "true" : "false") << '\n'
        << "z_rank=" << diag->identifiability.z_rank << '\n'
        << "z_required=" << diag->identifiability.required << '\n'
        << "z_sigma_min=" << diag->identifiability.smallest_singular_value << '\n';
  }
  out.precision(old_precision);
}

void write_factors_csv(std::ostream& out, const CompletionResult& r) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "candidate,factor,index,value\n";
  for (std::size_t n = 0; n < r.all.size(); ++n) {
    const RankOneCompletion& c = r.all[n].completion;
    const std::pair<char, const Vector*> factors[] = {{'a', &c.a}, {'b', &c.b}, {'c', &c.c}};
    for (const auto& [name, v] : factors) {
      for (Eigen::Index i = 0; i < v->size(); ++i) {
        out << n + 1 << ',' << name << ',' << i + 1 << ',' << (*v)[i] << '\n';
      }
    }
  }
  out.precision(old_precision);
}

void write_truth(std::ostream& out, const GroundTruth& truth) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "a ";
  put_vector(out, truth.a);
  out << "\nb ";
  put_vector(out, truth.b);
  out << "\nc ";
  put_vector(out, truth.c);
  out << "\nnoise_norm " << truth.noise_norm << '\n';
  out.precision(old_precision);
}

GroundTruth parse_truth(std::istream& in, const std::string& source) {
  GroundTruth t;
  bool seen[4] = {false, false, false, false};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<double> vals;
    double v = 0.0;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof()) throw ParseError(source, line_no, "non-numeric value");
    const Vector vec = Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    int slot = -1;
    if (key == "a") {
      t.a = vec;
      slot = 0;
    } else if (key == "b") {
      t.b = vec;
      slot = 1;
    } else if (key == "c") {
      t.c = vec;
      slot = 2;
    } else if (key == "noise_norm") {
      if (vals.size() != 1) throw ParseError(source, line_no, "noise_norm takes one value");
      t.noise_norm = vals[0];
      slot = 3;
    } else {
      throw ParseError(source, line_no, "unknown key '" + key + "'");
    }
    if (seen[slot]) throw ParseError(source, line_no, "duplicate key '" + key + "'");
    seen[slot] = true;
  }
  for (int s = 0; s < 3; ++s) {
    if (!seen[s]) throw ParseError(source, line_no, "truth file lacks one of a, b, c");
  }
  return t;
}

GroundTruth load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_truth(in, path.string());
}

}  // namespace r1tc
