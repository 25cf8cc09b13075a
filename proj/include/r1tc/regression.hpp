// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "r1tc/completion.hpp"

namespace r1tc {

struct Clause {
  std::string what;
  bool pass = false;
  std::string observed;
};

struct CheckOutcome {
  int id = 0;
  std::string name;
  std::vector<Clause> clauses;
  double seconds = 0.0;

  bool pass() const;
};

/// max_i |u_i - v_i| minimized over the sign of v.
double distance_up_to_sign(const Vector& u, const Vector& v);

CheckOutcome check_example51(const CompletionConfig& cfg = {});
CheckOutcome check_example53(const CompletionConfig& cfg = {});
CheckOutcome check_example54(const CompletionConfig& cfg = {});
CheckOutcome check_example55(const CompletionConfig& cfg = {});
/// Twenty regenerated noise draws with sigma = 1e-4.
CheckOutcome check_example52(const CompletionConfig& cfg = {}, int seeds = 20);

/// The five fixture checks in order 5.1, 5.3, 5.4, 5.5, 5.2 (ids 1 to 5).
std::vector<CheckOutcome> run_regression(const CompletionConfig& cfg = {});

/// "PASS|FAIL <id> <name>" followed by one indented line per clause.
void print_outcome(std::ostream& out, const CheckOutcome& outcome);

}  // namespace r1tc
