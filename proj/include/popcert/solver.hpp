// popcert: embedded deterministic CDCL SAT solver.
#pragma once

#include "popcert/formula.hpp"

namespace popcert {

enum class SolveStatus { Sat, Unsat, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::vector<bool> model;  // indexed by variable, size num_vars + 1; Sat only
  long long conflicts = 0;
  long long decisions = 0;
  long long propagations = 0;
};

// Conflict-driven clause learning with two watched literals and first-UIP
// clauses.  Decisions take the lowest-indexed unassigned variable, false
// first, so runs are reproducible.  A nonnegative conflict budget turns an
// overlong search into Unknown.  Satisfying assignments are re-checked
// against the input before being returned.
SolveResult solve_cnf(const Cnf& cnf, long long conflict_budget = -1);

}  // namespace popcert
