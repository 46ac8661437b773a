#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/twosat.hpp"

namespace plsat {

struct SolveStats {
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  double wall_ms = 0.0;
};

struct SolveOutcome {
  Status status = Status::UNKNOWN;
  std::optional<std::vector<bool>> assignment;
  SolveStats stats;
  std::string note;  // diagnostic for UNKNOWN outcomes from external solvers
};

enum class Branching {
  HighestIndex,  // highest variable index first; equals highest weight under
                 // the non-decreasing weight layout
  LowestIndex,
};

struct SolveOptions {
  uint64_t max_decisions = 0;  // 0 = unlimited
  int64_t wall_ms = 0;         // 0 = unlimited
  Branching branching = Branching::HighestIndex;
  bool pure_literal = true;  // eliminate pure literals to fixpoint at the root
};

// Complete DPLL: two-watched-literal unit propagation, chronological
// backtracking. Exceeding the budget yields status TIMEOUT. SAT assignments
// are verified before being returned; UNSAT means the search was exhaustive.
SolveOutcome solve_complete(const Formula& f, const SolveOptions& opts = {});

// Run an external DIMACS solver. The command template gets "{in}" replaced by
// the CNF path and "{out}" (if present) by a result path; status is read from
// stdout lines "s SATISFIABLE" / "s UNSATISFIABLE" with "v" model lines, or
// from the result file ("SAT"/"UNSAT" first line). Models are verified before
// being trusted; an unverifiable model throws. No parseable status maps to
// TIMEOUT (when the deadline was hit) or UNKNOWN with a stderr excerpt.
SolveOutcome solve_external(const Formula& f, const std::string& solver_cmd,
                            int64_t wall_ms);

}  // namespace plsat
