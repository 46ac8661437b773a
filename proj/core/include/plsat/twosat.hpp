#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/weights.hpp"

namespace plsat {

enum class Status { SAT, UNSAT, UNKNOWN, TIMEOUT };

enum class Reason {
  TwoSatSCC,
  TrivialCore,
  Exhaustive,
  ExternalSolver,
  ShrunkUnsat,
};

struct Certificate {
  Status status = Status::UNKNOWN;
  std::optional<std::vector<bool>> assignment;  // index i = variable i+1
  Reason reason = Reason::TwoSatSCC;
};

const char* to_string(Status s);
const char* to_string(Reason r);

// Replace every clause by its two smallest-weight literals (ties broken by
// lowest variable index), signs preserved. Output has k=2, same n, same m.
Formula shrink(const Formula& f, const WeightSequence& ws);

// Linear-time 2-SAT via SCCs of the implication graph. SAT certificates are
// verified before being returned; variables absent from the formula are
// assigned false.
Certificate solve_2sat(const Formula& f);

// shrink + solve_2sat. A satisfying assignment of the shrunk formula also
// satisfies the original (each original clause contains its shrunk pair), so
// SAT transfers; an unsatisfiable shrunk formula proves nothing, hence
// UNKNOWN with reason ShrunkUnsat.
Certificate certify_by_shrinking(const Formula& f, const WeightSequence& ws);

// Exact distribution of the shrunk pair {|l1|, |l2|} over variable pairs,
// computed from the clause sampling law by suffix DP. Cutoffs keep the
// tabulation cheap: n <= 200, 2 <= k <= 4.
// Entry (i, j), 1 <= i < j <= n, lives at flat index (i-1)*n + (j-1).
struct PairLaw {
  std::size_t n = 0;
  std::vector<double> prob;  // row-major upper triangle, zero elsewhere

  double at(std::size_t i, std::size_t j) const {  // 1-based, i < j
    return prob[(i - 1) * n + (j - 1)];
  }
};

PairLaw exact_shrunk_pair_law(const VariableDistribution& vd, std::size_t k);

struct PairLawReport {
  std::size_t trials = 0;
  double max_sigma = 0.0;     // worst |empirical - exact| in sigma units
  std::size_t worst_i = 0, worst_j = 0;
  std::size_t impossible_hits = 0;  // samples landing on zero-probability pairs
};

// Samples `trials` clauses, shrinks each, and compares the empirical pair
// frequencies against exact_shrunk_pair_law.
PairLawReport shrunk_pair_distribution_check(const VariableDistribution& vd,
                                             const WeightSequence& ws,
                                             std::size_t k, std::size_t trials,
                                             uint64_t seed);

}  // namespace plsat
