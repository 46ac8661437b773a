#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/weights.hpp"

namespace plsat {

// 2^k clauses on one k-variable set realizing every sign pattern: an
// immediate unsatisfiability witness.
struct TrivialCoreWitness {
  std::vector<int32_t> varset;      // sorted, size k
  std::vector<uint32_t> clause_ids; // one clause per sign pattern, 2^k of them
};

// Groups clauses by variable set and returns the first set whose group
// covers all 2^k sign patterns. O(m k) expected plus 2^k per group.
std::optional<TrivialCoreWitness> find_trivial_core(const Formula& f);

// Independent re-check from raw clause data; discovery is not trusted.
bool verify_trivial_core(const Formula& f, const TrivialCoreWitness& w);

struct DegreeReport {
  std::vector<std::size_t> count_at_least;  // [d] = N_{>=d}, index 0 unused
  double slope = 0.0;       // least-squares slope of log N_{>=d} vs log d
  std::size_t d_min = 0, d_max = 0;  // fit window actually used
};

// Occurrence counts (positive plus negative) per variable and the log-log
// tail slope over [d_min, d_max]. Degrees with N_{>=d} = 0 are excluded from
// the fit; an empty fit window is an error.
DegreeReport degree_report(const Formula& f, std::size_t d_min,
                           std::size_t d_max);

// Number of clauses whose variable set is exactly the k heaviest variables.
std::size_t top_k_cooccurrence(const Formula& f, const WeightSequence& ws);

}  // namespace plsat
