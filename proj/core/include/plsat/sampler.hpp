#pragma once

#include <cstdint>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/rng.hpp"
#include "plsat/weights.hpp"

namespace plsat {

// Walker alias table: O(n) build, O(1) per draw, exact up to double rounding.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& p);

  std::size_t sample(Rng& rng) const {
    std::size_t i = rng.bounded(prob_.size());
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }

  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

struct SampleStats {
  uint64_t attempts = 0;    // k-draw attempts, including rejected ones
  uint64_t rejections = 0;  // attempts discarded due to a variable collision
};

// Draw m clauses of width k: k i.i.d. variables from vd via the alias table,
// the whole tuple redrawn on any collision, then each literal negated with
// probability 1/2. Clause j depends only on (seed, j), so the result is
// bit-identical for any n_threads.
std::pair<Formula, SampleStats> sample_formula(const VariableDistribution& vd,
                                               std::size_t m, std::size_t k,
                                               uint64_t seed,
                                               unsigned n_threads = 1);

// k-th elementary symmetric polynomial e_k(p) by the standard O(nk) DP.
double elementary_symmetric(const std::vector<double>& p, std::size_t k);

// Exact probability of drawing clause c: prod(p_|l|) / (2^k * e_k(p)).
// Requires canonical c and k <= 12 (beyond that the DP loses precision).
double clause_probability(const VariableDistribution& vd, const Clause& c);

// Fraction of `trials` single-clause samples canonically equal to c.
double empirical_clause_frequency(const VariableDistribution& vd,
                                  const Clause& c, std::size_t trials,
                                  uint64_t seed);

}  // namespace plsat
