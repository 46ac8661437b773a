#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace plsat {

// Literal as a signed DIMACS-style integer: +v or -v, v in [1, n].
struct Lit {
  int32_t v = 0;  // never 0

  int32_t var() const { return v < 0 ? -v : v; }
  bool negated() const { return v < 0; }
};

inline bool operator==(Lit a, Lit b) { return a.v == b.v; }

// Canonical form: variables pairwise distinct, sorted ascending by index.
struct Clause {
  std::vector<Lit> lits;

  std::size_t size() const { return lits.size(); }
};

inline bool operator==(const Clause& a, const Clause& b) {
  return a.lits == b.lits;
}

struct Provenance {
  std::string generator;  // e.g. "plsat 1.0"
  std::string model;      // e.g. "concrete beta=2.75" or "uniform"
  uint64_t seed = 0;
  bool present = false;
};

struct Formula {
  std::size_t n = 0;
  std::size_t k = 0;  // declared clause width (0 = mixed/unknown)
  std::vector<Clause> clauses;
  Provenance prov;

  std::size_t m() const { return clauses.size(); }
};

inline bool operator==(const Formula& a, const Formula& b) {
  return a.n == b.n && a.k == b.k && a.clauses == b.clauses;
}

// Sorts by variable index and rejects duplicate variables.
void canonicalize(Clause& c);

// assignment[i] is the value of variable i+1
bool satisfies(const Formula& f, const std::vector<bool>& assignment);

inline bool clause_satisfied(const Clause& c,
                             const std::vector<bool>& assignment) {
  for (Lit l : c.lits) {
    bool val = assignment[std::size_t(l.var()) - 1];
    if (l.negated() ? !val : val) return true;
  }
  return false;
}

}  // namespace plsat
