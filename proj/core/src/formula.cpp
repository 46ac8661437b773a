#include "plsat/formula.hpp"

#include <algorithm>

namespace plsat {

void canonicalize(Clause& c) {
  std::sort(c.lits.begin(), c.lits.end(),
            [](Lit a, Lit b) { return a.var() < b.var(); });
  for (std::size_t i = 1; i < c.lits.size(); ++i) {
    if (c.lits[i].var() == c.lits[i - 1].var())
      throw std::invalid_argument("clause: duplicate variable " +
                                  std::to_string(c.lits[i].var()));
  }
  for (Lit l : c.lits) {
    if (l.v == 0) throw std::invalid_argument("clause: zero literal");
  }
}

bool satisfies(const Formula& f, const std::vector<bool>& assignment) {
  if (assignment.size() < f.n) return false;
  for (const Clause& c : f.clauses) {
    if (!clause_satisfied(c, assignment)) return false;
  }
  return true;
}

}  // namespace plsat
