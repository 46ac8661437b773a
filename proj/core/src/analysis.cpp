#include "plsat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace plsat {

namespace {

uint64_t varset_hash(const Clause& c) {
  uint64_t h = 1469598103934665603ULL;
  for (Lit l : c.lits) {
    h ^= uint64_t(uint32_t(l.var()));
    h *= 1099511628211ULL;
  }
  return h;
}

bool same_varset(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.lits[i].var() != b.lits[i].var()) return false;
  return true;
}

// bit t set = literal on the t-th (smallest-index) variable is negated
uint32_t sign_pattern(const Clause& c) {
  uint32_t pat = 0;
  for (std::size_t t = 0; t < c.size(); ++t)
    if (c.lits[t].negated()) pat |= uint32_t(1) << t;
  return pat;
}

}  // namespace

std::optional<TrivialCoreWitness> find_trivial_core(const Formula& f) {
  if (f.clauses.empty()) return std::nullopt;
  const std::size_t k = f.clauses.front().size();
  if (k > 20) return std::nullopt;  // 2^k bookkeeping explodes past this
  const uint32_t patterns = uint32_t(1) << k;
  if (f.m() < patterns) return std::nullopt;

  // pass 1: clauses per variable set; only sets with >= 2^k clauses can
  // possibly cover every sign pattern
  struct Group {
    uint32_t first_clause;
    uint32_t count = 0;
    uint32_t candidate = UINT32_MAX;  // index into the tables below
  };
  std::unordered_map<uint64_t, std::vector<Group>> groups;
  groups.reserve(f.m() * 2);

  auto find_group = [&](const Clause& c) -> Group& {
    auto& bucket = groups[varset_hash(c)];
    for (Group& g : bucket)
      if (same_varset(f.clauses[g.first_clause], c)) return g;
    bucket.push_back(Group{0, 0, UINT32_MAX});
    return bucket.back();
  };

  for (std::size_t j = 0; j < f.m(); ++j) {
    const Clause& c = f.clauses[j];
    if (c.size() != k) continue;  // witness needs a fixed width
    Group& g = find_group(c);
    if (g.count == 0) g.first_clause = uint32_t(j);
    ++g.count;
  }

  // pass 2: pattern tables only for the candidates
  std::vector<std::vector<uint32_t>> tables;
  std::vector<uint32_t> seen_cnt, completed_at;
  for (std::size_t j = 0; j < f.m(); ++j) {
    const Clause& c = f.clauses[j];
    if (c.size() != k) continue;
    Group& g = find_group(c);
    if (g.count < patterns) continue;
    if (g.candidate == UINT32_MAX) {
      g.candidate = uint32_t(tables.size());
      tables.emplace_back(patterns, UINT32_MAX);
      seen_cnt.push_back(0);
      completed_at.push_back(UINT32_MAX);
    }
    auto& table = tables[g.candidate];
    uint32_t pat = sign_pattern(c);
    if (table[pat] == UINT32_MAX) {
      table[pat] = uint32_t(j);
      if (++seen_cnt[g.candidate] == patterns &&
          completed_at[g.candidate] == UINT32_MAX)
        completed_at[g.candidate] = uint32_t(j);
    }
  }

  // the witness whose coverage completes earliest in clause order
  uint32_t best = UINT32_MAX, best_at = UINT32_MAX;
  for (uint32_t t = 0; t < tables.size(); ++t) {
    if (completed_at[t] < best_at) {
      best_at = completed_at[t];
      best = t;
    }
  }
  if (best == UINT32_MAX) return std::nullopt;

  TrivialCoreWitness w;
  for (Lit l : f.clauses[tables[best][0]].lits) w.varset.push_back(l.var());
  w.clause_ids = tables[best];
  return w;
}

bool verify_trivial_core(const Formula& f, const TrivialCoreWitness& w) {
  const std::size_t k = w.varset.size();
  if (k == 0 || k > 20) return false;
  const std::size_t patterns = std::size_t(1) << k;
  if (w.clause_ids.size() != patterns) return false;

  std::vector<int32_t> vs = w.varset;
  std::sort(vs.begin(), vs.end());

  std::vector<bool> seen(patterns, false);
  for (uint32_t id : w.clause_ids) {
    if (id >= f.m()) return false;
    const Clause& c = f.clauses[id];
    if (c.size() != k) return false;
    uint32_t pat = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (c.lits[t].var() != vs[t]) return false;
      if (c.lits[t].negated()) pat |= uint32_t(1) << t;
    }
    seen[pat] = true;
  }
  for (bool b : seen)
    if (!b) return false;
  return true;
}

DegreeReport degree_report(const Formula& f, std::size_t d_min,
                           std::size_t d_max) {
  if (d_min < 1 || d_min >= d_max)
    throw std::invalid_argument("degree_report: need 1 <= d_min < d_max");

  std::vector<std::size_t> occ(f.n, 0);
  for (const Clause& c : f.clauses)
    for (Lit l : c.lits) ++occ[std::size_t(l.var()) - 1];

  std::size_t max_deg = 0;
  for (std::size_t o : occ) max_deg = std::max(max_deg, o);

  DegreeReport rep;
  rep.count_at_least.assign(std::max(max_deg, d_max) + 2, 0);
  for (std::size_t o : occ)
    if (o > 0) ++rep.count_at_least[o];
  // suffix-sum histogram into N_{>=d}
  for (std::size_t d = rep.count_at_least.size() - 1; d-- > 1;)
    rep.count_at_least[d] += rep.count_at_least[d + 1];
  rep.count_at_least[0] = 0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t pts = 0;
  for (std::size_t d = d_min; d <= d_max; ++d) {
    std::size_t c = d < rep.count_at_least.size() ? rep.count_at_least[d] : 0;
    if (c == 0) continue;
    double x = std::log(double(d)), y = std::log(double(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  if (pts < 2)
    throw std::invalid_argument(
        "degree_report: fewer than two nonzero degrees in the fit window");
  double denom = double(pts) * sxx - sx * sx;
  rep.slope = (double(pts) * sxy - sx * sy) / denom;
  rep.d_min = d_min;
  rep.d_max = d_max;
  return rep;
}

std::size_t top_k_cooccurrence(const Formula& f, const WeightSequence& ws) {
  if (f.clauses.empty()) return 0;
  const std::size_t k = f.clauses.front().size();
  if (ws.n < f.n)
    throw std::invalid_argument("top_k_cooccurrence: weights do not cover n");
  // weights are non-decreasing by index, so the k heaviest variables are the
  // k highest indices
  const int32_t lowest = int32_t(f.n - k) + 1;
  std::size_t count = 0;
  for (const Clause& c : f.clauses) {
    if (c.size() != k) continue;
    bool all_top = true;
    for (Lit l : c.lits) {
      if (l.var() < lowest) {
        all_top = false;
        break;
      }
    }
    if (all_top) ++count;
  }
  return count;
}

}  // namespace plsat
