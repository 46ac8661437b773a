#include "plsat/twosat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plsat/rng.hpp"
#include "plsat/sampler.hpp"

namespace plsat {

const char* to_string(Status s) {
  switch (s) {
    case Status::SAT: return "SAT";
    case Status::UNSAT: return "UNSAT";
    case Status::UNKNOWN: return "UNKNOWN";
    case Status::TIMEOUT: return "TIMEOUT";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::TwoSatSCC: return "TwoSatSCC";
    case Reason::TrivialCore: return "TrivialCore";
    case Reason::Exhaustive: return "Exhaustive";
    case Reason::ExternalSolver: return "ExternalSolver";
    case Reason::ShrunkUnsat: return "ShrunkUnsat";
  }
  return "?";
}

namespace {

// literal -> node: positive literal of v at 2(v-1), negative at 2(v-1)+1
inline std::size_t node_of(Lit l) {
  return 2 * (std::size_t(l.var()) - 1) + (l.negated() ? 1 : 0);
}

inline std::size_t negate_node(std::size_t u) { return u ^ 1; }

// Pick the two smallest (weight, index) literals of c. With weights
// non-decreasing by variable index this is the lexicographic variable order,
// but the explicit argmin keeps the tie-break visible and tolerates
// non-canonical input.
void two_smallest(const Clause& c, const WeightSequence& ws, Lit& l1,
                  Lit& l2) {
  auto lighter = [&](Lit a, Lit b) {
    double wa = ws.w(std::size_t(a.var()));
    double wb = ws.w(std::size_t(b.var()));
    if (wa != wb) return wa < wb;
    return a.var() < b.var();
  };
  std::size_t best = 0;
  for (std::size_t t = 1; t < c.size(); ++t)
    if (lighter(c.lits[t], c.lits[best])) best = t;
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (t == best) continue;
    if (lighter(c.lits[t], c.lits[second])) second = t;
  }
  l1 = c.lits[best];
  l2 = c.lits[second];
}

}  // namespace

Formula shrink(const Formula& f, const WeightSequence& ws) {
  if (f.k < 2 && f.k != 0)
    throw std::invalid_argument("shrink: requires clause width >= 2");
  if (ws.n < f.n)
    throw std::invalid_argument("shrink: weight sequence does not cover n");
  Formula out;
  out.n = f.n;
  out.k = 2;
  out.prov = f.prov;
  out.clauses.resize(f.m());
  for (std::size_t j = 0; j < f.m(); ++j) {
    const Clause& c = f.clauses[j];
    if (c.size() < 2)
      throw std::invalid_argument("shrink: clause narrower than 2");
    Lit l1, l2;
    two_smallest(c, ws, l1, l2);
    Clause& o = out.clauses[j];
    o.lits = {l1, l2};
    if (o.lits[0].var() > o.lits[1].var()) std::swap(o.lits[0], o.lits[1]);
  }
  return out;
}

Certificate solve_2sat(const Formula& f) {
  for (const Clause& c : f.clauses)
    if (c.size() != 2)
      throw std::invalid_argument("solve_2sat: clause width must be 2");

  const std::size_t nodes = 2 * f.n;

  // CSR adjacency: clause (a | b) induces ~a -> b and ~b -> a
  std::vector<uint32_t> deg(nodes + 1, 0);
  for (const Clause& c : f.clauses) {
    ++deg[negate_node(node_of(c.lits[0])) + 1];
    ++deg[negate_node(node_of(c.lits[1])) + 1];
  }
  for (std::size_t u = 0; u < nodes; ++u) deg[u + 1] += deg[u];
  std::vector<uint32_t> adj(f.m() * 2);
  {
    std::vector<uint32_t> fill(deg.begin(), deg.end() - 1);
    for (const Clause& c : f.clauses) {
      std::size_t a = node_of(c.lits[0]), b = node_of(c.lits[1]);
      adj[fill[negate_node(a)]++] = uint32_t(b);
      adj[fill[negate_node(b)]++] = uint32_t(a);
    }
  }

  // Tarjan, iterative. Components are numbered in completion order, which is
  // reverse topological on the condensation.
  constexpr uint32_t kUnvisited = 0;
  std::vector<uint32_t> index(nodes, kUnvisited), low(nodes, 0),
      comp(nodes, UINT32_MAX);
  std::vector<bool> onstack(nodes, false);
  std::vector<uint32_t> scc_stack;
  uint32_t next_index = 1, next_comp = 0;

  struct Frame {
    uint32_t u;
    uint32_t edge;  // position within u's adjacency slice
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < nodes; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({uint32_t(root), 0});
    while (!call.empty()) {
      Frame& fr = call.back();
      uint32_t u = fr.u;
      if (fr.edge == 0) {
        index[u] = low[u] = next_index++;
        scc_stack.push_back(u);
        onstack[u] = true;
      }
      bool descended = false;
      while (fr.edge < deg[u + 1] - deg[u]) {
        uint32_t v = adj[deg[u] + fr.edge];
        ++fr.edge;
        if (index[v] == kUnvisited) {
          call.push_back({v, 0});
          descended = true;
          break;
        }
        if (onstack[v]) low[u] = std::min(low[u], index[v]);
      }
      if (descended) continue;
      if (low[u] == index[u]) {
        for (;;) {
          uint32_t w = scc_stack.back();
          scc_stack.pop_back();
          onstack[w] = false;
          comp[w] = next_comp;
          if (w == u) break;
        }
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        uint32_t parent = call.back().u;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }

  std::vector<bool> occurs(f.n, false);
  for (const Clause& c : f.clauses) {
    occurs[std::size_t(c.lits[0].var()) - 1] = true;
    occurs[std::size_t(c.lits[1].var()) - 1] = true;
  }

  for (std::size_t v = 0; v < f.n; ++v) {
    if (occurs[v] && comp[2 * v] == comp[2 * v + 1]) {
      Certificate cert;
      cert.status = Status::UNSAT;
      cert.reason = Reason::TwoSatSCC;
      return cert;
    }
  }

  // smaller component id = later in topological order = safe to assert
  std::vector<bool> assignment(f.n, false);
  for (std::size_t v = 0; v < f.n; ++v)
    assignment[v] = occurs[v] && comp[2 * v] < comp[2 * v + 1];

  if (!satisfies(f, assignment))
    throw std::logic_error("solve_2sat: produced assignment fails verification");

  Certificate cert;
  cert.status = Status::SAT;
  cert.assignment = std::move(assignment);
  cert.reason = Reason::TwoSatSCC;
  return cert;
}

Certificate certify_by_shrinking(const Formula& f, const WeightSequence& ws) {
  Formula two = shrink(f, ws);
  Certificate inner = solve_2sat(two);
  if (inner.status == Status::UNSAT) {
    Certificate cert;
    cert.status = Status::UNKNOWN;
    cert.reason = Reason::ShrunkUnsat;
    return cert;
  }
  Certificate cert;
  cert.status = Status::SAT;
  cert.assignment = std::move(inner.assignment);
  cert.reason = Reason::TwoSatSCC;
  if (!satisfies(f, *cert.assignment))
    throw std::logic_error(
        "certify_by_shrinking: assignment fails against the original formula");
  return cert;
}

PairLaw exact_shrunk_pair_law(const VariableDistribution& vd, std::size_t k) {
  const std::size_t n = vd.n();
  if (n > 200)
    throw std::invalid_argument("exact_shrunk_pair_law: n > 200 cutoff");
  if (k < 2 || k > 4)
    throw std::invalid_argument("exact_shrunk_pair_law: k outside [2, 4]");
  if (k > n) throw std::invalid_argument("exact_shrunk_pair_law: k > n");

  const double ek = elementary_symmetric(vd.p, k);

  // Variables are already in (weight, index) order by the WeightSequence
  // invariant, so the shrunk pair {i, j}, i < j, needs the other k-2 drawn
  // variables to come from indices > j:
  //   P[{i,j}] = p_i p_j e_{k-2}(p_{j+1..n}) / e_k(p)
  PairLaw law;
  law.n = n;
  law.prob.assign(n * n, 0.0);

  // esuf holds e_0..e_{k-2} of the suffix strictly after position j (0-based)
  std::vector<double> esuf(k - 1, 0.0);
  esuf[0] = 1.0;
  for (std::size_t j = n; j-- > 1;) {
    // at this point esuf describes indices > j
    double ekm2 = esuf[k - 2];
    if (ekm2 != 0.0) {
      for (std::size_t i = 0; i < j; ++i)
        law.prob[i * n + j] = vd.p[i] * vd.p[j] * ekm2 / ek;
    }
    // extend the suffix to include position j
    for (std::size_t t = k - 2; t >= 1; --t)
      esuf[t] += esuf[t - 1] * vd.p[j];
  }
  return law;
}

PairLawReport shrunk_pair_distribution_check(const VariableDistribution& vd,
                                             const WeightSequence& ws,
                                             std::size_t k, std::size_t trials,
                                             uint64_t seed) {
  if (trials < 10000)
    throw std::invalid_argument(
        "shrunk_pair_distribution_check: need trials >= 10^4");
  PairLaw law = exact_shrunk_pair_law(vd, k);
  const std::size_t n = vd.n();

  AliasTable table(vd.p);
  std::vector<uint64_t> hits(n * n, 0);
  Clause scratch;
  scratch.lits.resize(k);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_stream(seed, t));
    for (;;) {
      bool collision = false;
      for (std::size_t a = 0; a < k; ++a) {
        int32_t v = int32_t(table.sample(rng)) + 1;
        for (std::size_t b = 0; b < a; ++b)
          if (scratch.lits[b].var() == v) { collision = true; break; }
        if (collision) break;
        scratch.lits[a].v = v;  // signs are irrelevant to the pair law
      }
      if (!collision) break;
    }
    Lit l1, l2;
    two_smallest(scratch, ws, l1, l2);
    std::size_t i = std::size_t(std::min(l1.var(), l2.var()));
    std::size_t j = std::size_t(std::max(l1.var(), l2.var()));
    ++hits[(i - 1) * n + (j - 1)];
  }

  PairLawReport rep;
  rep.trials = trials;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double P = law.prob[i * n + j];
      uint64_t h = hits[i * n + j];
      if (P == 0.0) {
        rep.impossible_hits += h;
        continue;
      }
      double emp = double(h) / double(trials);
      double sigma = std::sqrt(P * (1.0 - P) / double(trials));
      double dev = std::fabs(emp - P) / sigma;
      if (dev > rep.max_sigma) {
        rep.max_sigma = dev;
        rep.worst_i = i + 1;
        rep.worst_j = j + 1;
      }
    }
  }
  return rep;
}

}  // namespace plsat
