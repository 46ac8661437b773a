#include "plsat/sampler.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace plsat {

AliasTable::AliasTable(const std::vector<double>& p) {
  const std::size_t n = p.size();
  if (n == 0) throw std::invalid_argument("AliasTable: empty distribution");
  prob_.resize(n);
  alias_.resize(n);

  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = p[i] * double(n);

  std::vector<std::size_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(i);

  while (!small.empty() && !large.empty()) {
    std::size_t s = small.back();
    small.pop_back();
    std::size_t l = large.back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // leftovers are 1.0 up to rounding
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::size_t i : small) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

namespace {

// One clause from its own substream. Returns the attempt count.
uint64_t draw_clause(const AliasTable& table, std::size_t k, uint64_t substream,
                     Clause& out) {
  Rng rng(substream);
  uint64_t attempts = 0;
  thread_local std::vector<int32_t> vars;
  vars.resize(k);
  for (;;) {
    ++attempts;
    bool collision = false;
    for (std::size_t t = 0; t < k; ++t) {
      int32_t v = int32_t(table.sample(rng)) + 1;
      for (std::size_t u = 0; u < t; ++u) {
        if (vars[u] == v) {
          collision = true;
          break;
        }
      }
      if (collision) break;
      vars[t] = v;
    }
    if (!collision) break;
  }
  out.lits.resize(k);
  for (std::size_t t = 0; t < k; ++t)
    out.lits[t].v = rng.coin() ? -vars[t] : vars[t];
  canonicalize(out);
  return attempts;
}

}  // namespace

std::pair<Formula, SampleStats> sample_formula(const VariableDistribution& vd,
                                               std::size_t m, std::size_t k,
                                               uint64_t seed,
                                               unsigned n_threads) {
  const std::size_t n = vd.n();
  if (k < 1) throw std::invalid_argument("sample_formula: k must be >= 1");
  if (k > n) throw std::invalid_argument("sample_formula: k > n");

  const double collision_bound = 0.5 * double(k) * double(k) * vd.l2sq;
  if (collision_bound >= 0.99) {
    std::ostringstream msg;
    msg << "sample_formula: collision bound (1/2)k^2*||p||^2 = "
        << collision_bound << " >= 0.99, rejection loop would thrash";
    throw std::invalid_argument(msg.str());
  }

  Formula f;
  f.n = n;
  f.k = k;
  f.clauses.resize(m);

  AliasTable table(vd.p);

  SampleStats stats;
  if (m == 0) return {std::move(f), stats};

  unsigned workers = n_threads == 0 ? 1 : n_threads;
  if (workers > m) workers = unsigned(m);

  if (workers == 1) {
    uint64_t attempts = 0;
    for (std::size_t j = 0; j < m; ++j)
      attempts += draw_clause(table, k, derive_stream(seed, j), f.clauses[j]);
    stats.attempts = attempts;
    stats.rejections = attempts - m;
    return {std::move(f), stats};
  }

  std::vector<uint64_t> part_attempts(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      uint64_t acc = 0;
      for (std::size_t j = w; j < m; j += workers)
        acc += draw_clause(table, k, derive_stream(seed, j), f.clauses[j]);
      part_attempts[w] = acc;
    });
  }
  for (auto& t : pool) t.join();
  for (uint64_t a : part_attempts) stats.attempts += a;
  stats.rejections = stats.attempts - m;
  return {std::move(f), stats};
}

double elementary_symmetric(const std::vector<double>& p, std::size_t k) {
  if (k > p.size()) return 0.0;
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (double pi : p) {
    std::size_t top = k;
    for (std::size_t t = top; t >= 1; --t) e[t] += e[t - 1] * pi;
  }
  return e[k];
}

double clause_probability(const VariableDistribution& vd, const Clause& c) {
  const std::size_t k = c.size();
  if (k == 0) throw std::invalid_argument("clause_probability: empty clause");
  if (k > 12)
    throw std::invalid_argument(
        "clause_probability: exact denominator limited to k <= 12");
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && c.lits[i].var() <= c.lits[i - 1].var())
      throw std::invalid_argument("clause_probability: clause not canonical");
    if (c.lits[i].var() < 1 || std::size_t(c.lits[i].var()) > vd.n())
      throw std::invalid_argument("clause_probability: variable out of range");
  }
  double num = 1.0;
  for (Lit l : c.lits) num *= vd.p[std::size_t(l.var()) - 1];
  double denom = std::ldexp(elementary_symmetric(vd.p, k), int(k));  // 2^k e_k
  return num / denom;
}

double empirical_clause_frequency(const VariableDistribution& vd,
                                  const Clause& c, std::size_t trials,
                                  uint64_t seed) {
  if (trials == 0)
    throw std::invalid_argument("empirical_clause_frequency: trials >= 1");
  const std::size_t k = c.size();
  AliasTable table(vd.p);
  Clause sample;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    draw_clause(table, k, derive_stream(seed, t), sample);
    if (sample == c) ++hits;
  }
  return double(hits) / double(trials);
}

}  // namespace plsat
