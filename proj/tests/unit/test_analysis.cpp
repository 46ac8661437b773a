#include "doctest.h"

#include <plsat/analysis.hpp>
#include <plsat/formula.hpp>
#include <plsat/rng.hpp>
#include <plsat/sampler.hpp>
#include <plsat/solvers.hpp>
#include <plsat/weights.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace plsat;

namespace {

Clause mk(std::initializer_list<int32_t> ls) {
  Clause c;
  for (int32_t v : ls) c.lits.push_back({v});
  return c;
}

// all 2^k sign patterns over the given sorted variable set
std::vector<Clause> full_core(std::initializer_list<int32_t> vars) {
  std::vector<int32_t> vs(vars);
  std::vector<Clause> out;
  for (uint32_t pat = 0; pat < (uint32_t(1) << vs.size()); ++pat) {
    Clause c;
    for (std::size_t t = 0; t < vs.size(); ++t)
      c.lits.push_back({(pat >> t) & 1 ? -vs[t] : vs[t]});
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("finds a bare full-pattern core") {
  Formula f;
  f.n = 2;
  f.k = 2;
  for (auto& c : full_core({1, 2})) f.clauses.push_back(c);
  auto w = find_trivial_core(f);
  REQUIRE(w.has_value());
  CHECK(w->varset == std::vector<int32_t>{1, 2});
  CHECK(w->clause_ids.size() == 4);
  CHECK(verify_trivial_core(f, *w));

  auto out = solve_complete(f);
  CHECK(out.status == Status::UNSAT);
}

TEST_CASE("no witness when a pattern is missing") {
  Formula f;
  f.n = 3;
  f.k = 2;
  auto core = full_core({1, 2});
  core.pop_back();  // drop one pattern
  for (auto& c : core) f.clauses.push_back(c);
  f.clauses.push_back(mk({1, 3}));  // keep m >= 2^k
  CHECK(!find_trivial_core(f).has_value());
}

TEST_CASE("no witness when m < 2^k") {
  Formula f;
  f.n = 3;
  f.k = 3;
  f.clauses = {mk({1, 2, 3}), mk({-1, 2, 3})};
  CHECK(!find_trivial_core(f).has_value());
}

TEST_CASE("core embedded in a larger random formula is found") {
  auto vd = distribution(build_concrete(50, 2.5));
  auto [f, st] = sample_formula(vd, 100, 3, 4242);
  auto core = full_core({7, 13, 42});
  // scatter the core through the clause list
  for (std::size_t i = 0; i < core.size(); ++i)
    f.clauses.insert(f.clauses.begin() + 10 + i * 9, core[i]);

  auto w = find_trivial_core(f);
  REQUIRE(w.has_value());
  CHECK(w->varset == std::vector<int32_t>{7, 13, 42});
  CHECK(verify_trivial_core(f, *w));

  auto out = solve_complete(f);
  CHECK(out.status == Status::UNSAT);
}

TEST_CASE("earliest-completing core wins") {
  Formula f;
  f.n = 9;
  f.k = 3;
  for (auto& c : full_core({1, 2, 3})) f.clauses.push_back(c);
  for (auto& c : full_core({4, 5, 6})) f.clauses.push_back(c);
  auto w = find_trivial_core(f);
  REQUIRE(w.has_value());
  CHECK(w->varset == std::vector<int32_t>{1, 2, 3});

  Formula g;
  g.n = 9;
  g.k = 3;
  for (auto& c : full_core({4, 5, 6})) g.clauses.push_back(c);
  for (auto& c : full_core({1, 2, 3})) g.clauses.push_back(c);
  auto wg = find_trivial_core(g);
  REQUIRE(wg.has_value());
  CHECK(wg->varset == std::vector<int32_t>{4, 5, 6});
}

TEST_CASE("verification rejects tampered witnesses") {
  Formula f;
  f.n = 2;
  f.k = 2;
  for (auto& c : full_core({1, 2})) f.clauses.push_back(c);
  auto w = find_trivial_core(f);
  REQUIRE(w.has_value());

  auto dup = *w;
  dup.clause_ids[0] = dup.clause_ids[1];  // pattern 0 now missing
  CHECK(!verify_trivial_core(f, dup));

  auto oob = *w;
  oob.clause_ids[0] = 1000;
  CHECK(!verify_trivial_core(f, oob));

  auto wrong_vars = *w;
  wrong_vars.varset = {1, 3};
  CHECK(!verify_trivial_core(f, wrong_vars));

  auto short_ids = *w;
  short_ids.clause_ids.pop_back();
  CHECK(!verify_trivial_core(f, short_ids));
}

TEST_CASE("width cutoff returns nothing instead of blowing up") {
  Formula f;
  f.n = 30;
  Clause wide;
  for (int32_t v = 1; v <= 25; ++v) wide.lits.push_back({v});
  f.clauses.assign(4, wide);
  f.k = 25;
  CHECK(!find_trivial_core(f).has_value());
}

TEST_CASE("degree report on a hand-built formula") {
  Formula f;
  f.n = 3;
  f.k = 2;
  f.clauses = {mk({1, 2}), mk({1, 3})};
  auto rep = degree_report(f, 1, 2);
  REQUIRE(rep.count_at_least.size() >= 4);
  CHECK(rep.count_at_least[0] == 0);
  CHECK(rep.count_at_least[1] == 3);
  CHECK(rep.count_at_least[2] == 1);
  CHECK(rep.count_at_least[3] == 0);
  // two fit points: (log 1, log 3) and (log 2, log 1)
  CHECK(rep.slope ==
        doctest::Approx(-std::log(3.0) / std::log(2.0)).epsilon(1e-12));
  CHECK(rep.d_min == 1);
  CHECK(rep.d_max == 2);
}

TEST_CASE("degree counts satisfy the occupancy identities") {
  auto vd = distribution(build_concrete(300, 2.6));
  auto [f, st] = sample_formula(vd, 1200, 3, 99);
  auto rep = degree_report(f, 2, 30);

  // N_{>=d} is non-increasing
  for (std::size_t d = 2; d < rep.count_at_least.size(); ++d)
    CHECK(rep.count_at_least[d] <= rep.count_at_least[d - 1]);

  // sum over d >= 1 of N_{>=d} equals total literal occurrences = k m
  std::size_t total = 0;
  for (std::size_t d = 1; d < rep.count_at_least.size(); ++d)
    total += rep.count_at_least[d];
  CHECK(total == 3 * 1200);
}

TEST_CASE("degree report rejects bad windows") {
  Formula f;
  f.n = 2;
  f.k = 2;
  f.clauses = {mk({1, 2})};
  CHECK_THROWS_AS((void)degree_report(f, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)degree_report(f, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)degree_report(f, 7, 9), std::invalid_argument);
}

TEST_CASE("degree tail slope tracks 1 - beta at scale") {
  const double beta = 2.75;
  auto vd = distribution(build_concrete(100000, beta));
  auto [f, st] = sample_formula(vd, 400000, 3, 20240229, 4);
  auto rep = degree_report(f, 5, 50);
  CHECK(std::fabs(rep.slope - (1.0 - beta)) < 0.25);
}

TEST_CASE("top-set co-occurrence counts exactly") {
  auto ws = build_uniform(5);
  Formula f;
  f.n = 5;
  f.k = 2;
  f.clauses = {mk({4, 5}), mk({-4, -5}), mk({3, 5}), mk({1, 2})};
  CHECK(top_k_cooccurrence(f, ws) == 2);

  Formula empty;
  empty.n = 5;
  CHECK(top_k_cooccurrence(empty, ws) == 0);

  Formula g;
  g.n = 5;
  g.k = 2;
  g.clauses = {mk({4, 5})};
  auto short_ws = build_uniform(3);
  CHECK_THROWS_AS((void)top_k_cooccurrence(g, short_ws),
                  std::invalid_argument);
}

TEST_CASE("heavy-triple co-occurrence grows with n at fixed density") {
  const double beta = 2.2, r = 2.0;
  double mean_small = 0, mean_big = 0;
  std::size_t big_nonzero = 0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    {
      auto ws = build_concrete(1000, beta);
      auto vd = distribution(ws);
      auto [f, st] =
          sample_formula(vd, std::size_t(r * 1000), 3, derive_stream(5, s), 4);
      mean_small += double(top_k_cooccurrence(f, ws));
    }
    {
      auto ws = build_concrete(100000, beta);
      auto vd = distribution(ws);
      auto [f, st] = sample_formula(vd, std::size_t(r * 100000), 3,
                                    derive_stream(6, s), 4);
      std::size_t c = top_k_cooccurrence(f, ws);
      mean_big += double(c);
      big_nonzero += c > 0;
    }
  }
  mean_small /= seeds;
  mean_big /= seeds;
  CHECK(mean_big > mean_small);
  CHECK(big_nonzero >= 4);  // expected count ~4 per instance at n = 1e5
}

TEST_SUITE_END();
