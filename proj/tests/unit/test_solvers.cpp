#include "doctest.h"

#include <plsat/formula.hpp>
#include <plsat/rng.hpp>
#include <plsat/sampler.hpp>
#include <plsat/solvers.hpp>
#include <plsat/weights.hpp>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

using namespace plsat;

namespace {

Clause mk(std::initializer_list<int32_t> ls) {
  Clause c;
  for (int32_t v : ls) c.lits.push_back({v});
  return c;
}

bool brute_force_sat(const Formula& f) {
  for (uint32_t mask = 0; mask < (1u << f.n); ++mask) {
    std::vector<bool> a(f.n);
    for (std::size_t i = 0; i < f.n; ++i) a[i] = (mask >> i) & 1;
    if (satisfies(f, a)) return true;
  }
  return false;
}

// pigeonhole principle instance: pigeons into holes, unsat when
// pigeons > holes, no pure literals, hard for chronological DPLL
Formula php(int pigeons, int holes) {
  Formula f;
  f.n = std::size_t(pigeons * holes);
  f.k = 0;
  auto var = [&](int i, int h) { return int32_t((i - 1) * holes + h); };
  for (int i = 1; i <= pigeons; ++i) {
    Clause c;
    for (int h = 1; h <= holes; ++h) c.lits.push_back({var(i, h)});
    f.clauses.push_back(c);
  }
  for (int h = 1; h <= holes; ++h)
    for (int i = 1; i <= pigeons; ++i)
      for (int j = i + 1; j <= pigeons; ++j)
        f.clauses.push_back(mk({-var(i, h), -var(j, h)}));
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("solvers");

TEST_CASE("degenerate formulas") {
  {
    Formula f;
    f.n = 3;
    auto out = solve_complete(f);
    CHECK(out.status == Status::SAT);
    CHECK(out.stats.decisions == 0);
    REQUIRE(out.assignment.has_value());
  }
  {
    Formula f;
    f.n = 1;
    f.clauses = {mk({1}), mk({-1})};
    auto out = solve_complete(f);
    CHECK(out.status == Status::UNSAT);
    CHECK(out.stats.decisions == 0);
  }
  {
    Formula f;
    f.n = 2;
    f.clauses = {mk({1}), mk({-1, 2})};
    auto out = solve_complete(f);
    CHECK(out.status == Status::SAT);
    CHECK(out.stats.decisions == 0);
    CHECK((*out.assignment)[0] == true);
    CHECK((*out.assignment)[1] == true);
  }
}

TEST_CASE("all sign patterns on a triple is unsat") {
  Formula f;
  f.n = 3;
  f.k = 3;
  for (int s = 0; s < 8; ++s)
    f.clauses.push_back(
        mk({(s & 1) ? -1 : 1, (s & 2) ? -2 : 2, (s & 4) ? -3 : 3}));
  auto out = solve_complete(f);
  CHECK(out.status == Status::UNSAT);
}

TEST_CASE("pure literal elimination closes easy formulas without search") {
  {
    Formula f;
    f.n = 2;
    f.clauses = {mk({1, 2}), mk({1, -2})};
    auto out = solve_complete(f);
    CHECK(out.status == Status::SAT);
    CHECK(out.stats.decisions == 0);
    CHECK((*out.assignment)[0] == true);
  }
  {
    // eliminating one pure literal makes the next variable pure
    Formula f;
    f.n = 3;
    f.clauses = {mk({-1, 2}), mk({-2, 3})};
    auto out = solve_complete(f);
    CHECK(out.status == Status::SAT);
    CHECK(out.stats.decisions == 0);

    SolveOptions no_pure;
    no_pure.pure_literal = false;
    auto out2 = solve_complete(f, no_pure);
    CHECK(out2.status == Status::SAT);
    CHECK(out2.stats.decisions >= 1);
  }
}

TEST_CASE("matches brute force on random small instances") {
  const std::size_t kInstances = 10000;
  std::size_t sat_seen = 0, unsat_seen = 0;
  for (uint64_t s = 0; s < kInstances; ++s) {
    Rng rng(derive_stream(0xD1CE, s));
    std::size_t n = 2 + rng.bounded(3);  // 2..4
    std::size_t m = 1 + rng.bounded(8);  // 1..8
    Formula f;
    f.n = n;
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t k = 2 + rng.bounded(2);  // 2..3
      if (k > n) k = n;
      Clause c;
      while (c.size() < k) {
        int32_t v = int32_t(rng.bounded(n)) + 1;
        bool dup = false;
        for (const Lit& l : c.lits) dup |= l.var() == v;
        if (!dup) c.lits.push_back({rng.coin() ? -v : v});
      }
      canonicalize(c);
      f.clauses.push_back(c);
    }
    bool truth = brute_force_sat(f);
    SolveOptions opts;
    opts.branching = (s % 2) ? Branching::LowestIndex : Branching::HighestIndex;
    opts.pure_literal = (s % 4) < 2;
    auto out = solve_complete(f, opts);
    if (truth) {
      REQUIRE(out.status == Status::SAT);
      REQUIRE(out.assignment.has_value());
      REQUIRE(satisfies(f, *out.assignment));
      sat_seen++;
    } else {
      REQUIRE(out.status == Status::UNSAT);
      unsat_seen++;
    }
  }
  CHECK(sat_seen > 1000);
  CHECK(unsat_seen > 600);
}

TEST_CASE("solves a small pigeonhole instance and is deterministic") {
  Formula f = php(4, 3);
  auto a = solve_complete(f);
  auto b = solve_complete(f);
  CHECK(a.status == Status::UNSAT);
  CHECK(b.status == Status::UNSAT);
  CHECK(a.stats.decisions == b.stats.decisions);
  CHECK(a.stats.propagations == b.stats.propagations);
  CHECK(a.stats.decisions > 0);
}

TEST_CASE("decision budget turns into TIMEOUT") {
  Formula f = php(9, 8);
  SolveOptions opts;
  opts.max_decisions = 500;
  auto out = solve_complete(f, opts);
  CHECK(out.status == Status::TIMEOUT);
  CHECK(out.stats.decisions == 501);
}

TEST_CASE("wall clock budget turns into TIMEOUT") {
  Formula f = php(9, 8);
  SolveOptions opts;
  opts.wall_ms = 50;
  auto out = solve_complete(f, opts);
  CHECK(out.status == Status::TIMEOUT);
  CHECK(out.stats.wall_ms < 5000);
}

TEST_CASE("external adapter parses competition output") {
  Formula f;
  f.n = 2;
  f.clauses = {mk({1, 2})};

  auto out = solve_external(f, "echo 's SATISFIABLE'; echo 'v 1 2 0'", 2000);
  REQUIRE(out.status == Status::SAT);
  REQUIRE(out.assignment.has_value());
  CHECK(satisfies(f, *out.assignment));

  auto neg = solve_external(f, "printf 's SATISFIABLE\\nv 1\\nv -2 0\\n'", 2000);
  REQUIRE(neg.status == Status::SAT);
  CHECK((*neg.assignment)[0] == true);
  CHECK((*neg.assignment)[1] == false);

  auto uns = solve_external(f, "echo 's UNSATISFIABLE'", 2000);
  CHECK(uns.status == Status::UNSAT);
  CHECK(!uns.assignment.has_value());
}

TEST_CASE("external adapter reads minisat-style result files") {
  Formula f;
  f.n = 2;
  f.clauses = {mk({1, 2})};
  auto out = solve_external(f, "printf 'SAT\\n1 -2 0\\n' > {out}", 2000);
  REQUIRE(out.status == Status::SAT);
  CHECK((*out.assignment)[0] == true);

  auto uns = solve_external(f, "echo UNSAT > {out}", 2000);
  CHECK(uns.status == Status::UNSAT);
}

TEST_CASE("external adapter passes a real CNF through {in}") {
  Formula f;
  f.n = 3;
  f.clauses = {mk({1, -2, 3})};
  // the fake solver inspects the input file before answering
  auto out = solve_external(
      f, "head -n1 {in} | grep -q '^p cnf 3 1' && echo 's UNSATISFIABLE'",
      2000);
  CHECK(out.status == Status::UNSAT);
}

TEST_CASE("external adapter rejects a bogus model") {
  Formula f;
  f.n = 2;
  f.clauses = {mk({1, 2})};
  CHECK_THROWS_AS(
      (void)solve_external(f, "echo 's SATISFIABLE'; echo 'v -1 -2 0'", 2000),
      std::runtime_error);
}

TEST_CASE("external adapter maps silence to UNKNOWN with diagnostics") {
  Formula f;
  f.n = 1;
  f.clauses = {mk({1})};
  auto out = solve_external(f, "echo oops 1>&2; echo not-a-status", 2000);
  CHECK(out.status == Status::UNKNOWN);
  CHECK(out.note.find("no parseable status") != std::string::npos);
  CHECK(out.note.find("oops") != std::string::npos);
}

TEST_CASE("external adapter kills slow solvers at the deadline") {
  Formula f;
  f.n = 1;
  f.clauses = {mk({1})};
  auto out = solve_external(f, "sleep 30", 300);
  CHECK(out.status == Status::TIMEOUT);
  CHECK(out.stats.wall_ms < 5000);
}

TEST_CASE("internal and external answers agree on random formulas") {
  const char* bin = std::getenv("PLSAT_BIN");
  REQUIRE_MESSAGE(bin != nullptr,
                  "PLSAT_BIN must point at the plsat executable");
  std::string cmd = std::string("\"") + bin + "\" solve --in {in}";

  auto vd = distribution(build_concrete(50, 2.75));
  std::size_t checked = 0, sat_seen = 0, unsat_seen = 0;
  for (double r : {3.0, 5.0}) {
    for (uint64_t s = 0; s < 250; ++s) {
      auto [f, st] =
          sample_formula(vd, std::size_t(r * 50), 3, derive_stream(777, s));
      auto inside = solve_complete(f);
      auto outside = solve_external(f, cmd, 10000);
      REQUIRE(inside.status == outside.status);
      checked++;
      sat_seen += inside.status == Status::SAT;
      unsat_seen += inside.status == Status::UNSAT;
    }
  }
  CHECK(checked == 500);
  CHECK(sat_seen > 0);
  CHECK(unsat_seen > 0);
}

TEST_SUITE_END();
