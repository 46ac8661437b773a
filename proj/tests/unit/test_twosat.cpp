#include "doctest.h"

#include <plsat/formula.hpp>
#include <plsat/rng.hpp>
#include <plsat/sampler.hpp>
#include <plsat/twosat.hpp>
#include <plsat/weights.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace plsat;

namespace {

Clause mk(std::initializer_list<int32_t> ls) {
  Clause c;
  for (int32_t v : ls) c.lits.push_back({v});
  return c;
}

Formula mkf(std::size_t n, std::initializer_list<Clause> cs) {
  Formula f;
  f.n = n;
  f.clauses = cs;
  f.k = f.clauses.empty() ? 0 : f.clauses.begin()->size();
  for (const auto& c : f.clauses)
    if (c.size() != f.k) f.k = 0;
  return f;
}

// ground truth by enumeration, n <= 20
bool brute_force_sat(const Formula& f) {
  for (uint32_t mask = 0; mask < (1u << f.n); ++mask) {
    std::vector<bool> a(f.n);
    for (std::size_t i = 0; i < f.n; ++i) a[i] = (mask >> i) & 1;
    if (satisfies(f, a)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("twosat");

TEST_CASE("shrink keeps the two lightest literals with signs") {
  auto ws = build_concrete(4, 3.0);  // weights increase with index
  Formula f = mkf(4, {mk({1, -3, 4})});
  Formula two = shrink(f, ws);
  REQUIRE(two.m() == 1);
  CHECK(two.k == 2);
  CHECK(two.clauses[0] == mk({1, -3}));
}

TEST_CASE("shrink breaks weight ties by lowest index") {
  auto ws = build_uniform(8);
  Formula f = mkf(8, {mk({5, 2, 7}), mk({-7, -6, -8})});
  Formula two = shrink(f, ws);
  CHECK(two.clauses[0] == mk({2, 5}));
  CHECK(two.clauses[1] == mk({-6, -7}));
}

TEST_CASE("shrink of a 2-SAT formula is the identity") {
  auto ws = build_concrete(5, 2.5);
  Formula f = mkf(5, {mk({1, -2}), mk({-4, 5})});
  Formula two = shrink(f, ws);
  CHECK(two.clauses == f.clauses);
}

TEST_CASE("shrink validates its input") {
  auto ws = build_uniform(3);
  Formula f = mkf(5, {mk({1, 2, 3})});
  CHECK_THROWS_AS((void)shrink(f, ws), std::invalid_argument);  // ws too short

  Formula unit = mkf(3, {mk({1})});
  auto ws3 = build_uniform(3);
  CHECK_THROWS_AS((void)shrink(unit, ws3), std::invalid_argument);
}

TEST_CASE("solve_2sat solves hand-built instances") {
  {
    Formula f = mkf(2, {mk({1, 2}), mk({-1, 2})});
    auto cert = solve_2sat(f);
    REQUIRE(cert.status == Status::SAT);
    REQUIRE(cert.assignment.has_value());
    CHECK((*cert.assignment)[1] == true);
    CHECK(satisfies(f, *cert.assignment));
    CHECK(cert.reason == Reason::TwoSatSCC);
  }
  {
    // all four sign patterns on {1,2}: unsatisfiable
    Formula f =
        mkf(2, {mk({1, 2}), mk({1, -2}), mk({-1, 2}), mk({-1, -2})});
    auto cert = solve_2sat(f);
    CHECK(cert.status == Status::UNSAT);
    CHECK(!cert.assignment.has_value());
  }
  {
    // implication cycle x1 -> x2 -> x3 -> not x1: satisfiable, x1 false
    Formula f = mkf(3, {mk({-1, 2}), mk({-2, 3}), mk({-3, -1})});
    auto cert = solve_2sat(f);
    REQUIRE(cert.status == Status::SAT);
    CHECK((*cert.assignment)[0] == false);
    CHECK(satisfies(f, *cert.assignment));
  }
}

TEST_CASE("variables absent from the formula come back false") {
  Formula f = mkf(4, {mk({1, 2})});
  auto cert = solve_2sat(f);
  REQUIRE(cert.status == Status::SAT);
  CHECK((*cert.assignment)[2] == false);
  CHECK((*cert.assignment)[3] == false);
}

TEST_CASE("solve_2sat rejects non-2 clause widths") {
  Formula f = mkf(3, {mk({1, 2, 3})});
  CHECK_THROWS_AS((void)solve_2sat(f), std::invalid_argument);
}

TEST_CASE("solve_2sat matches brute force on random instances") {
  const std::size_t kInstances = 10000;
  std::size_t sat_seen = 0, unsat_seen = 0;
  for (uint64_t s = 0; s < kInstances; ++s) {
    Rng rng(derive_stream(0xBEEF, s));
    std::size_t n = 2 + rng.bounded(3);       // 2..4
    std::size_t m = 1 + rng.bounded(6);       // 1..6
    Formula f;
    f.n = n;
    f.k = 2;
    for (std::size_t j = 0; j < m; ++j) {
      int32_t a = int32_t(rng.bounded(n)) + 1;
      int32_t b;
      do {
        b = int32_t(rng.bounded(n)) + 1;
      } while (b == a);
      if (a > b) std::swap(a, b);
      Clause c;
      c.lits = {Lit{rng.coin() ? -a : a}, Lit{rng.coin() ? -b : b}};
      f.clauses.push_back(c);
    }
    bool truth = brute_force_sat(f);
    auto cert = solve_2sat(f);
    if (truth) {
      REQUIRE(cert.status == Status::SAT);
      REQUIRE(satisfies(f, *cert.assignment));
      sat_seen++;
    } else {
      REQUIRE(cert.status == Status::UNSAT);
      unsat_seen++;
    }
  }
  // the instance mix must actually exercise both outcomes
  CHECK(sat_seen > 1000);
  CHECK(unsat_seen > 300);
}

TEST_CASE("certify_by_shrinking transfers SAT and refuses to claim UNSAT") {
  auto ws = build_concrete(6, 2.5);
  {
    // an easy satisfiable 3-SAT formula
    Formula f = mkf(6, {mk({1, 2, 3}), mk({-1, 4, 5}), mk({2, -5, 6})});
    auto cert = certify_by_shrinking(f, ws);
    REQUIRE(cert.status == Status::SAT);
    CHECK(satisfies(f, *cert.assignment));
  }
  {
    // all 8 sign patterns on the three lightest variables: the shrunk
    // formula contains all four patterns on {1,2}, so 2-SAT is UNSAT and
    // the certifier must answer UNKNOWN
    Formula f;
    f.n = 6;
    f.k = 3;
    for (int s = 0; s < 8; ++s) {
      Clause c = mk({(s & 1) ? -1 : 1, (s & 2) ? -2 : 2, (s & 4) ? -3 : 3});
      f.clauses.push_back(c);
    }
    auto cert = certify_by_shrinking(f, ws);
    CHECK(cert.status == Status::UNKNOWN);
    CHECK(cert.reason == Reason::ShrunkUnsat);
  }
}

TEST_CASE("exact pair law: uniform n=4, k=3 by hand") {
  auto vd = distribution(build_uniform(4));
  auto law = exact_shrunk_pair_law(vd, 3);
  CHECK(law.at(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(law.at(1, 3) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(law.at(2, 3) == doctest::Approx(0.25).epsilon(1e-12));
  // no pair can include the heaviest variable: some third variable would
  // have to be even heavier
  CHECK(law.at(1, 4) == 0.0);
  CHECK(law.at(2, 4) == 0.0);
  CHECK(law.at(3, 4) == 0.0);
}

TEST_CASE("exact pair law: k=2 reduces to the clause marginal") {
  auto vd = distribution(build_concrete(3, 2.5));
  auto law = exact_shrunk_pair_law(vd, 2);
  double e2 = elementary_symmetric(vd.p, 2);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = i + 1; j <= 3; ++j)
      CHECK(law.at(i, j) ==
            doctest::Approx(vd.p[i - 1] * vd.p[j - 1] / e2).epsilon(1e-12));
}

TEST_CASE("exact pair law sums to one") {
  for (std::size_t k : {std::size_t(2), std::size_t(3), std::size_t(4)}) {
    auto vd = distribution(build_concrete(50, 3.0));
    auto law = exact_shrunk_pair_law(vd, k);
    double total = 0;
    for (std::size_t i = 1; i <= 50; ++i)
      for (std::size_t j = i + 1; j <= 50; ++j) total += law.at(i, j);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exact pair law enforces its cutoffs") {
  auto vd_big = distribution(build_uniform(201));
  CHECK_THROWS_AS((void)exact_shrunk_pair_law(vd_big, 3),
                  std::invalid_argument);
  auto vd = distribution(build_uniform(10));
  CHECK_THROWS_AS((void)exact_shrunk_pair_law(vd, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)exact_shrunk_pair_law(vd, 5), std::invalid_argument);
}

TEST_CASE("sampled shrunk pairs match the exact law") {
  auto ws = build_concrete(50, 3.0);
  auto vd = distribution(ws);
  auto rep = shrunk_pair_distribution_check(vd, ws, 3, 100000, 31337);
  CHECK(rep.trials == 100000);
  CHECK(rep.max_sigma < 5.0);
  CHECK(rep.impossible_hits == 0);

  auto ws_u = build_uniform(20);
  auto vd_u = distribution(ws_u);
  auto rep_u = shrunk_pair_distribution_check(vd_u, ws_u, 4, 50000, 99);
  CHECK(rep_u.max_sigma < 5.0);
  CHECK(rep_u.impossible_hits == 0);
}

TEST_CASE("distribution check refuses tiny trial counts") {
  auto ws = build_uniform(10);
  auto vd = distribution(ws);
  CHECK_THROWS_AS((void)shrunk_pair_distribution_check(vd, ws, 3, 100, 1),
                  std::invalid_argument);
}

TEST_SUITE_END();
