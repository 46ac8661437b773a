#include "doctest.h"

#include <plsat/rng.hpp>

#include <cstdint>
#include <set>
#include <vector>

using namespace plsat;

TEST_SUITE_BEGIN("rng");

TEST_CASE("streams are pure functions of (master, index)") {
  CHECK(derive_stream(42, 0) == derive_stream(42, 0));
  CHECK(derive_stream(42, 1) != derive_stream(42, 0));
  CHECK(derive_stream(43, 0) != derive_stream(42, 0));

  Rng a(derive_stream(7, 3));
  Rng b(derive_stream(7, 3));
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("stream ids do not collide on a dense index range") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(derive_stream(1, i));
  CHECK(seen.size() == 100000);
}

TEST_CASE("cell seeds differ across grid coordinates and trials") {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j)
      for (std::size_t t = 0; t < 5; ++t) seen.insert(derive_cell_seed(9, i, j, t));
  CHECK(seen.size() == 20u * 20u * 5u);
}

TEST_CASE("bounded stays in range and covers small supports") {
  Rng r(123);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    auto v = r.bounded(7);
    REQUIRE(v < 7);
    hits[v]++;
  }
  for (int c : hits) CHECK(c > 7000 / 7 / 2);
}

TEST_CASE("uniform lies in [0,1) and is roughly centered") {
  Rng r(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("coin is close to fair") {
  Rng r(99);
  int heads = 0;
  for (int i = 0; i < 100000; ++i) heads += r.coin() ? 1 : 0;
  CHECK(std::abs(heads - 50000) < 4 * 160);
}

TEST_SUITE_END();
