#include <doctest.h>

#include <set>

#include "pkm/random.hpp"

using namespace pkm;

TEST_CASE("rng streams are deterministic per seed") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  bool diverged = false;
  Rng a2(42);
  for (int i = 0; i < 100; ++i) diverged |= a2.uniform() != c.uniform();
  CHECK(diverged);
}

TEST_CASE("exponential and normal draws are finite and sane") {
  Rng rng(7);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double e = rng.exponential();
    CHECK(e > 0.0);
    sum += e;
  }
  CHECK(sum / 10000 == doctest::Approx(1.0).epsilon(0.05));

  double mean = 0;
  for (int i = 0; i < 10000; ++i) mean += rng.normal();
  CHECK(std::abs(mean / 10000) < 0.05);
}

TEST_CASE("integer draws cover [0, bound)") {
  Rng rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.integer(5);
    CHECK(v < 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("derived seeds differ across indices and masters") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t master = 0; master < 10; ++master)
    for (std::uint64_t run = 0; run < 100; ++run)
      seeds.insert(derive_seed(master, run));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
