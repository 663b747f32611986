#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "strongnl/orbits.hpp"

using namespace strongnl;

namespace {

// Independent orbit enumeration for cross-checking partition(): sweep the
// whole domain and grow each orbit by repeated shifting into a set.
std::set<std::set<MultiIndex>> brute_force_orbits(int d, int N) {
  std::set<std::set<MultiIndex>> orbits;
  MultiIndex x(static_cast<std::size_t>(N), 0);
  while (true) {
    if (has_zero_entry(x)) {
      std::set<MultiIndex> orbit{x};
      for (MultiIndex y = cyclic_shift(x); y != x; y = cyclic_shift(y)) orbit.insert(y);
      orbits.insert(std::move(orbit));
    }
    int k = N - 1;
    while (k >= 0 && x[static_cast<std::size_t>(k)] == d - 1) {
      x[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++x[static_cast<std::size_t>(k)];
  }
  return orbits;
}

std::size_t domain_size(int d, int N) {
  return pow_sz(d, N) - pow_sz(d - 1, N);
}

}  // namespace

TEST_CASE("cyclic_shift rotates left by one") {
  CHECK(cyclic_shift(MultiIndex{0, 0, 1}) == MultiIndex{0, 1, 0});
  CHECK(cyclic_shift(MultiIndex{0, 0, 0}) == MultiIndex{0, 0, 0});
  CHECK(cyclic_shift(MultiIndex{0, 1, 0, 1}) == MultiIndex{1, 0, 1, 0});
}

TEST_CASE("cyclic_shift applied N times is the identity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const int N = 2 + static_cast<int>(rng() % 5);
    MultiIndex x(static_cast<std::size_t>(N));
    for (int& e : x) e = static_cast<int>(rng() % static_cast<unsigned>(d));
    MultiIndex y = x;
    for (int k = 0; k < N; ++k) y = cyclic_shift(y);
    CHECK(y == x);
  }
}

TEST_CASE("orbit_of produces the canonical shift-ordered orbit") {
  const Orbit o = orbit_of(MultiIndex{0, 0, 0, 1}, 2);
  CHECK(o.representative == MultiIndex{0, 0, 0, 1});
  CHECK(o.elements == std::vector<MultiIndex>{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});

  CHECK(orbit_of(MultiIndex{0, 1, 0, 1}, 2).size() == 2);
  CHECK(orbit_of(MultiIndex{0, 0, 0}, 2).elements == std::vector<MultiIndex>{{0, 0, 0}});

  // Any orbit member maps to the same canonical orbit.
  const Orbit from_other = orbit_of(MultiIndex{1, 0, 0, 0}, 2);
  CHECK(from_other.representative == o.representative);
  CHECK(from_other.elements == o.elements);
}

TEST_CASE("orbit_of rejects tuples outside the domain") {
  CHECK_THROWS_AS(orbit_of(MultiIndex{1, 1}, 2), std::domain_error);
  CHECK_THROWS_AS(orbit_of(MultiIndex{0, 2}, 2), std::domain_error);
  CHECK_THROWS_AS(orbit_of(MultiIndex{}, 2), std::domain_error);
}

TEST_CASE("partition of the two-qubit-per-party examples") {
  const OrbitPartition p23 = partition(2, 3);
  REQUIRE(p23.orbits.size() == 3);
  CHECK(p23.orbits[0].representative == MultiIndex{0, 0, 0});
  CHECK(p23.orbits[1].representative == MultiIndex{0, 0, 1});
  CHECK(p23.orbits[2].representative == MultiIndex{0, 1, 1});

  CHECK(partition(2, 4).orbits.size() == 5);
  CHECK_THROWS_AS(partition(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(partition(2, 1), std::invalid_argument);
}

TEST_CASE("partition(3,3) covers 19 elements in 7 orbits") {
  // Oracle: independent enumeration; the fixed-point count also satisfies
  // (19 + 2*1) / 3 = 7.
  const OrbitPartition p = partition(3, 3);
  CHECK(p.orbits.size() == 7);
  CHECK(p.element_count() == 19);

  const auto oracle = brute_force_orbits(3, 3);
  REQUIRE(oracle.size() == 7);
  for (const Orbit& o : p.orbits) {
    const std::set<MultiIndex> as_set(o.elements.begin(), o.elements.end());
    CHECK(oracle.count(as_set) == 1);
  }
}

TEST_CASE("partition properties for d <= 4, N <= 6") {
  for (int d = 2; d <= 4; ++d) {
    for (int N = 2; N <= 6; ++N) {
      const OrbitPartition p = partition(d, N);
      CHECK(p.element_count() == domain_size(d, N));
      std::set<MultiIndex> seen;
      for (const Orbit& o : p.orbits) {
        CHECK(N % o.size() == 0);
        CHECK(o.representative == *std::min_element(o.elements.begin(), o.elements.end()));
        for (const MultiIndex& e : o.elements) CHECK(seen.insert(e).second);
      }
    }
  }
}

TEST_CASE("orbit_of is shift-invariant on random domain tuples") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const int N = 2 + static_cast<int>(rng() % 5);
    MultiIndex x(static_cast<std::size_t>(N));
    for (int& e : x) e = static_cast<int>(rng() % static_cast<unsigned>(d));
    x[rng() % static_cast<unsigned>(N)] = 0;  // force domain membership
    const Orbit a = orbit_of(x, d);
    const Orbit b = orbit_of(cyclic_shift(x), d);
    CHECK(a.representative == b.representative);
    CHECK(a.elements == b.elements);
  }
}
