#pragma once

// Orbits of index tuples under the cyclic left shift
//   sigma(i_1, i_2, ..., i_N) = (i_2, ..., i_N, i_1).
// The domain is the set of tuples in Z_d^N with at least one zero entry; it
// splits into disjoint orbits whose sizes divide N.

#include <cstddef>
#include <vector>

#include "strongnl/multi_index.hpp"

namespace strongnl {

MultiIndex cyclic_shift(const MultiIndex& x);

// Entries in Z_d and at least one entry equal to zero.
bool in_index_domain(const MultiIndex& x, int d);

struct Orbit {
  MultiIndex representative;         // lexicographic minimum for canonical orbits
  std::vector<MultiIndex> elements;  // shift-iteration order starting at the representative
  int size() const { return static_cast<int>(elements.size()); }
};

// Canonical orbit of x: representative is the lexicographic minimum.
// Throws std::domain_error if x lies outside the index domain.
Orbit orbit_of(const MultiIndex& x, int d);

struct OrbitPartition {
  int d = 0;
  int N = 0;
  std::vector<Orbit> orbits;  // sorted by representative
  std::size_t element_count() const;
};

// Complete disjoint cover of the index domain; requires d >= 2, N >= 2.
OrbitPartition partition(int d, int N);

}  // namespace strongnl
