#include "strongnl/orbits.hpp"

#include <algorithm>
#include <stdexcept>

namespace strongnl {

MultiIndex cyclic_shift(const MultiIndex& x) {
  if (x.empty()) return x;
  MultiIndex y(x.begin() + 1, x.end());
  y.push_back(x.front());
  return y;
}

bool in_index_domain(const MultiIndex& x, int d) {
  return !x.empty() && entries_in_range(x, d) && has_zero_entry(x);
}

namespace {

// Shift-iteration from start, truncated at the first repetition.
std::vector<MultiIndex> iterate_orbit(const MultiIndex& start) {
  std::vector<MultiIndex> elems{start};
  for (MultiIndex y = cyclic_shift(start); y != start; y = cyclic_shift(y)) {
    elems.push_back(y);
  }
  return elems;
}

}  // namespace

Orbit orbit_of(const MultiIndex& x, int d) {
  if (!in_index_domain(x, d)) {
    throw std::domain_error("orbit_of: tuple has no zero entry or is out of range");
  }
  const std::vector<MultiIndex> any_order = iterate_orbit(x);
  const MultiIndex rep = *std::min_element(any_order.begin(), any_order.end());
  return Orbit{rep, iterate_orbit(rep)};
}

std::size_t OrbitPartition::element_count() const {
  std::size_t n = 0;
  for (const Orbit& o : orbits) n += o.elements.size();
  return n;
}

OrbitPartition partition(int d, int N) {
  if (d < 2 || N < 2) {
    throw std::invalid_argument("partition: requires d >= 2 and N >= 2");
  }
  OrbitPartition part{d, N, {}};
  MultiIndex x(static_cast<std::size_t>(N), 0);
  // Odometer sweep of Z_d^N in lexicographic order; a tuple opens a new orbit
  // exactly when it is the minimum of its own orbit.
  while (true) {
    if (has_zero_entry(x)) {
      const std::vector<MultiIndex> elems = iterate_orbit(x);
      if (x == *std::min_element(elems.begin(), elems.end())) {
        part.orbits.push_back(Orbit{x, elems});
      }
    }
    int k = N - 1;
    while (k >= 0 && x[static_cast<std::size_t>(k)] == d - 1) {
      x[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++x[static_cast<std::size_t>(k)];
  }
  return part;
}

}  // namespace strongnl
