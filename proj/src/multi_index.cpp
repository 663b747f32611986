#include "strongnl/multi_index.hpp"

#include <stdexcept>

namespace strongnl {

bool entries_in_range(const MultiIndex& x, int d) {
  for (int e : x) {
    if (e < 0 || e >= d) return false;
  }
  return true;
}

bool has_zero_entry(const MultiIndex& x) {
  for (int e : x) {
    if (e == 0) return true;
  }
  return false;
}

std::size_t lex_rank(const MultiIndex& x, int d) {
  std::size_t r = 0;
  for (int e : x) r = r * static_cast<std::size_t>(d) + static_cast<std::size_t>(e);
  return r;
}

MultiIndex sub_index(const MultiIndex& x, const std::vector<int>& parties) {
  MultiIndex out;
  out.reserve(parties.size());
  for (int p : parties) {
    if (p < 1 || p > static_cast<int>(x.size())) {
      throw std::invalid_argument("sub_index: party label out of range");
    }
    out.push_back(x[static_cast<std::size_t>(p - 1)]);
  }
  return out;
}

std::size_t pow_sz(int base, int exponent) {
  std::size_t r = 1;
  for (int k = 0; k < exponent; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace strongnl
