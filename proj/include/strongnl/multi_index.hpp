#pragma once

// Index tuples over Z_d addressing product-basis kets, plus the sub-index
// helpers every other module relies on. Party labels are 1-based throughout.

#include <cstddef>
#include <vector>

namespace strongnl {

using MultiIndex = std::vector<int>;

bool entries_in_range(const MultiIndex& x, int d);

bool has_zero_entry(const MultiIndex& x);

// Position of x in the lexicographic enumeration of Z_d^{|x|}.
std::size_t lex_rank(const MultiIndex& x, int d);

// Sub-tuple of x on the given (ascending, 1-based) party labels.
MultiIndex sub_index(const MultiIndex& x, const std::vector<int>& parties);

std::size_t pow_sz(int base, int exponent);

}  // namespace strongnl
