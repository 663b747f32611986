#pragma once

// Constructions of mutually orthogonal entangled state sets over (C^d)^{tensor N}.
//
// Each family pairs an ordered list of basis index tuples with a square
// coefficient matrix whose rows are pairwise orthogonal and entry-wise nonzero;
// state s of the family is  sum_j coeffs(s, j) |elements[j]>.  Orbit families
// use the order-k DFT matrix (w_k^{s j}); the orbit of the all-zero tuple is
// replaced by the two-state pair |0...0> +- |1...1>.

#include <stdexcept>
#include <string>
#include <vector>

#include "strongnl/orbits.hpp"
#include "strongnl/state_vector.hpp"

namespace strongnl {

struct CoefficientMatrix {
  ComplexMatrix entries;  // square; row s lists the coefficients of state s

  int order() const { return static_cast<int>(entries.rows()); }
  // Rows pairwise orthogonal (residual below 1e-12 relative) and every entry
  // nonzero; throws std::invalid_argument otherwise.
  void validate() const;
};

// Entry (s, j) = exp(2 pi i s j / k); quarter-turn phases are emitted exactly.
CoefficientMatrix dft_matrix(int k);

struct StateFamily {
  MultiIndex representative;
  std::vector<MultiIndex> elements;
  CoefficientMatrix coeffs;
  std::vector<StateVector> states;

  bool operator==(const StateFamily& other) const {
    return representative == other.representative && states == other.states;
  }
};

StateFamily family_from_elements(int d, MultiIndex representative,
                                 std::vector<MultiIndex> elements, CoefficientMatrix coeffs);

// DFT family over the orbit; the singleton zero orbit yields the two-state
// pair over {|0...0>, |1...1>} with coefficients [[1, 1], [1, -1]].
StateFamily family_from_orbit(const Orbit& o, int d);

struct StateSet {
  int d = 0;
  int N = 0;
  std::string label;
  std::vector<StateFamily> families;

  int size() const;
  // Pointers into this set's families; not callable on temporaries.
  std::vector<const StateVector*> all_states() const&;
  std::vector<const StateVector*> all_states() const&& = delete;

  struct StateRef {
    int family = -1;
    int s = -1;
  };
  StateRef locate(int flat_index) const;

  bool operator==(const StateSet& other) const {
    return d == other.d && N == other.N && label == other.label && families == other.families;
  }
};

// One DFT family per orbit of the index domain; size d^N - (d-1)^N + 1.
StateSet build_B(int d, int N);  // d >= 2, N >= 3

// Same as build_B(d, 4) except each orbit of (0,0,i,i), i in [d-1], uses the
// row-orthogonal integer coefficient matrix
//   [[1,1,1,2],[1,-1,2,-1],[5,5,-2,-4],[5,-5,-4,2]]
// over the shift ordering (0,0,i,i),(0,i,i,0),(i,i,0,0),(i,0,0,i), which makes
// every state genuinely entangled. Size unchanged.
StateSet build_Bbar4(int d);  // d >= 2

// The 18-state genuinely entangled set in (C^3)^{tensor 3}, stored as a
// literal table of six DFT-phase triples (two of the printed element orders
// start from a non-lexicographic tuple, so they are not regenerated from the
// canonical orbit builder).
StateSet build_A18();

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical JSON text:
//   {"label": str, "d": int, "N": int,
//    "families": [{"representative": [int],
//                  "states": [{"terms": [{"index": [int], "re": num, "im": num}]}]}]}
// Families follow set order (sorted representatives for the shipped builders),
// states follow coefficient-row order, terms are sorted by index.
std::string serialize(const StateSet& set);

// Inverse of serialize; throws ParseError naming the offending location.
// Family element lists and coefficient matrices are reconstructed from the
// state amplitudes when the family is square and consistently supported
// (always the case for files produced by serialize); otherwise they are left
// empty and only state-level operations apply.
StateSet deserialize(const std::string& text);

}  // namespace strongnl
