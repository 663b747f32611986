#pragma once

// Sparse multipartite kets over (C^d)^{tensor N} and the bipartition reshape.
// States are kept un-normalized; an absent index means amplitude zero.

#include <map>
#include <string>
#include <vector>

#include "strongnl/linalg.hpp"
#include "strongnl/multi_index.hpp"

namespace strongnl {

struct Bipartition {
  std::vector<int> left;   // sorted 1-based party labels, nonempty
  std::vector<int> right;  // complement, nonempty

  // Validates and completes the cut for the given party count.
  static Bipartition of(std::vector<int> left_parties, int party_count);
  Bipartition flipped() const { return Bipartition{right, left}; }
  std::string to_string() const;  // "{1,3}|{2,4}"
  bool operator==(const Bipartition&) const = default;
};

// All 2^(N-1) - 1 unordered bipartitions, each listed with party 1 on the left.
std::vector<Bipartition> all_bipartitions(int party_count);

struct StateVector {
  int d = 0;
  int N = 0;
  std::map<MultiIndex, Complex> terms;

  StateVector() = default;
  StateVector(int d_, int N_) : d(d_), N(N_) {}
  static StateVector basis_state(int d, const MultiIndex& idx);

  // Accumulates amp onto the given index; validates shape and entry range.
  void add_term(const MultiIndex& idx, Complex amp);
  double norm() const;
  bool operator==(const StateVector&) const = default;
};

// Sum of conj(a[idx]) * b[idx]; throws std::invalid_argument on (d, N) mismatch.
Complex inner_product(const StateVector& a, const StateVector& b);

// Amplitude matrix of the cut: rows indexed by left-party sub-tuples and
// columns by right-party sub-tuples, both in lexicographic order.
ComplexMatrix reshape(const StateVector& a, const Bipartition& cut);

StateVector ghz_state(int d, int N);  //  sum_i |i...i>
StateVector w_state(int d, int N);    //  single |1> excitation summed over parties

}  // namespace strongnl
