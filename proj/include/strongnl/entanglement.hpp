#pragma once

// Schmidt-rank classification across bipartitions, set-level verdicts
// (orthogonality, entangled / genuinely entangled membership), and product
// operators for the explicit local-unitary witnesses.

#include <array>
#include <vector>

#include "json.hpp"
#include "strongnl/states.hpp"

namespace strongnl {

enum class Verdict { product, entangled, genuinely_entangled };
const char* to_string(Verdict v);

struct RankProfile {
  // One entry per unordered bipartition, in all_bipartitions order.
  std::vector<std::pair<Bipartition, int>> ranks;

  int rank_of(const Bipartition& cut) const;  // accepts either orientation
  int min_rank() const;
};

RankProfile rank_profile(const StateVector& a, double tol = kDefaultTol);

// product iff every cut has rank 1; genuinely entangled iff every cut has
// rank >= 2; entangled otherwise.
Verdict classify(const StateVector& a, double tol = kDefaultTol);

struct LocalOperator {
  std::vector<ComplexMatrix> factors;  // one d x d matrix per party
};

// Applies factors[0] x ... x factors[N-1]; throws std::invalid_argument on a
// shape mismatch and std::domain_error when every amplitude vanishes.
StateVector apply_local(const StateVector& a, const LocalOperator& op);

// True iff a = c * b for some nonzero complex scalar c, within tol.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kDefaultTol);

// Product operators mapping family states onto W states. The three-party
// operator acts on state s of the family over the orbit of (0,0,i); the
// four-party one on state s of the family over the orbit of (0,0,i,j), i != j.
LocalOperator w_witness_three_party(int d, int i, int s);
LocalOperator w_witness_four_party(int d, int i, int j, int s);

struct SetReport {
  std::string check;  // "oes" or "oges"
  bool pass = false;
  double worst_residual = 0.0;       // max |<a|b>| / (|a| |b|) over distinct pairs
  std::array<int, 2> worst_pair{-1, -1};  // flat state indices of the worst residual
  std::vector<int> witnesses;        // flat indices failing the entanglement requirement

  nlohmann::ordered_json to_json(const StateSet& set) const;
};

// Pairwise orthogonality plus "no product state".
SetReport verify_oes(const StateSet& set, double tol = kDefaultTol);

// verify_oes plus "every state genuinely entangled"; failing states are the
// report's witnesses.
SetReport verify_oges(const StateSet& set, double tol = kDefaultTol);

}  // namespace strongnl
