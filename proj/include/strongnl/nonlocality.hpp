#pragma once

// Deciding whether every orthogonality-preserving joint measurement by a party
// group is trivial (proportional to identity), two independent ways:
//
//  * numeric oracle: a POVM element E on the group factor must satisfy
//    <psi| I (x) E |phi> = 0 for every pair of distinct set states; those are
//    real-linear constraints on E's Hermitian coordinates, and the verdict is
//    read off the constraint matrix's null space (trivial iff it is exactly
//    the identity line);
//
//  * deduction engine: two monotone rules applied to family pairs prove
//    matrix entries zero and diagonal entries equal, producing an auditable
//    certificate. The zeroing rule matches elements of two disjoint families
//    with equal cut-party index; the diagonal rule fires on a family once an
//    anchor column's off-diagonal row is fully zeroed.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "strongnl/states.hpp"

namespace strongnl {

struct MeasurementGroup {
  std::vector<int> parties;  // sorted 1-based labels; nonempty proper subset

  static MeasurementGroup of(std::vector<int> parties, int party_count);
  static MeasurementGroup all_but(int party, int party_count);
  static std::vector<MeasurementGroup> default_groups(int party_count);  // all-but-i, i = 1..N
  static std::vector<MeasurementGroup> all_groups(int party_count);      // every nonempty proper subset
  std::string to_string() const;
  bool operator==(const MeasurementGroup&) const = default;
};

struct ConstraintSystem {
  MeasurementGroup group;
  int m = 0;        // d^{|group|}
  RealMatrix rows;  // |set|(|set|-1) rows over the m^2 Hermitian coordinates
};

// One (Re, Im) row pair per unordered pair of distinct states; the reversed
// ordering of a pair carries the conjugate constraint, so the two rows exhaust
// both orderings. The identity coordinate vector satisfies every row.
ConstraintSystem assemble_constraints(const StateSet& set, const MeasurementGroup& group);

enum class Triviality { trivial, nontrivial, indeterminate };
const char* to_string(Triviality t);

struct TrivialityResult {
  Triviality verdict = Triviality::indeterminate;
  int null_dim = -1;
  std::optional<HermitianParam> witness;  // nontrivial: in the null space, orthogonal to identity
  double sigma_max = 0.0;
  double sigma_kept_min = 0.0;
  double sigma_disc_max = 0.0;
  std::string note;
};

// trivial iff the constraint null space is exactly one-dimensional (the
// identity direction). A spectral gap below 10x around the tolerance threshold
// yields indeterminate, never a silent verdict.
TrivialityResult triviality_check(const StateSet& set, const MeasurementGroup& group,
                                  double tol = kDefaultTol);

struct StrongestReport {
  bool pass = false;
  bool indeterminate = false;
  bool exhaustive = false;
  struct GroupEntry {
    MeasurementGroup group;
    TrivialityResult result;
  };
  std::vector<GroupEntry> groups;
  nlohmann::ordered_json to_json() const;
};

// Runs the oracle for the N all-but-one groups; with exhaustive set, for every
// nonempty proper subset of parties. Passes iff every group comes out trivial.
StrongestReport verify_strongest(const StateSet& set, double tol = kDefaultTol,
                                 bool exhaustive = false);

// ---- deduction engine ----

using EntryLabel = MultiIndex;  // sub-index tuple on the measured parties

struct DeductionLogEntry {
  std::string rule;  // "zero" | "trivial"
  std::vector<MultiIndex> families;
  std::vector<std::pair<EntryLabel, EntryLabel>> zeros_added;
  std::vector<EntryLabel> diagonals_merged;
  bool fired = true;  // false: preconditions unmet, state unchanged
};

// Entries proven zero plus equivalence classes of diagonal entries proven
// equal, over the full label set Z_d^len of the measured factor. Zeros only
// grow and classes only coarsen.
class DeductionState {
 public:
  DeductionState(int d, int label_length);

  bool zero_known(const EntryLabel& r, const EntryLabel& s) const;
  bool add_zero(const EntryLabel& r, const EntryLabel& s);       // true if newly added
  bool merge_diagonals(const std::vector<EntryLabel>& labels);   // true if classes changed
  bool same_diagonal_class(const EntryLabel& a, const EntryLabel& b) const;

  std::size_t zero_count() const { return zeros_.size(); }
  std::size_t off_diagonal_pair_count() const;
  int diagonal_class_count() const;
  // All off-diagonal entries zero and a single diagonal class.
  bool terminal_success() const;

  int d() const { return d_; }
  int label_length() const { return len_; }

  std::vector<DeductionLogEntry> log;

 private:
  std::size_t rank_of(const EntryLabel& x) const;
  std::size_t find_root(std::size_t a) const;

  int d_ = 0;
  int len_ = 0;
  std::size_t label_count_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> zeros_;
  mutable std::vector<std::size_t> parent_;
  int class_count_ = 0;
};

// Zeroing rule: for every element pair of the two (support-disjoint) families
// whose cut-party indices agree, the corresponding off-diagonal entry is zero.
// Throws if either coefficient matrix is rank-deficient.
DeductionState apply_zero_rule(const StateFamily& fam_a, const StateFamily& fam_b, int cut_party,
                                DeductionState state);

// Diagonal rule: once some anchor column t has every coefficient nonzero and
// every (r_t, r_j) already proven zero, all same-head off-diagonal entries of
// the family vanish and all its diagonal entries merge into one class. An
// unmet precondition returns the state unchanged with a no-op log entry.
DeductionState apply_diagonal_rule(const StateFamily& fam, int cut_party, DeductionState state);

struct DeduceResult {
  bool proved = false;
  DeductionState state;
};

// Applies the zeroing rule over all family pairs and the diagonal rule over
// all families, in sorted order, until a fixpoint; only productive rule
// applications enter the log. Requires an all-but-one group.
DeduceResult deduce_fixpoint(const StateSet& set, const MeasurementGroup& group);

nlohmann::ordered_json proof_log_json(const StateSet& set, const MeasurementGroup& group,
                                      const DeduceResult& result);

}  // namespace strongnl
