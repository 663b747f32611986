#include "strongnl/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "strongnl/parallel.hpp"

namespace strongnl {

MeasurementGroup MeasurementGroup::of(std::vector<int> parties, int party_count) {
  std::sort(parties.begin(), parties.end());
  if (parties.empty() || static_cast<int>(parties.size()) >= party_count ||
      std::adjacent_find(parties.begin(), parties.end()) != parties.end() ||
      parties.front() < 1 || parties.back() > party_count) {
    throw std::invalid_argument("MeasurementGroup: need a nonempty proper subset of {1..N}");
  }
  return MeasurementGroup{std::move(parties)};
}

MeasurementGroup MeasurementGroup::all_but(int party, int party_count) {
  std::vector<int> parties;
  for (int p = 1; p <= party_count; ++p) {
    if (p != party) parties.push_back(p);
  }
  return of(std::move(parties), party_count);
}

std::vector<MeasurementGroup> MeasurementGroup::default_groups(int party_count) {
  std::vector<MeasurementGroup> out;
  for (int i = 1; i <= party_count; ++i) out.push_back(all_but(i, party_count));
  return out;
}

std::vector<MeasurementGroup> MeasurementGroup::all_groups(int party_count) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << party_count); ++mask) {
    std::vector<int> parties;
    for (int p = 1; p <= party_count; ++p) {
      if (mask & (1u << (p - 1))) parties.push_back(p);
    }
    subsets.push_back(std::move(parties));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<MeasurementGroup> out;
  for (auto& s : subsets) out.push_back(of(std::move(s), party_count));
  return out;
}

std::string MeasurementGroup::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < parties.size(); ++k) {
    if (k > 0) out << ',';
    out << parties[k];
  }
  out << '}';
  return out.str();
}

const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::trivial: return "trivial";
    case Triviality::nontrivial: return "nontrivial";
    case Triviality::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

std::vector<int> complement_parties(const std::vector<int>& parties, int party_count) {
  std::vector<int> out;
  for (int p = 1; p <= party_count; ++p) {
    if (!std::binary_search(parties.begin(), parties.end(), p)) out.push_back(p);
  }
  return out;
}

struct SplitTerm {
  MultiIndex complement_key;
  std::size_t group_rank;
  Complex amp;
};

std::vector<SplitTerm> split_terms(const StateVector& psi, const std::vector<int>& group,
                                   const std::vector<int>& complement) {
  std::vector<SplitTerm> out;
  out.reserve(psi.terms.size());
  for (const auto& [idx, amp] : psi.terms) {
    out.push_back(SplitTerm{sub_index(idx, complement), lex_rank(sub_index(idx, group), psi.d), amp});
  }
  return out;
}

}  // namespace

ConstraintSystem assemble_constraints(const StateSet& set, const MeasurementGroup& group) {
  if (set.families.empty()) throw std::invalid_argument("assemble_constraints: empty set");
  const MeasurementGroup checked = MeasurementGroup::of(group.parties, set.N);
  const std::vector<int> complement = complement_parties(checked.parties, set.N);
  const int m = static_cast<int>(pow_sz(set.d, static_cast<int>(checked.parties.size())));
  const int coords = HermitianParam::coord_count(m);

  const std::vector<const StateVector*> states = set.all_states();
  const std::size_t n = states.size();
  std::vector<std::vector<SplitTerm>> split(n);
  for (std::size_t i = 0; i < n; ++i) {
    split[i] = split_terms(*states[i], checked.parties, complement);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  ConstraintSystem cs{checked, m, RealMatrix::Zero(static_cast<Eigen::Index>(2 * pairs.size()), coords)};
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    // Complex coefficient of E_{r,s} in <psi_i| I (x) E |psi_j>.
    std::map<std::pair<std::size_t, std::size_t>, Complex> T;
    for (const SplitTerm& a : split[i]) {
      for (const SplitTerm& b : split[j]) {
        if (a.complement_key != b.complement_key) continue;
        T[{a.group_rank, b.group_rank}] += std::conj(a.amp) * b.amp;
      }
    }
    const Eigen::Index re_row = static_cast<Eigen::Index>(2 * k);
    const Eigen::Index im_row = re_row + 1;
    for (const auto& [rs, t] : T) {
      const int r = static_cast<int>(rs.first);
      const int s = static_cast<int>(rs.second);
      if (r == s) {
        const int c = HermitianParam::diag_coord(m, r);
        cs.rows(re_row, c) += t.real();
        cs.rows(im_row, c) += t.imag();
      } else if (r < s) {
        const auto [x, y] = HermitianParam::upper_coords(m, r, s);
        cs.rows(re_row, x) += t.real();
        cs.rows(re_row, y) -= t.imag();
        cs.rows(im_row, x) += t.imag();
        cs.rows(im_row, y) += t.real();
      } else {
        // E_{r,s} = conj(E_{s,r}): coefficient t multiplies x - i y.
        const auto [x, y] = HermitianParam::upper_coords(m, s, r);
        cs.rows(re_row, x) += t.real();
        cs.rows(re_row, y) += t.imag();
        cs.rows(im_row, x) += t.imag();
        cs.rows(im_row, y) -= t.real();
      }
    }
  });
  return cs;
}

namespace {

RealVector identity_direction(int m) {
  RealVector e = HermitianParam::identity(m).coords;
  return e / e.norm();
}

TrivialityResult all_free_result(int m) {
  // No constraints at all: every Hermitian operator is allowed.
  TrivialityResult res;
  res.verdict = Triviality::nontrivial;
  res.null_dim = HermitianParam::coord_count(m);
  RealVector w = RealVector::Zero(res.null_dim);
  w(HermitianParam::diag_coord(m, 0)) = 1.0 / std::numbers::sqrt2;
  w(HermitianParam::diag_coord(m, 1)) = -1.0 / std::numbers::sqrt2;
  res.witness = HermitianParam::from_coords(m, std::move(w));
  res.note = "no constraints";
  return res;
}

}  // namespace

TrivialityResult triviality_check(const StateSet& set, const MeasurementGroup& group, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("triviality_check: tolerance must be positive");
  const ConstraintSystem cs = assemble_constraints(set, group);
  const int coords = HermitianParam::coord_count(cs.m);
  if (cs.rows.rows() == 0) return all_free_result(cs.m);

  const RealSvd svd = real_svd_full_v(cs.rows);
  TrivialityResult res;
  res.sigma_max = svd.sigma(0);
  if (res.sigma_max == 0.0) return all_free_result(cs.m);

  const double threshold = tol * res.sigma_max;
  int kept = 0;
  while (kept < coords && svd.sigma(kept) > threshold) ++kept;
  res.null_dim = coords - kept;
  res.sigma_kept_min = kept > 0 ? svd.sigma(kept - 1) : 0.0;
  res.sigma_disc_max = res.null_dim > 0 ? svd.sigma(kept) : 0.0;

  if (res.null_dim == 0) {
    res.verdict = Triviality::indeterminate;
    res.note = "identity direction not detected in the null space; tolerance too tight";
    return res;
  }
  if (kept > 0 && res.sigma_disc_max > 0.0 && res.sigma_kept_min <= 10.0 * res.sigma_disc_max) {
    res.verdict = Triviality::indeterminate;
    res.note = "spectral gap around the tolerance threshold is below 10x";
    return res;
  }

  const RealVector e = identity_direction(cs.m);
  if (res.null_dim == 1) {
    const double overlap = std::abs(svd.V.col(coords - 1).dot(e));
    if (overlap < 0.99) {
      res.verdict = Triviality::indeterminate;
      res.note = "one-dimensional null space is not the identity direction";
      return res;
    }
    res.verdict = Triviality::trivial;
    return res;
  }

  // Nontrivial: pick the null direction farthest from the identity line.
  res.verdict = Triviality::nontrivial;
  RealVector best;
  double best_norm = -1.0;
  for (int c = kept; c < coords; ++c) {
    RealVector w = svd.V.col(c);
    w -= w.dot(e) * e;
    const double nw = w.norm();
    if (nw > best_norm) {
      best_norm = nw;
      best = std::move(w);
    }
  }
  best /= best_norm;
  res.witness = HermitianParam::from_coords(cs.m, std::move(best));
  return res;
}

StrongestReport verify_strongest(const StateSet& set, double tol, bool exhaustive) {
  StrongestReport report;
  report.exhaustive = exhaustive;
  const std::vector<MeasurementGroup> groups =
      exhaustive ? MeasurementGroup::all_groups(set.N) : MeasurementGroup::default_groups(set.N);
  report.groups.resize(groups.size());
  parallel_for(groups.size(), [&](std::size_t k) {
    report.groups[k] = StrongestReport::GroupEntry{groups[k], triviality_check(set, groups[k], tol)};
  });
  report.pass = true;
  for (const auto& entry : report.groups) {
    if (entry.result.verdict != Triviality::trivial) report.pass = false;
    if (entry.result.verdict == Triviality::indeterminate) report.indeterminate = true;
  }
  return report;
}

nlohmann::ordered_json StrongestReport::to_json() const {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [group, result] : groups) {
    nlohmann::ordered_json e{{"parties", group.parties},
                             {"verdict", strongnl::to_string(result.verdict)},
                             {"null_dim", result.null_dim},
                             {"sigma_max", result.sigma_max},
                             {"sigma_kept_min", result.sigma_kept_min},
                             {"sigma_disc_max", result.sigma_disc_max}};
    if (!result.note.empty()) e["note"] = result.note;
    entries.push_back(std::move(e));
  }
  return nlohmann::ordered_json{
      {"check", "strongest_nonlocality"},
      {"property",
       "every orthogonality-preserving joint measurement by each listed party group is "
       "proportional to identity (implies strong nonlocality)"},
      {"exhaustive", exhaustive},
      {"pass", pass},
      {"indeterminate", indeterminate},
      {"groups", std::move(entries)}};
}

// ---- deduction engine ----

DeductionState::DeductionState(int d, int label_length)
    : d_(d), len_(label_length), label_count_(pow_sz(d, label_length)),
      parent_(label_count_), class_count_(static_cast<int>(label_count_)) {
  if (d < 2 || label_length < 1) {
    throw std::invalid_argument("DeductionState: need d >= 2 and a positive label length");
  }
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DeductionState::rank_of(const EntryLabel& x) const {
  if (static_cast<int>(x.size()) != len_ || !entries_in_range(x, d_)) {
    throw std::invalid_argument("DeductionState: label does not match the measured factor");
  }
  return lex_rank(x, d_);
}

std::size_t DeductionState::find_root(std::size_t a) const {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

bool DeductionState::zero_known(const EntryLabel& r, const EntryLabel& s) const {
  const std::size_t a = rank_of(r), b = rank_of(s);
  if (a == b) return false;
  return zeros_.count({std::min(a, b), std::max(a, b)}) > 0;
}

bool DeductionState::add_zero(const EntryLabel& r, const EntryLabel& s) {
  const std::size_t a = rank_of(r), b = rank_of(s);
  if (a == b) throw std::invalid_argument("DeductionState: zero requires distinct entries");
  return zeros_.insert({std::min(a, b), std::max(a, b)}).second;
}

bool DeductionState::merge_diagonals(const std::vector<EntryLabel>& labels) {
  bool changed = false;
  for (std::size_t k = 1; k < labels.size(); ++k) {
    const std::size_t a = find_root(rank_of(labels[0]));
    const std::size_t b = find_root(rank_of(labels[k]));
    if (a != b) {
      parent_[std::max(a, b)] = std::min(a, b);
      --class_count_;
      changed = true;
    }
  }
  return changed;
}

bool DeductionState::same_diagonal_class(const EntryLabel& a, const EntryLabel& b) const {
  return find_root(rank_of(a)) == find_root(rank_of(b));
}

std::size_t DeductionState::off_diagonal_pair_count() const {
  return label_count_ * (label_count_ - 1) / 2;
}

int DeductionState::diagonal_class_count() const { return class_count_; }

bool DeductionState::terminal_success() const {
  return zeros_.size() == off_diagonal_pair_count() && class_count_ == 1;
}

namespace {

struct HeadTail {
  int head = 0;
  EntryLabel tail;
};

int infer_party_count(const StateFamily& fam) {
  if (fam.elements.empty()) {
    throw std::invalid_argument("deduction: family lacks its element structure");
  }
  return static_cast<int>(fam.elements.front().size());
}

std::vector<HeadTail> decompose(const StateFamily& fam, int cut_party) {
  const int N = infer_party_count(fam);
  if (cut_party < 1 || cut_party > N) {
    throw std::invalid_argument("deduction: cut party out of range");
  }
  std::vector<int> measured;
  for (int p = 1; p <= N; ++p) {
    if (p != cut_party) measured.push_back(p);
  }
  std::vector<HeadTail> out;
  out.reserve(fam.elements.size());
  for (const MultiIndex& e : fam.elements) {
    out.push_back(HeadTail{e[static_cast<std::size_t>(cut_party - 1)], sub_index(e, measured)});
  }
  return out;
}

void require_full_rank(const StateFamily& fam) {
  const int k = fam.coeffs.order();
  if (k != static_cast<int>(fam.elements.size())) {
    throw std::invalid_argument("deduction: coefficient matrix does not match the element list");
  }
  if (numeric_rank(fam.coeffs.entries) != k) {
    throw std::invalid_argument("deduction: coefficient matrix is not full-rank");
  }
}

struct RuleOutcome {
  std::vector<std::pair<EntryLabel, EntryLabel>> zeros_added;
  std::vector<EntryLabel> diagonals_merged;
  bool fired = false;
  bool changed() const { return !zeros_added.empty() || !diagonals_merged.empty(); }
};

RuleOutcome zero_rule_core(const StateFamily& fam_a, const StateFamily& fam_b, int cut_party,
                           DeductionState& st) {
  require_full_rank(fam_a);
  require_full_rank(fam_b);
  for (const MultiIndex& e : fam_a.elements) {
    if (std::find(fam_b.elements.begin(), fam_b.elements.end(), e) != fam_b.elements.end()) {
      throw std::invalid_argument("deduction: families share a basis element");
    }
  }
  const std::vector<HeadTail> a = decompose(fam_a, cut_party);
  const std::vector<HeadTail> b = decompose(fam_b, cut_party);
  RuleOutcome out;
  for (const HeadTail& ha : a) {
    for (const HeadTail& hb : b) {
      if (ha.head != hb.head) continue;
      out.fired = true;
      if (st.add_zero(ha.tail, hb.tail)) {
        out.zeros_added.emplace_back(std::min(ha.tail, hb.tail), std::max(ha.tail, hb.tail));
      }
    }
  }
  std::sort(out.zeros_added.begin(), out.zeros_added.end());
  return out;
}

RuleOutcome trivial_rule_core(const StateFamily& fam, int cut_party, DeductionState& st) {
  require_full_rank(fam);
  const std::vector<HeadTail> ht = decompose(fam, cut_party);
  const int k = static_cast<int>(ht.size());

  int anchor = -1;
  for (int t = 0; t < k && anchor < 0; ++t) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      ok = fam.coeffs.entries(i, t) != Complex(0.0, 0.0);
    }
    for (int j = 0; j < k && ok; ++j) {
      if (j == t) continue;
      ok = st.zero_known(ht[static_cast<std::size_t>(t)].tail, ht[static_cast<std::size_t>(j)].tail);
    }
    if (ok) anchor = t;
  }
  RuleOutcome out;
  if (anchor < 0) return out;

  out.fired = true;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (ht[static_cast<std::size_t>(i)].head != ht[static_cast<std::size_t>(j)].head) continue;
      if (st.add_zero(ht[static_cast<std::size_t>(i)].tail, ht[static_cast<std::size_t>(j)].tail)) {
        out.zeros_added.emplace_back(
            std::min(ht[static_cast<std::size_t>(i)].tail, ht[static_cast<std::size_t>(j)].tail),
            std::max(ht[static_cast<std::size_t>(i)].tail, ht[static_cast<std::size_t>(j)].tail));
      }
    }
  }
  std::vector<EntryLabel> diagonals;
  for (const HeadTail& h : ht) diagonals.push_back(h.tail);
  if (st.merge_diagonals(diagonals)) {
    std::sort(diagonals.begin(), diagonals.end());
    out.diagonals_merged = std::move(diagonals);
  }
  std::sort(out.zeros_added.begin(), out.zeros_added.end());
  return out;
}

DeductionLogEntry make_entry(const char* rule, std::vector<MultiIndex> families, RuleOutcome out) {
  return DeductionLogEntry{rule, std::move(families), std::move(out.zeros_added),
                           std::move(out.diagonals_merged), out.fired};
}

}  // namespace

DeductionState apply_zero_rule(const StateFamily& fam_a, const StateFamily& fam_b, int cut_party,
                                DeductionState state) {
  RuleOutcome out = zero_rule_core(fam_a, fam_b, cut_party, state);
  state.log.push_back(
      make_entry("zero", {fam_a.representative, fam_b.representative}, std::move(out)));
  return state;
}

DeductionState apply_diagonal_rule(const StateFamily& fam, int cut_party, DeductionState state) {
  RuleOutcome out = trivial_rule_core(fam, cut_party, state);
  state.log.push_back(make_entry("trivial", {fam.representative}, std::move(out)));
  return state;
}

DeduceResult deduce_fixpoint(const StateSet& set, const MeasurementGroup& group) {
  const MeasurementGroup checked = MeasurementGroup::of(group.parties, set.N);
  if (static_cast<int>(checked.parties.size()) != set.N - 1) {
    throw std::invalid_argument("deduce_fixpoint: group must be all parties but one");
  }
  int cut_party = 0;
  for (int p = 1; p <= set.N; ++p) {
    if (!std::binary_search(checked.parties.begin(), checked.parties.end(), p)) cut_party = p;
  }

  DeduceResult res{false, DeductionState(set.d, set.N - 1)};
  const std::size_t f = set.families.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < f; ++i) {
      for (std::size_t j = i + 1; j < f; ++j) {
        RuleOutcome out = zero_rule_core(set.families[i], set.families[j], cut_party, res.state);
        if (out.changed()) {
          changed = true;
          res.state.log.push_back(make_entry(
              "zero", {set.families[i].representative, set.families[j].representative},
              std::move(out)));
        }
      }
    }
    for (std::size_t i = 0; i < f; ++i) {
      RuleOutcome out = trivial_rule_core(set.families[i], cut_party, res.state);
      if (out.changed()) {
        changed = true;
        res.state.log.push_back(
            make_entry("trivial", {set.families[i].representative}, std::move(out)));
      }
    }
  }
  res.proved = res.state.terminal_success();
  return res;
}

nlohmann::ordered_json proof_log_json(const StateSet& set, const MeasurementGroup& group,
                                      const DeduceResult& result) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const DeductionLogEntry& e : result.state.log) {
    nlohmann::ordered_json zeros = nlohmann::ordered_json::array();
    for (const auto& [r, s] : e.zeros_added) {
      zeros.push_back(nlohmann::ordered_json::array({r, s}));
    }
    entries.push_back(nlohmann::ordered_json{{"rule", e.rule},
                                             {"families", e.families},
                                             {"zeros_added", std::move(zeros)},
                                             {"diagonals_merged", e.diagonals_merged},
                                             {"fired", e.fired}});
  }
  return nlohmann::ordered_json{
      {"check", "deduction"},
      {"set", set.label},
      {"group", group.parties},
      {"proved", result.proved},
      {"zeros_proved", result.state.zero_count()},
      {"off_diagonal_pairs", result.state.off_diagonal_pair_count()},
      {"diagonal_classes", result.state.diagonal_class_count()},
      {"entries", std::move(entries)}};
}

}  // namespace strongnl
