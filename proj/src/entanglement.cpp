#include "strongnl/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "strongnl/parallel.hpp"

namespace strongnl {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::product: return "product";
    case Verdict::entangled: return "entangled";
    case Verdict::genuinely_entangled: return "genuinely_entangled";
  }
  return "?";
}

int RankProfile::rank_of(const Bipartition& cut) const {
  for (const auto& [c, r] : ranks) {
    if (c == cut || c == cut.flipped()) return r;
  }
  throw std::invalid_argument("RankProfile: unknown bipartition " + cut.to_string());
}

int RankProfile::min_rank() const {
  int m = ranks.empty() ? 0 : ranks.front().second;
  for (const auto& [c, r] : ranks) m = std::min(m, r);
  return m;
}

RankProfile rank_profile(const StateVector& a, double tol) {
  RankProfile profile;
  for (const Bipartition& cut : all_bipartitions(a.N)) {
    profile.ranks.emplace_back(cut, numeric_rank(reshape(a, cut), tol));
  }
  return profile;
}

Verdict classify(const StateVector& a, double tol) {
  bool all_one = true, all_two_plus = true;
  for (const auto& [cut, r] : rank_profile(a, tol).ranks) {
    all_one = all_one && r == 1;
    all_two_plus = all_two_plus && r >= 2;
  }
  if (all_one) return Verdict::product;
  if (all_two_plus) return Verdict::genuinely_entangled;
  return Verdict::entangled;
}

StateVector apply_local(const StateVector& a, const LocalOperator& op) {
  if (static_cast<int>(op.factors.size()) != a.N) {
    throw std::invalid_argument("apply_local: need one factor per party");
  }
  for (const ComplexMatrix& P : op.factors) {
    if (P.rows() != a.d || P.cols() != a.d) {
      throw std::invalid_argument("apply_local: factor is not d x d");
    }
  }
  StateVector out(a.d, a.N);
  MultiIndex target(static_cast<std::size_t>(a.N), 0);
  // Expand each source ket through the nonzero column entries of every factor.
  auto expand = [&](auto&& self, const MultiIndex& src, int party, Complex amp) -> void {
    if (party == a.N) {
      out.terms[target] += amp;
      return;
    }
    const ComplexMatrix& P = op.factors[static_cast<std::size_t>(party)];
    const int col = src[static_cast<std::size_t>(party)];
    for (int row = 0; row < a.d; ++row) {
      const Complex v = P(row, col);
      if (v == Complex(0.0, 0.0)) continue;
      target[static_cast<std::size_t>(party)] = row;
      self(self, src, party + 1, amp * v);
    }
  };
  for (const auto& [idx, amp] : a.terms) expand(expand, idx, 0, amp);
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    it = it->second == Complex(0.0, 0.0) ? out.terms.erase(it) : std::next(it);
  }
  if (out.terms.empty()) {
    throw std::domain_error("apply_local: operator annihilated the state");
  }
  return out;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("equal_up_to_phase: tolerance must be positive");
  if (a.d != b.d || a.N != b.N) return false;
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return false;
  // Least-squares scale: c = <b|a> / <b|b>.
  const Complex c = inner_product(b, a) / Complex(nb * nb, 0.0);
  if (c == Complex(0.0, 0.0)) return false;
  double residual_sq = 0.0;
  std::set<MultiIndex> support;
  for (const auto& [idx, amp] : a.terms) support.insert(idx);
  for (const auto& [idx, amp] : b.terms) support.insert(idx);
  for (const MultiIndex& idx : support) {
    auto ia = a.terms.find(idx);
    auto ib = b.terms.find(idx);
    const Complex va = ia == a.terms.end() ? Complex(0, 0) : ia->second;
    const Complex vb = ib == b.terms.end() ? Complex(0, 0) : ib->second;
    residual_sq += std::norm(va - c * vb);
  }
  return std::sqrt(residual_sq) <= tol * na;
}

namespace {

constexpr Complex kOne{1.0, 0.0};

// exp(-2 pi i e / k) with quarter turns exact.
Complex unit_phase_neg(int e, int k) {
  const int m = ((e % k) + k) % k;
  const int pos = (k - m) % k;
  if (4 * pos % k == 0) {
    static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[4 * pos / k];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * pos / k);
}

}  // namespace

LocalOperator w_witness_three_party(int d, int i, int s) {
  if (d < 2 || i < 1 || i >= d) throw std::invalid_argument("w_witness_three_party: bad level i");
  if (s < 0 || s >= 3) throw std::invalid_argument("w_witness_three_party: s must lie in Z_3");
  // Party k maps |0> -> |0> and |i> -> w_3^{-e_k s} |1> with e = (2, 1, 0).
  const int exponents[3] = {2, 1, 0};
  LocalOperator op;
  for (int e : exponents) {
    ComplexMatrix P = ComplexMatrix::Zero(d, d);
    P(0, 0) = kOne;
    P(1, i) = unit_phase_neg(e * s, 3);
    op.factors.push_back(std::move(P));
  }
  return op;
}

LocalOperator w_witness_four_party(int d, int i, int j, int s) {
  if (d < 2 || i < 1 || i >= d || j < 1 || j >= d || i == j) {
    throw std::invalid_argument("w_witness_four_party: need distinct nonzero levels i, j");
  }
  if (s < 0 || s >= 4) throw std::invalid_argument("w_witness_four_party: s must lie in Z_4");
  // Party k maps |0> -> |0>, |j> -> |0>, |i> -> w_4^{-e_k s} |1>, e = (2, 1, 0, 3).
  const int exponents[4] = {2, 1, 0, 3};
  LocalOperator op;
  for (int e : exponents) {
    ComplexMatrix P = ComplexMatrix::Zero(d, d);
    P(0, 0) = kOne;
    P(0, j) = kOne;
    P(1, i) = unit_phase_neg(e * s, 4);
    op.factors.push_back(std::move(P));
  }
  return op;
}

namespace {

SetReport check_set(const StateSet& set, double tol, bool require_genuine) {
  SetReport report;
  report.check = require_genuine ? "oges" : "oes";
  const std::vector<const StateVector*> states = set.all_states();
  const int n = static_cast<int>(states.size());

  std::vector<double> norms(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) norms[static_cast<std::size_t>(i)] = states[static_cast<std::size_t>(i)]->norm();

  report.worst_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double overlap = std::abs(inner_product(*states[static_cast<std::size_t>(i)],
                                                    *states[static_cast<std::size_t>(j)]));
      const double residual =
          overlap / (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]);
      if (residual > report.worst_residual) {
        report.worst_residual = residual;
        report.worst_pair = {i, j};
      }
    }
  }
  const bool orthogonal = report.worst_residual < tol;

  std::vector<Verdict> verdicts(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    verdicts[i] = classify(*states[i], tol);
  });
  for (int i = 0; i < n; ++i) {
    const Verdict v = verdicts[static_cast<std::size_t>(i)];
    const bool ok = require_genuine ? v == Verdict::genuinely_entangled : v != Verdict::product;
    if (!ok) report.witnesses.push_back(i);
  }
  report.pass = orthogonal && report.witnesses.empty();
  return report;
}

}  // namespace

SetReport verify_oes(const StateSet& set, double tol) { return check_set(set, tol, false); }

SetReport verify_oges(const StateSet& set, double tol) { return check_set(set, tol, true); }

nlohmann::ordered_json SetReport::to_json(const StateSet& set) const {
  nlohmann::ordered_json witness_list = nlohmann::ordered_json::array();
  for (int w : witnesses) {
    const StateSet::StateRef ref = set.locate(w);
    witness_list.push_back(
        {{"family", set.families[static_cast<std::size_t>(ref.family)].representative},
         {"state", ref.s}});
  }
  nlohmann::ordered_json j{{"check", check}, {"pass", pass}, {"worst_residual", worst_residual}};
  if (worst_pair[0] >= 0) {
    const auto a = set.locate(worst_pair[0]);
    const auto b = set.locate(worst_pair[1]);
    j["worst_pair"] = {
        {{"family", set.families[static_cast<std::size_t>(a.family)].representative}, {"state", a.s}},
        {{"family", set.families[static_cast<std::size_t>(b.family)].representative}, {"state", b.s}}};
  }
  j["witnesses"] = std::move(witness_list);
  return j;
}

}  // namespace strongnl
