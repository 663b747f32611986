#include "strongnl/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace strongnl {

Bipartition Bipartition::of(std::vector<int> left_parties, int party_count) {
  std::sort(left_parties.begin(), left_parties.end());
  if (left_parties.empty() ||
      std::adjacent_find(left_parties.begin(), left_parties.end()) != left_parties.end() ||
      left_parties.front() < 1 || left_parties.back() > party_count) {
    throw std::invalid_argument("Bipartition: left side must be a nonempty subset of {1..N}");
  }
  std::vector<int> right;
  for (int p = 1; p <= party_count; ++p) {
    if (!std::binary_search(left_parties.begin(), left_parties.end(), p)) right.push_back(p);
  }
  if (right.empty()) {
    throw std::invalid_argument("Bipartition: right side must be nonempty");
  }
  return Bipartition{std::move(left_parties), std::move(right)};
}

std::string Bipartition::to_string() const {
  std::ostringstream out;
  auto side = [&out](const std::vector<int>& parties) {
    out << '{';
    for (std::size_t k = 0; k < parties.size(); ++k) {
      if (k > 0) out << ',';
      out << parties[k];
    }
    out << '}';
  };
  side(left);
  out << '|';
  side(right);
  return out.str();
}

std::vector<Bipartition> all_bipartitions(int party_count) {
  if (party_count < 2) throw std::invalid_argument("all_bipartitions: need N >= 2");
  std::vector<Bipartition> cuts;
  const unsigned full = (1u << (party_count - 1)) - 1u;  // subsets of {2..N}
  for (unsigned mask = 0; mask < full; ++mask) {
    std::vector<int> left{1};
    for (int p = 2; p <= party_count; ++p) {
      if (mask & (1u << (p - 2))) left.push_back(p);
    }
    cuts.push_back(Bipartition::of(std::move(left), party_count));
  }
  return cuts;
}

StateVector StateVector::basis_state(int d, const MultiIndex& idx) {
  StateVector v(d, static_cast<int>(idx.size()));
  v.add_term(idx, Complex(1.0, 0.0));
  return v;
}

void StateVector::add_term(const MultiIndex& idx, Complex amp) {
  if (static_cast<int>(idx.size()) != N || !entries_in_range(idx, d)) {
    throw std::invalid_argument("StateVector: index does not match (d, N)");
  }
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
    throw std::invalid_argument("StateVector: amplitude must be finite");
  }
  terms[idx] += amp;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& [idx, amp] : terms) s += std::norm(amp);
  return std::sqrt(s);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.d != b.d || a.N != b.N) {
    throw std::invalid_argument("inner_product: states live in different spaces");
  }
  Complex acc(0.0, 0.0);
  // Walk the smaller term map and probe the other.
  const StateVector& small = a.terms.size() <= b.terms.size() ? a : b;
  const StateVector& large = a.terms.size() <= b.terms.size() ? b : a;
  for (const auto& [idx, amp] : small.terms) {
    auto it = large.terms.find(idx);
    if (it == large.terms.end()) continue;
    const Complex& aa = (&small == &a) ? amp : it->second;
    const Complex& bb = (&small == &a) ? it->second : amp;
    acc += std::conj(aa) * bb;
  }
  return acc;
}

ComplexMatrix reshape(const StateVector& a, const Bipartition& cut) {
  if (static_cast<int>(cut.left.size() + cut.right.size()) != a.N) {
    throw std::invalid_argument("reshape: cut does not match the state's party count");
  }
  const std::size_t rows = pow_sz(a.d, static_cast<int>(cut.left.size()));
  const std::size_t cols = pow_sz(a.d, static_cast<int>(cut.right.size()));
  ComplexMatrix M = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows),
                                        static_cast<Eigen::Index>(cols));
  for (const auto& [idx, amp] : a.terms) {
    const std::size_t r = lex_rank(sub_index(idx, cut.left), a.d);
    const std::size_t c = lex_rank(sub_index(idx, cut.right), a.d);
    M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += amp;
  }
  return M;
}

StateVector ghz_state(int d, int N) {
  StateVector v(d, N);
  for (int i = 0; i < d; ++i) {
    v.add_term(MultiIndex(static_cast<std::size_t>(N), i), Complex(1.0, 0.0));
  }
  return v;
}

StateVector w_state(int d, int N) {
  if (d < 2) throw std::invalid_argument("w_state: need d >= 2");
  StateVector v(d, N);
  for (int k = 0; k < N; ++k) {
    MultiIndex idx(static_cast<std::size_t>(N), 0);
    idx[static_cast<std::size_t>(k)] = 1;
    v.add_term(idx, Complex(1.0, 0.0));
  }
  return v;
}

}  // namespace strongnl
