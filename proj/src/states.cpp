#include "strongnl/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace strongnl {

void CoefficientMatrix::validate() const {
  const int k = order();
  if (k == 0 || entries.cols() != k) {
    throw std::invalid_argument("CoefficientMatrix: must be square and nonempty");
  }
  double max_abs = 0.0;
  for (int s = 0; s < k; ++s) {
    for (int j = 0; j < k; ++j) max_abs = std::max(max_abs, std::abs(entries(s, j)));
  }
  for (int s = 0; s < k; ++s) {
    for (int j = 0; j < k; ++j) {
      if (entries(s, j) == Complex(0.0, 0.0)) {
        throw std::invalid_argument("CoefficientMatrix: zero entry at row " +
                                    std::to_string(s) + ", column " + std::to_string(j));
      }
    }
  }
  for (int s = 0; s < k; ++s) {
    for (int t = s + 1; t < k; ++t) {
      const Complex overlap = entries.row(s).dot(entries.row(t));
      if (std::abs(overlap) > 1e-12 * max_abs * max_abs * k) {
        throw std::invalid_argument("CoefficientMatrix: rows " + std::to_string(s) + " and " +
                                    std::to_string(t) + " are not orthogonal");
      }
    }
  }
}

CoefficientMatrix dft_matrix(int k) {
  if (k < 1) throw std::domain_error("dft_matrix: order must be >= 1");
  ComplexMatrix B(k, k);
  for (int s = 0; s < k; ++s) {
    for (int j = 0; j < k; ++j) {
      const int e = (s * j) % k;
      if (4 * e % k == 0) {
        // Quarter-turn phases come out exactly: 1, i, -1, -i.
        static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        B(s, j) = quarter[4 * e / k];
      } else {
        B(s, j) = std::polar(1.0, 2.0 * std::numbers::pi * e / k);
      }
    }
  }
  return CoefficientMatrix{std::move(B)};
}

StateFamily family_from_elements(int d, MultiIndex representative,
                                 std::vector<MultiIndex> elements, CoefficientMatrix coeffs) {
  coeffs.validate();
  const int k = coeffs.order();
  if (static_cast<int>(elements.size()) != k) {
    throw std::invalid_argument("family_from_elements: element count must match matrix order");
  }
  if (elements.empty()) throw std::invalid_argument("family_from_elements: no elements");
  const int N = static_cast<int>(elements.front().size());
  std::set<MultiIndex> distinct(elements.begin(), elements.end());
  if (static_cast<int>(distinct.size()) != k) {
    throw std::invalid_argument("family_from_elements: repeated element");
  }
  StateFamily fam{std::move(representative), std::move(elements), std::move(coeffs), {}};
  fam.states.reserve(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) {
    StateVector psi(d, N);
    for (int j = 0; j < k; ++j) {
      psi.add_term(fam.elements[static_cast<std::size_t>(j)], fam.coeffs.entries(s, j));
    }
    fam.states.push_back(std::move(psi));
  }
  return fam;
}

StateFamily family_from_orbit(const Orbit& o, int d) {
  const bool zero_orbit =
      o.size() == 1 && !o.representative.empty() &&
      std::all_of(o.representative.begin(), o.representative.end(), [](int e) { return e == 0; });
  if (zero_orbit) {
    MultiIndex ones(o.representative.size(), 1);
    return family_from_elements(d, o.representative, {o.representative, ones}, dft_matrix(2));
  }
  return family_from_elements(d, o.representative, o.elements, dft_matrix(o.size()));
}

int StateSet::size() const {
  int n = 0;
  for (const StateFamily& f : families) n += static_cast<int>(f.states.size());
  return n;
}

std::vector<const StateVector*> StateSet::all_states() const& {
  std::vector<const StateVector*> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (const StateFamily& f : families) {
    for (const StateVector& psi : f.states) out.push_back(&psi);
  }
  return out;
}

StateSet::StateRef StateSet::locate(int flat_index) const {
  int remaining = flat_index;
  for (int f = 0; f < static_cast<int>(families.size()); ++f) {
    const int n = static_cast<int>(families[static_cast<std::size_t>(f)].states.size());
    if (remaining < n) return StateRef{f, remaining};
    remaining -= n;
  }
  throw std::out_of_range("StateSet::locate: index past the last state");
}

StateSet build_B(int d, int N) {
  if (d < 2 || N < 3) throw std::invalid_argument("build_B: requires d >= 2 and N >= 3");
  StateSet set{d, N, "B", {}};
  for (const Orbit& o : partition(d, N).orbits) {
    set.families.push_back(family_from_orbit(o, d));
  }
  return set;
}

namespace {

CoefficientMatrix genuine_four_party_coeffs() {
  ComplexMatrix B(4, 4);
  B << 1, 1, 1, 2,
       1, -1, 2, -1,
       5, 5, -2, -4,
       5, -5, -4, 2;
  return CoefficientMatrix{std::move(B)};
}

}  // namespace

StateSet build_Bbar4(int d) {
  if (d < 2) throw std::invalid_argument("build_Bbar4: requires d >= 2");
  StateSet set = build_B(d, 4);
  set.label = "Bbar4";
  for (int i = 1; i < d; ++i) {
    const MultiIndex rep{0, 0, i, i};
    const std::vector<MultiIndex> expected{{0, 0, i, i}, {0, i, i, 0}, {i, i, 0, 0}, {i, 0, 0, i}};
    auto fam = std::find_if(set.families.begin(), set.families.end(),
                            [&](const StateFamily& f) { return f.representative == rep; });
    if (fam == set.families.end() || fam->elements != expected) {
      // The coefficient columns are aligned to this exact shift ordering; a
      // different ordering would silently scramble the construction.
      throw std::logic_error("build_Bbar4: orbit ordering of (0,0,i,i) not as expected");
    }
    *fam = family_from_elements(d, rep, expected, genuine_four_party_coeffs());
  }
  return set;
}

StateSet build_A18() {
  const std::vector<std::vector<MultiIndex>> element_table = {
      {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}},
      {{0, 0, 2}, {0, 2, 0}, {2, 0, 0}},
      {{0, 1, 1}, {1, 1, 0}, {1, 0, 1}},
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
      {{1, 0, 2}, {0, 2, 1}, {2, 1, 0}},
      {{1, 2, 2}, {2, 2, 1}, {2, 1, 2}},
  };
  StateSet set{3, 3, "A18", {}};
  for (const auto& elements : element_table) {
    set.families.push_back(family_from_elements(3, elements.front(), elements, dft_matrix(3)));
  }
  return set;
}

namespace {

using json = nlohmann::ordered_json;

json state_to_json(const StateVector& psi) {
  json terms = json::array();
  for (const auto& [idx, amp] : psi.terms) {
    terms.push_back(json{{"index", idx}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return json{{"terms", std::move(terms)}};
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

StateVector state_from_json(const json& j, int d, int N, const std::string& where) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    parse_fail(where, "expected an object with a \"terms\" array");
  }
  if (j["terms"].empty()) parse_fail(where, "state has no terms");
  StateVector psi(d, N);
  int t = 0;
  for (const json& term : j["terms"]) {
    const std::string here = where + ".terms[" + std::to_string(t++) + "]";
    if (!term.is_object() || !term.contains("index") || !term.contains("re") ||
        !term.contains("im")) {
      parse_fail(here, "expected {index, re, im}");
    }
    MultiIndex idx;
    try {
      idx = term["index"].get<MultiIndex>();
    } catch (const nlohmann::json::exception&) {
      parse_fail(here + ".index", "expected an array of integers");
    }
    if (static_cast<int>(idx.size()) != N) {
      parse_fail(here + ".index", "length " + std::to_string(idx.size()) +
                                      " does not match N=" + std::to_string(N));
    }
    if (!entries_in_range(idx, d)) {
      parse_fail(here + ".index", "entry out of range for d=" + std::to_string(d));
    }
    if (!term["re"].is_number() || !term["im"].is_number()) {
      parse_fail(here, "re/im must be numbers");
    }
    const Complex amp(term["re"].get<double>(), term["im"].get<double>());
    if (psi.terms.count(idx)) parse_fail(here + ".index", "duplicate index in one state");
    psi.add_term(idx, amp);
  }
  if (psi.norm() == 0.0) parse_fail(where, "state has zero norm");
  return psi;
}

// Recover the element list and coefficient matrix from the family's states:
// elements are the sorted union of term indices, coefficients the amplitudes.
// Only possible when the family is square and every state is supported on the
// common element list.
void reconstruct_family_structure(StateFamily& fam) {
  std::set<MultiIndex> support;
  for (const StateVector& psi : fam.states) {
    for (const auto& [idx, amp] : psi.terms) support.insert(idx);
  }
  if (support.size() != fam.states.size()) return;
  std::vector<MultiIndex> elements(support.begin(), support.end());
  const int k = static_cast<int>(elements.size());
  ComplexMatrix coeffs = ComplexMatrix::Zero(k, k);
  for (int s = 0; s < k; ++s) {
    const StateVector& psi = fam.states[static_cast<std::size_t>(s)];
    for (int j = 0; j < k; ++j) {
      auto it = psi.terms.find(elements[static_cast<std::size_t>(j)]);
      if (it != psi.terms.end()) coeffs(s, j) = it->second;
    }
  }
  CoefficientMatrix cm{std::move(coeffs)};
  try {
    cm.validate();
  } catch (const std::invalid_argument&) {
    return;  // not a family shape the deduction rules accept
  }
  fam.elements = std::move(elements);
  fam.coeffs = std::move(cm);
}

}  // namespace

std::string serialize(const StateSet& set) {
  json families = json::array();
  for (const StateFamily& fam : set.families) {
    json states = json::array();
    for (const StateVector& psi : fam.states) states.push_back(state_to_json(psi));
    families.push_back(json{{"representative", fam.representative}, {"states", std::move(states)}});
  }
  const json root{{"label", set.label}, {"d", set.d}, {"N", set.N}, {"families", std::move(families)}};
  return root.dump();
}

StateSet deserialize(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!root.is_object()) parse_fail("$", "expected a JSON object");
  for (const char* key : {"label", "d", "N", "families"}) {
    if (!root.contains(key)) parse_fail("$", std::string("missing key \"") + key + "\"");
  }
  if (!root["label"].is_string()) parse_fail("$.label", "expected a string");
  if (!root["d"].is_number_integer() || !root["N"].is_number_integer()) {
    parse_fail("$", "d and N must be integers");
  }
  StateSet set{root["d"].get<int>(), root["N"].get<int>(), root["label"].get<std::string>(), {}};
  if (set.d < 2 || set.N < 2) parse_fail("$", "need d >= 2 and N >= 2");
  if (!root["families"].is_array()) parse_fail("$.families", "expected an array");
  int f = 0;
  for (const json& jf : root["families"]) {
    const std::string where = "$.families[" + std::to_string(f++) + "]";
    if (!jf.is_object() || !jf.contains("representative") || !jf.contains("states")) {
      parse_fail(where, "expected {representative, states}");
    }
    StateFamily fam;
    try {
      fam.representative = jf["representative"].get<MultiIndex>();
    } catch (const nlohmann::json::exception&) {
      parse_fail(where + ".representative", "expected an array of integers");
    }
    if (!jf["states"].is_array() || jf["states"].empty()) {
      parse_fail(where + ".states", "expected a nonempty array");
    }
    int s = 0;
    for (const json& js : jf["states"]) {
      fam.states.push_back(
          state_from_json(js, set.d, set.N, where + ".states[" + std::to_string(s++) + "]"));
    }
    reconstruct_family_structure(fam);
    set.families.push_back(std::move(fam));
  }
  return set;
}

}  // namespace strongnl
