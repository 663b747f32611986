#pragma once

// Size-comparison rows: published strongly nonlocal product-set sizes versus
// the genuinely entangled sets built here, for three and four equal parties.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace strongnl {

struct TableRow {
  int d = 0;
  int N = 0;
  std::string system;      // e.g. "3x3x3"
  long long ops_size = 0;  // known product-set size: 6(d-1)^2 for N=3, d^4-(d-2)^4 for N=4
  long long oges_size = 0; // d^N - (d-1)^N + 1
  std::optional<long long> special_oges_size;  // the 18-state set, d = 3, N = 3 only
};

std::vector<TableRow> comparison_table(int d_min, int d_max);

nlohmann::ordered_json table_to_json(const std::vector<TableRow>& rows);
std::string table_to_csv(const std::vector<TableRow>& rows);
std::string table_to_text(const std::vector<TableRow>& rows);

}  // namespace strongnl
