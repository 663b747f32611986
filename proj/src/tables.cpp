#include "strongnl/tables.hpp"

#include <sstream>
#include <stdexcept>

namespace strongnl {

namespace {

long long ipow(long long base, int exponent) {
  long long r = 1;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

std::string system_name(int d, int N) {
  std::ostringstream out;
  for (int k = 0; k < N; ++k) {
    if (k > 0) out << 'x';
    out << d;
  }
  return out.str();
}

}  // namespace

std::vector<TableRow> comparison_table(int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) {
    throw std::invalid_argument("comparison_table: need 2 <= d_min <= d_max");
  }
  std::vector<TableRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    TableRow three{d, 3, system_name(d, 3), 6ll * (d - 1) * (d - 1),
                   ipow(d, 3) - ipow(d - 1, 3) + 1, std::nullopt};
    if (d == 3) three.special_oges_size = 18;
    rows.push_back(std::move(three));
    rows.push_back(TableRow{d, 4, system_name(d, 4), ipow(d, 4) - ipow(d - 2, 4),
                            ipow(d, 4) - ipow(d - 1, 4) + 1, std::nullopt});
  }
  return rows;
}

nlohmann::ordered_json table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const TableRow& r : rows) {
    nlohmann::ordered_json row{{"d", r.d},
                               {"N", r.N},
                               {"system", r.system},
                               {"ops_size", r.ops_size},
                               {"oges_size", r.oges_size}};
    if (r.special_oges_size) row["special_oges_size"] = *r.special_oges_size;
    out.push_back(std::move(row));
  }
  return out;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "d,N,system,ops_size,oges_size,special_oges_size\n";
  for (const TableRow& r : rows) {
    out << r.d << ',' << r.N << ',' << r.system << ',' << r.ops_size << ',' << r.oges_size << ',';
    if (r.special_oges_size) out << *r.special_oges_size;
    out << '\n';
  }
  return out.str();
}

std::string table_to_text(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "system        product-set size   entangled-set size   special\n";
  for (const TableRow& r : rows) {
    out << r.system;
    for (std::size_t k = r.system.size(); k < 14; ++k) out << ' ';
    std::string ops = std::to_string(r.ops_size);
    out << ops;
    for (std::size_t k = ops.size(); k < 19; ++k) out << ' ';
    std::string oges = std::to_string(r.oges_size);
    out << oges;
    for (std::size_t k = oges.size(); k < 21; ++k) out << ' ';
    if (r.special_oges_size) out << *r.special_oges_size;
    out << '\n';
  }
  return out.str();
}

}  // namespace strongnl
