// Command-line front end: construct state sets, verify orthogonality /
// entanglement / measurement triviality, emit deduction certificates and the
// size-comparison table. Exit codes: 0 pass, 1 fail, 2 usage, 3 indeterminate.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "strongnl/entanglement.hpp"
#include "strongnl/nonlocality.hpp"
#include "strongnl/states.hpp"
#include "strongnl/tables.hpp"
#include "strongnl/version.hpp"

namespace {

using strongnl::StateSet;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

// Emit a report: to --out atomically when given, to stdout otherwise.
void emit(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path) {
    write_atomic(*out_path, content);
  } else {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StateSet build_named_set(const std::string& label, int d, int N) {
  if (label == "B") {
    if (d < 2 || N < 3) throw UsageError("--set B requires --d >= 2 and --N >= 3");
    return strongnl::build_B(d, N);
  }
  if (label == "Bbar4") {
    if (d < 2) throw UsageError("--set Bbar4 requires --d >= 2");
    if (N != 0 && N != 4) throw UsageError("--set Bbar4 is four-partite; omit --N or pass 4");
    return strongnl::build_Bbar4(d);
  }
  if (label == "A18") {
    if ((d != 0 && d != 3) || (N != 0 && N != 3)) {
      throw UsageError("--set A18 is fixed at d=3, N=3");
    }
    return strongnl::build_A18();
  }
  throw UsageError("unknown --set label '" + label + "' (expected B, Bbar4, or A18)");
}

StateSet load_set(const std::string& set_label, const std::string& in_path, int d, int N) {
  if (!in_path.empty() && !set_label.empty()) {
    throw UsageError("pass either --set or --in, not both");
  }
  if (!in_path.empty()) return strongnl::deserialize(read_file(in_path));
  if (!set_label.empty()) return build_named_set(set_label, d, N);
  throw UsageError("one of --set or --in is required");
}

json report_header(const char* command, double tol) {
  return json{{"tool", strongnl::kToolName},
              {"version", strongnl::kToolVersion},
              {"command", command},
              {"tolerance", tol},
              {"conventions",
               json{{"basis_order", "lexicographic sub-indices, parties ascending"},
                    {"family_order", "set order (sorted representatives for built sets)"},
                    {"state_order", "coefficient rows, s ascending"}}}};
}

json set_summary(const StateSet& set) {
  return json{{"label", set.label},
              {"d", set.d},
              {"N", set.N},
              {"states", set.size()},
              {"families", set.families.size()}};
}

// ---- construct ----

int run_construct(const std::string& set_label, int d, int N,
                  const std::optional<std::string>& out_path) {
  const StateSet set = build_named_set(set_label, d, N);
  const std::string text = strongnl::serialize(set);
  if (out_path) {
    write_atomic(*out_path, text);
    std::cout << "constructed " << set.label << " d=" << set.d << " N=" << set.N << ": "
              << set.size() << " states in " << set.families.size() << " families -> "
              << *out_path << "\n";
  } else {
    std::cout << text << "\n";
    std::cerr << "constructed " << set.label << " d=" << set.d << " N=" << set.N << ": "
              << set.size() << " states in " << set.families.size() << " families\n";
  }
  return kExitPass;
}

// ---- verify ----

std::string verify_text(const json& report) {
  std::ostringstream out;
  const auto& set = report["set"];
  out << "set " << set["label"].get<std::string>() << " d=" << set["d"] << " N=" << set["N"]
      << " (" << set["states"] << " states, " << set["families"] << " families)\n";
  out << "tolerance " << report["tolerance"].get<double>() << "\n";
  for (const auto& check : report["checks"]) {
    const std::string name = check["check"].get<std::string>();
    out << "check " << name << ": ";
    if (check.contains("indeterminate") && check["indeterminate"].get<bool>()) {
      out << "INDETERMINATE";
    } else {
      out << (check["pass"].get<bool>() ? "PASS" : "FAIL");
    }
    if (check.contains("worst_residual")) {
      out << " (worst residual " << check["worst_residual"].get<double>() << ")";
    }
    if (check.contains("witnesses") && !check["witnesses"].empty()) {
      out << " witnesses " << check["witnesses"].dump();
    }
    if (check.contains("groups")) {
      out << "\n";
      for (const auto& g : check["groups"]) {
        out << "  group " << g["parties"].dump() << ": " << g["verdict"].get<std::string>()
            << " (null dim " << g["null_dim"] << ")";
        if (g.contains("note")) out << " -- " << g["note"].get<std::string>();
        out << "\n";
      }
      continue;
    }
    out << "\n";
  }
  out << "overall: "
      << (report["pass"].get<bool>() ? "PASS"
                                     : (report["indeterminate"].get<bool>() ? "INDETERMINATE"
                                                                            : "FAIL"))
      << "\n";
  return out.str();
}

std::string verify_csv(const json& report) {
  std::ostringstream out;
  out << "check,result,detail\n";
  for (const auto& check : report["checks"]) {
    const bool indet = check.contains("indeterminate") && check["indeterminate"].get<bool>();
    out << check["check"].get<std::string>() << ','
        << (indet ? "indeterminate" : (check["pass"].get<bool>() ? "pass" : "fail")) << ',';
    if (check.contains("worst_residual")) out << "worst_residual=" << check["worst_residual"];
    out << '\n';
  }
  return out.str();
}

int run_verify(const StateSet& set, bool oes, bool oges, bool strongest, bool exhaustive,
               double tol, const std::string& format, const std::optional<std::string>& out_path) {
  if (!oes && !oges && !strongest) {
    throw UsageError("verify: request at least one of --oes, --oges, --strongest");
  }
  json report = report_header("verify", tol);
  report["set"] = set_summary(set);
  report["checks"] = json::array();
  bool pass = true;
  bool indeterminate = false;

  if (oes) {
    const strongnl::SetReport r = strongnl::verify_oes(set, tol);
    report["checks"].push_back(r.to_json(set));
    pass = pass && r.pass;
  }
  if (oges) {
    const strongnl::SetReport r = strongnl::verify_oges(set, tol);
    report["checks"].push_back(r.to_json(set));
    pass = pass && r.pass;
  }
  if (strongest) {
    const strongnl::StrongestReport r = strongnl::verify_strongest(set, tol, exhaustive);
    json jr = r.to_json();
    jr["indeterminate"] = r.indeterminate;
    report["checks"].push_back(std::move(jr));
    pass = pass && r.pass;
    indeterminate = indeterminate || r.indeterminate;
  }
  report["pass"] = pass;
  report["indeterminate"] = indeterminate;

  if (format == "json") {
    emit(out_path, report.dump(2));
  } else if (format == "csv") {
    emit(out_path, verify_csv(report));
  } else {
    emit(out_path, verify_text(report));
  }
  if (!pass && !indeterminate) return kExitFail;
  if (indeterminate) return kExitIndeterminate;
  return kExitPass;
}

// ---- prove ----

std::string prove_text(const json& log) {
  std::ostringstream out;
  out << "deduction for set " << log["set"].get<std::string>() << ", group "
      << log["group"].dump() << ": " << (log["proved"].get<bool>() ? "PROVED" : "STUCK") << "\n";
  out << "zeros " << log["zeros_proved"] << "/" << log["off_diagonal_pairs"]
      << ", diagonal classes " << log["diagonal_classes"] << "\n";
  for (const auto& e : log["entries"]) {
    out << "  " << e["rule"].get<std::string>() << " " << e["families"].dump() << " zeros+"
        << e["zeros_added"].size() << " merged " << e["diagonals_merged"].size() << "\n";
  }
  return out.str();
}

std::string prove_csv(const json& log) {
  std::ostringstream out;
  out << "rule,families,zeros_added,diagonals_merged\n";
  for (const auto& e : log["entries"]) {
    out << e["rule"].get<std::string>() << ',' << '"' << e["families"].dump() << '"' << ','
        << e["zeros_added"].size() << ',' << e["diagonals_merged"].size() << '\n';
  }
  return out.str();
}

int run_prove(const StateSet& set, int group_index, double tol, const std::string& format,
              const std::optional<std::string>& out_path) {
  if (group_index < 1 || group_index > set.N) {
    throw UsageError("--group must name a party in 1.." + std::to_string(set.N));
  }
  const strongnl::MeasurementGroup group = strongnl::MeasurementGroup::all_but(group_index, set.N);
  const strongnl::DeduceResult res = strongnl::deduce_fixpoint(set, group);
  json log = report_header("prove", tol);
  log.update(strongnl::proof_log_json(set, group, res));

  if (format == "text") {
    emit(out_path, prove_text(log));
  } else if (format == "csv") {
    emit(out_path, prove_csv(log));
  } else {
    emit(out_path, log.dump(2));
  }
  return res.proved ? kExitPass : kExitFail;
}

// ---- table ----

int run_table(int d_min, int d_max, const std::string& format,
              const std::optional<std::string>& out_path) {
  const auto rows = strongnl::comparison_table(d_min, d_max);
  if (format == "json") {
    emit(out_path, strongnl::table_to_json(rows).dump(2));
  } else if (format == "csv") {
    emit(out_path, strongnl::table_to_csv(rows));
  } else {
    emit(out_path, strongnl::table_to_text(rows));
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction and verification toolkit for strongly nonlocal "
               "orthogonal entangled state sets"};
  app.require_subcommand(1);

  std::string set_label, in_path, format = "text", out_str;
  int d = 0, N = 0, group_index = 1, d_max = 0;
  double tol = strongnl::kDefaultTol;
  bool oes = false, oges = false, strongest = false, exhaustive = false;

  auto add_common = [&](CLI::App* cmd, bool with_input) {
    cmd->add_option("--tol", tol, "relative tolerance (default 1e-9)");
    cmd->add_option("--out", out_str, "output path (atomic write); stdout when omitted");
    cmd->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    if (with_input) {
      cmd->add_option("--set", set_label, "built-in construction: B | Bbar4 | A18");
      cmd->add_option("--d", d, "local dimension");
      cmd->add_option("--N", N, "party count");
      cmd->add_option("--in", in_path, "read a serialized state-set file instead of --set");
    }
  };

  CLI::App* construct = app.add_subcommand("construct", "build a set and write its JSON");
  add_common(construct, true);

  CLI::App* verify =
      app.add_subcommand("verify", "run orthogonality/entanglement/triviality checks");
  add_common(verify, true);
  verify->add_flag("--oes", oes, "check pairwise orthogonality and no-product-state");
  verify->add_flag("--oges", oges, "check orthogonality and genuine entanglement");
  verify->add_flag("--strongest", strongest, "check measurement triviality per party group");
  verify->add_flag("--exhaustive", exhaustive,
                   "triviality for every nonempty proper party subset");

  CLI::App* prove = app.add_subcommand("prove", "emit a deduction certificate for group all-but-i");
  add_common(prove, true);
  prove->add_option("--group", group_index, "excluded party i (group = all parties but i)");

  CLI::App* table =
      app.add_subcommand("table", "size comparison against known product-set constructions");
  add_common(table, false);
  table->add_option("--d", d, "smallest local dimension")->required();
  table->add_option("--d-max", d_max, "largest local dimension (default: --d)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::optional<std::string> out_path =
      out_str.empty() ? std::nullopt : std::optional<std::string>(out_str);
  try {
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    if (construct->parsed()) {
      if (!in_path.empty()) throw UsageError("construct takes --set, not --in");
      if (set_label.empty()) throw UsageError("construct requires --set");
      return run_construct(set_label, d, N, out_path);
    }
    if (verify->parsed()) {
      return run_verify(load_set(set_label, in_path, d, N), oes, oges, strongest, exhaustive, tol,
                        format, out_path);
    }
    if (prove->parsed()) {
      return run_prove(load_set(set_label, in_path, d, N), group_index, tol, format, out_path);
    }
    if (table->parsed()) {
      return run_table(d, d_max == 0 ? d : d_max, format, out_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const strongnl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
