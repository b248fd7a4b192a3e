// nfold: command-line front end for the combinatorial n-fold solver.
//
// Exit codes:
//   0  success (an infeasible program is a successful answer)
//   1  --oracle disagreement or a failed audit
//   2  parse, validation or domain error
//   3  size limit exceeded (oracle budget, window box, arrangement search)
//   4  arithmetic overflow

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfold/nfold.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nfold;

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitSizeLimit = 3;
constexpr int kExitOverflow = 4;

std::uint64_t enumeration_budget() {
  const char* env = std::getenv("NFOLD_ENUM_BUDGET");
  if (!env || !*env) return kDefaultEnumerationBudget;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw io::ParseError("NFOLD_ENUM_BUDGET must be a non-negative integer");
  }
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

ordered_json audit_to_json(const AuditReport& report) {
  ordered_json a;
  a["block_reordering"] = verdict_name(report.block_reordering);
  a["path_in_windows"] = verdict_name(report.path_in_windows);
  a["interleaving"] = verdict_name(report.interleaving);
  a["passed"] = report.passed();
  return a;
}

int cmd_solve(const std::string& path, bool with_oracle, bool with_stats, bool with_audit) {
  NFoldInstance inst = io::load_instance(path);
  require_valid(inst);
  GeneralSolveOutcome result = solve_general_with_stats(inst);
  ordered_json doc = io::result_to_json(result.solution, with_stats ? &result.stats : nullptr);
  int status = 0;

  if (with_audit) {
    if (!result.solution) {
      doc["audit"] = nullptr;
    } else if (!inst.is_equality_form()) {
      // The audit checks equality-form programs; mixed input is audited on its reduction.
      auto [reduced, map] = reduce_to_equality(inst);
      auto inner = solve_with_stats(reduced);
      auto report = audit_solution(reduced, *inner.solution, inner.path_columns);
      doc["audit"] = audit_to_json(report);
      if (!report.passed()) status = kExitMismatch;
    } else {
      auto inner = solve_with_stats(inst);
      auto report = audit_solution(inst, *inner.solution, inner.path_columns);
      doc["audit"] = audit_to_json(report);
      if (!report.passed()) status = kExitMismatch;
    }
  }

  if (with_oracle) {
    auto reference = brute_force_solve_p2(inst, enumeration_budget());
    bool agrees = reference.has_value() == result.solution.has_value() &&
                  (!reference || reference->objective == result.solution->objective);
    ordered_json o;
    o["status"] = reference ? "optimal" : "infeasible";
    o["objective"] = reference ? ordered_json(reference->objective) : ordered_json(nullptr);
    o["agrees"] = agrees;
    doc["oracle"] = std::move(o);
    if (!agrees) status = kExitMismatch;
  }
  emit(doc);
  return status;
}

int cmd_oracle(const std::string& path) {
  NFoldInstance inst = io::load_instance(path);
  require_valid(inst);
  emit(io::result_to_json(brute_force_solve_p2(inst, enumeration_budget())));
  return 0;
}

int cmd_audit(const std::string& path) {
  NFoldInstance inst = io::load_instance(path);
  require_valid(inst);
  NFoldInstance target = inst.is_equality_form() ? inst : reduce_to_equality(inst).first;
  auto outcome = solve_with_stats(target);
  ordered_json doc = io::result_to_json(outcome.solution);
  if (!outcome.solution) {
    doc["audit"] = nullptr;
    emit(doc);
    return 0;
  }
  auto report = audit_solution(target, *outcome.solution, outcome.path_columns);
  doc["audit"] = audit_to_json(report);
  emit(doc);
  return report.passed() ? 0 : kExitMismatch;
}

int cmd_lobbying(const std::string& path, Int budget) {
  auto rows = io::parse_binary_matrix(io::read_file(path));
  std::size_t issues = rows.empty() ? 0 : rows.front().size();
  lobbying::LobbyingInstance inst(rows, issues, budget);
  auto result = lobbying::lobbying_solve(inst);
  ordered_json doc;
  doc["answer"] = result.yes ? "yes" : "no";
  doc["budget"] = budget;
  doc["objective"] = result.optimum ? ordered_json(*result.optimum) : ordered_json(nullptr);
  auto flips = ordered_json::array();
  for (std::size_t i = 0; i < result.flips.size(); ++i) {
    std::string row;
    for (int v : inst.type(i)) row.push_back(static_cast<char>('0' + v));
    ordered_json f;
    f["row"] = row;
    f["voters"] = inst.multiplicity(i);
    f["influenced"] = result.flips[i];
    flips.push_back(std::move(f));
  }
  doc["flips"] = std::move(flips);
  emit(doc);
  return 0;
}

int report_strings(const strings::MultiStringsInstance& inst) {
  auto result = strings::multistrings_solve(inst);
  ordered_json doc;
  if (!result) {
    doc["status"] = "infeasible";
    doc["output"] = nullptr;
    doc["objective"] = nullptr;
  } else {
    doc["status"] = "found";
    doc["output"] = result->output;
    doc["objective"] = result->objective;
    auto d = ordered_json::array();
    for (const auto& s : inst.strings) d.push_back(strings::string_distance(inst.distance, s, result->output));
    doc["distances"] = std::move(d);
  }
  emit(doc);
  return 0;
}

int cmd_closest_string(const std::string& path, Int radius) {
  auto file = io::parse_strings_file(io::read_file(path));
  return report_strings(strings::closest_string_instance(file.strings, radius, file.alphabet));
}

int cmd_multistrings(const std::string& path) {
  return report_strings(io::to_multistrings(io::parse_strings_file(io::read_file(path))));
}

int cmd_eqcolor(const std::string& path, std::size_t colors, const std::string& cover_list) {
  io::NamedGraph g = io::parse_graph(io::read_file(path));
  coloring::EquitableColoringInstance inst{g.graph, colors, {}};
  if (cover_list.empty()) {
    inst.cover = coloring::minimum_vertex_cover(g.graph);
  } else {
    std::stringstream in(cover_list);
    std::string name;
    while (std::getline(in, name, ','))
      if (!name.empty()) inst.cover.push_back(g.id(name));
  }
  auto result = coloring::equitable_coloring_solve(inst);
  ordered_json doc;
  doc["answer"] = result.yes ? "yes" : "no";
  doc["colors"] = colors;
  auto cover = ordered_json::array();
  for (std::size_t v : inst.cover) cover.push_back(g.names[v]);
  doc["cover"] = std::move(cover);
  if (result.yes) {
    ordered_json col;
    for (std::size_t v = 0; v < g.names.size(); ++v) col[g.names[v]] = result.coloring[v] + 1;
    doc["coloring"] = std::move(col);
  } else {
    doc["coloring"] = nullptr;
  }
  emit(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for combinatorial n-fold integer programs"};
  app.require_subcommand(1);

  std::string path;
  bool with_oracle = false, with_stats = false, with_audit = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", path, "JSON instance file")->required();
  solve->add_flag("--oracle", with_oracle, "cross-check against exhaustive search");
  solve->add_flag("--stats", with_stats, "include solver counters");
  solve->add_flag("--audit", with_audit, "check partial-sum bounds of the witness");

  auto* oracle = app.add_subcommand("oracle", "Solve an instance file by exhaustive search");
  oracle->add_option("instance", path, "JSON instance file")->required();

  auto* audit = app.add_subcommand("audit", "Solve and audit the witness's partial sums");
  audit->add_option("instance", path, "JSON instance file")->required();

  Int budget = 0;
  auto* lobby = app.add_subcommand("lobbying", "Lobbying on a binary voter/issue matrix");
  lobby->add_option("matrix", path, "matrix file")->required();
  lobby->add_option("--k", budget, "number of voters that may be influenced")->required();

  Int radius = 0;
  auto* closest = app.add_subcommand("closest-string", "Closest string under Hamming distance");
  closest->add_option("strings", path, "strings file")->required();
  closest->add_option("--d", radius, "distance bound")->required();

  auto* multi = app.add_subcommand("multistrings", "General multi-string problem");
  multi->add_option("strings", path, "strings file with bounds")->required();

  std::size_t colors = 0;
  std::string cover;
  auto* eq = app.add_subcommand("eqcolor", "Equitable coloring parameterized by a vertex cover");
  eq->add_option("graph", path, "graph file")->required();
  eq->add_option("--colors", colors, "number of colors")->required();
  eq->add_option("--cover", cover, "comma-separated vertex cover (default: a minimum one)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(path, with_oracle, with_stats, with_audit);
    if (*oracle) return cmd_oracle(path);
    if (*audit) return cmd_audit(path);
    if (*lobby) return cmd_lobbying(path, budget);
    if (*closest) return cmd_closest_string(path, radius);
    if (*multi) return cmd_multistrings(path);
    if (*eq) return cmd_eqcolor(path, colors, cover);
  } catch (const SizeLimitError& e) {
    std::cerr << "nfold: size limit: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const OverflowError& e) {
    std::cerr << "nfold: overflow: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const Error& e) {
    std::cerr << "nfold: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
