#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "dag_solver.hpp"

namespace nfold::io {

struct ParseError : Error {
  using Error::Error;
};

inline Relation parse_relation(const std::string& text) {
  if (text == "<=") return Relation::LE;
  if (text == "=") return Relation::EQ;
  if (text == ">=") return Relation::GE;
  throw ParseError("unknown relation '" + text + "'");
}

namespace detail {

using nlohmann::json;

inline const json& require_key(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

inline Int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
  return v.get<Int>();
}

inline std::size_t as_size(const json& v, const std::string& what) {
  Int x = as_int(v, what);
  if (x < 0) throw ParseError(what + " must be non-negative");
  return static_cast<std::size_t>(x);
}

inline IntVector as_vector(const json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + " must be an array");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Relation> as_relations(const json& v, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + " must be an array");
  std::vector<Relation> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ParseError(what + " entries must be strings");
    out.push_back(parse_relation(e.get<std::string>()));
  }
  return out;
}

}  // namespace detail

/// Parses the JSON instance document:
///   { "n", "t", "r", "blocks" (n x r x t), "b_top" (r), "b_local" (n),
///     "cost" (n x t), "global_relations" (r, optional), "local_relations" (n, optional) }
/// Relations are "<=", "=" or ">=" and default to "=". Unknown keys are errors.
inline NFoldInstance parse_instance(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  static const std::set<std::string> known{"n", "t", "r", "blocks", "b_top", "b_local", "cost", "global_relations", "local_relations"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key())) throw ParseError("unknown key '" + it.key() + "'");

  const std::size_t n = detail::as_size(detail::require_key(doc, "n"), "n");
  const std::size_t t = detail::as_size(detail::require_key(doc, "t"), "t");
  const std::size_t r = detail::as_size(detail::require_key(doc, "r"), "r");

  const json& blocks_json = detail::require_key(doc, "blocks");
  if (!blocks_json.is_array()) throw ParseError("blocks must be an array");
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < blocks_json.size(); ++i) {
    const json& bj = blocks_json[i];
    if (!bj.is_array()) throw ParseError("blocks[" + std::to_string(i) + "] must be an array of rows");
    std::vector<IntVector> rows;
    for (std::size_t k = 0; k < bj.size(); ++k)
      rows.push_back(detail::as_vector(bj[k], "blocks[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    try {
      IntMatrix m = IntMatrix::from_rows(rows);
      // A block with no rows still has t columns.
      if (rows.empty()) m = IntMatrix(0, t);
      blocks.push_back(std::move(m));
    } catch (const PreconditionError&) {
      throw ParseError("blocks[" + std::to_string(i) + "] has rows of different lengths");
    }
  }

  IntVector b_top = detail::as_vector(detail::require_key(doc, "b_top"), "b_top");
  IntVector b_local = detail::as_vector(detail::require_key(doc, "b_local"), "b_local");
  const json& cost_json = detail::require_key(doc, "cost");
  if (!cost_json.is_array()) throw ParseError("cost must be an array");
  std::vector<IntVector> cost;
  for (std::size_t i = 0; i < cost_json.size(); ++i) cost.push_back(detail::as_vector(cost_json[i], "cost[" + std::to_string(i) + "]"));

  std::vector<Relation> global = doc.contains("global_relations")
                                     ? detail::as_relations(doc["global_relations"], "global_relations")
                                     : std::vector<Relation>(b_top.size(), Relation::EQ);
  std::vector<Relation> local = doc.contains("local_relations")
                                    ? detail::as_relations(doc["local_relations"], "local_relations")
                                    : std::vector<Relation>(b_local.size(), Relation::EQ);
  if (global.empty() && !b_top.empty()) throw ParseError("global_relations must have one entry per top row");
  if (local.empty() && !b_local.empty()) throw ParseError("local_relations must have one entry per block");
  return NFoldInstance(n, t, r, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost), std::move(global),
                       std::move(local));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline NFoldInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline nlohmann::ordered_json instance_to_json(const NFoldInstance& inst) {
  nlohmann::ordered_json doc;
  doc["n"] = inst.n();
  doc["t"] = inst.t();
  doc["r"] = inst.r();
  auto blocks = nlohmann::ordered_json::array();
  for (const auto& b : inst.blocks()) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < b.rows(); ++k) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(b(k, j));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  doc["blocks"] = std::move(blocks);
  doc["b_top"] = inst.b_top();
  auto rel = [](const std::vector<Relation>& rs) {
    auto a = nlohmann::ordered_json::array();
    for (Relation r : rs) a.push_back(relation_symbol(r));
    return a;
  };
  doc["global_relations"] = rel(inst.global_relations());
  doc["b_local"] = inst.b_local();
  doc["local_relations"] = rel(inst.local_relations());
  doc["cost"] = inst.cost();
  return doc;
}

/// Result document: {"status", "objective", "x", "stats"?}. Infeasible
/// results carry null objective and x.
inline nlohmann::ordered_json result_to_json(const std::optional<Solution>& sol, const SolveStats* stats = nullptr) {
  nlohmann::ordered_json doc;
  if (sol) {
    doc["status"] = "optimal";
    doc["objective"] = sol->objective;
    doc["x"] = sol->bricks;
  } else {
    doc["status"] = "infeasible";
    doc["objective"] = nullptr;
    doc["x"] = nullptr;
  }
  if (stats) {
    nlohmann::ordered_json s;
    s["vertices"] = stats->vertices;
    s["relaxations"] = stats->relaxations;
    s["layers"] = stats->layers;
    s["window_volume"] = stats->window_volume;
    s["wall_seconds"] = stats->wall_seconds;
    doc["stats"] = std::move(s);
  }
  return doc;
}

/// Reads "x" back from a result document (null when infeasible).
inline std::optional<BrickVector> parse_result_x(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  if (!doc.contains("x") || doc["x"].is_null()) return std::nullopt;
  BrickVector x;
  for (const auto& brick : doc["x"]) x.push_back(detail::as_vector(brick, "x"));
  return x;
}

}  // namespace nfold::io
