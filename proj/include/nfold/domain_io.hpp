#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "equitable_coloring.hpp"
#include "io.hpp"
#include "lobbying.hpp"
#include "multistrings.hpp"

// Plain-text inputs for the application subcommands. Blank lines and lines
// starting with '#' are ignored everywhere.

namespace nfold::io {

namespace detail {

inline std::vector<std::vector<std::string>> content_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> tokens;
    std::string w;
    while (words >> w) tokens.push_back(w);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back(std::move(tokens));
  }
  return out;
}

inline Int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + s + "' is not an integer");
  }
  if (used != s.size()) throw ParseError(what + ": '" + s + "' is not an integer");
  return v;
}

}  // namespace detail

/// One matrix row per line, written as 0/1 characters (spaces allowed).
inline std::vector<std::vector<int>> parse_binary_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  for (const auto& tokens : detail::content_lines(text)) {
    std::vector<int> row;
    for (const auto& tok : tokens)
      for (char c : tok) {
        if (c != '0' && c != '1') throw ParseError(std::string("matrix entries must be 0 or 1, got '") + c + "'");
        row.push_back(c - '0');
      }
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Strings file. Single-token lines are input strings; keyword lines are
///   alphabet <chars>      output alphabet (default: characters of the strings)
///   lower <d_1> ... <d_k> distance lower bounds (default 0)
///   upper <D_1> ... <D_k> distance upper bounds
///   beta <0|1>            minimise total distance when 1
///   delta <a> <b> <value> distance entry; if any is given the table must be complete,
///                         otherwise Hamming distance is used
struct StringsFile {
  std::vector<std::string> strings;
  std::string alphabet;
  std::vector<Int> lower;
  std::vector<Int> upper;
  bool has_upper = false;
  bool beta = false;
  std::vector<std::tuple<char, char, Int>> delta_entries;
};

inline StringsFile parse_strings_file(const std::string& text) {
  StringsFile f;
  for (const auto& tokens : detail::content_lines(text)) {
    const std::string& key = tokens.front();
    if (tokens.size() == 1) {
      f.strings.push_back(key);
    } else if (key == "alphabet") {
      if (tokens.size() != 2) throw ParseError("alphabet takes one argument");
      f.alphabet = tokens[1];
    } else if (key == "lower" || key == "upper") {
      std::vector<Int>& dst = key == "lower" ? f.lower : f.upper;
      for (std::size_t i = 1; i < tokens.size(); ++i) dst.push_back(detail::parse_int(tokens[i], key));
      if (key == "upper") f.has_upper = true;
    } else if (key == "beta") {
      Int b = detail::parse_int(tokens.at(1), "beta");
      if (b != 0 && b != 1) throw ParseError("beta must be 0 or 1");
      f.beta = b == 1;
    } else if (key == "delta") {
      if (tokens.size() != 4 || tokens[1].size() != 1 || tokens[2].size() != 1) throw ParseError("delta takes <char> <char> <value>");
      f.delta_entries.emplace_back(tokens[1][0], tokens[2][0], detail::parse_int(tokens[3], "delta"));
    } else {
      throw ParseError("unknown keyword '" + key + "'");
    }
  }
  if (f.alphabet.empty()) {
    for (const auto& s : f.strings)
      for (char c : s)
        if (c != strings::kWildcard && f.alphabet.find(c) == std::string::npos) f.alphabet.push_back(c);
    std::sort(f.alphabet.begin(), f.alphabet.end());
  }
  return f;
}

inline strings::MultiStringsInstance to_multistrings(const StringsFile& f) {
  const std::size_t k = f.strings.size();
  if (!f.has_upper) throw ParseError("multistrings input needs an 'upper' line");
  std::vector<Int> lower = f.lower.empty() ? std::vector<Int>(k, 0) : f.lower;
  if (lower.size() != k || f.upper.size() != k) throw ParseError("need one lower and one upper bound per string");
  if (f.alphabet.empty()) throw ParseError("empty alphabet");
  strings::DistanceTable table = strings::DistanceTable::hamming(f.alphabet);
  if (!f.delta_entries.empty()) {
    table = strings::DistanceTable(f.alphabet);
    for (auto [a, b, v] : f.delta_entries) table.set(a, b, v);
  }
  return strings::MultiStringsInstance{f.strings, std::move(lower), f.upper, std::move(table), f.beta};
}

/// Graph file: "u v" lines are edges, single-name lines declare vertices.
/// Vertices are numbered in order of first appearance.
struct NamedGraph {
  coloring::Graph graph;
  std::vector<std::string> names;

  std::size_t id(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    throw ParseError("unknown vertex '" + name + "'");
  }
};

inline NamedGraph parse_graph(const std::string& text) {
  NamedGraph g;
  std::map<std::string, std::size_t> ids;
  auto vertex = [&](const std::string& name) {
    auto [it, fresh] = ids.emplace(name, g.names.size());
    if (fresh) g.names.push_back(name);
    return it->second;
  };
  for (const auto& tokens : detail::content_lines(text)) {
    if (tokens.size() == 1) {
      vertex(tokens[0]);
    } else if (tokens.size() == 2) {
      std::size_t u = vertex(tokens[0]);
      std::size_t v = vertex(tokens[1]);
      g.graph.edges.emplace_back(u, v);
    } else {
      throw ParseError("graph lines hold one vertex or one edge");
    }
  }
  g.graph.vertices = g.names.size();
  return g;
}

}  // namespace nfold::io
