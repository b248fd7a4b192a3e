#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "reduction.hpp"

namespace nfold::strings {

inline constexpr char kWildcard = '*';

/// Character-wise distance between an input character (alphabet or wildcard)
/// and an output character (alphabet only). The wildcard row is always zero.
class DistanceTable {
 public:
  explicit DistanceTable(std::string alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.find(kWildcard) != std::string::npos) throw PreconditionError("alphabet must not contain the wildcard");
    const std::size_t s = alphabet_.size();
    entries_.assign((s + 1) * s, std::nullopt);
    for (std::size_t c = 0; c < s; ++c) entries_[s * s + c] = 0;
  }

  static DistanceTable hamming(const std::string& alphabet) {
    DistanceTable table(alphabet);
    for (char a : alphabet)
      for (char b : alphabet) table.set(a, b, a == b ? 0 : 1);
    return table;
  }

  const std::string& alphabet() const { return alphabet_; }

  void set(char input, char output, Int value) {
    if (value < 0) throw PreconditionError("distances must be non-negative");
    if (input == kWildcard && value != 0) throw PreconditionError("distance to the wildcard must be 0");
    entries_[slot(input, output)] = value;
  }

  /// Throws when an entry is missing.
  Int operator()(char input, char output) const {
    auto v = entries_[slot(input, output)];
    if (!v) throw PreconditionError(std::string("malformed distance: no entry for (") + input + ", " + output + ")");
    return *v;
  }

  void require_complete() const {
    for (char a : alphabet_ + kWildcard)
      for (char b : alphabet_) (void)(*this)(a, b);
  }

  Int max_value() const {
    Int best = 0;
    for (const auto& v : entries_)
      if (v) best = std::max(best, *v);
    return best;
  }

 private:
  std::size_t index_of(char c) const {
    if (c == kWildcard) return alphabet_.size();
    auto pos = alphabet_.find(c);
    if (pos == std::string::npos) throw PreconditionError(std::string("character '") + c + "' is not in the alphabet");
    return pos;
  }

  std::size_t slot(char input, char output) const {
    if (output == kWildcard) throw PreconditionError("output characters cannot be the wildcard");
    return index_of(input) * alphabet_.size() + index_of(output);
  }

  std::string alphabet_;
  std::vector<std::optional<Int>> entries_;
};

/// k input strings of common length L with per-string distance bounds
/// d_h <= dist(y, s_h) <= D_h; beta = 1 also minimises the total distance.
struct MultiStringsInstance {
  std::vector<std::string> strings;
  std::vector<Int> lower;
  std::vector<Int> upper;
  DistanceTable distance;
  bool minimize_total = false;

  std::size_t length() const { return strings.empty() ? 0 : strings.front().size(); }
};

/// Distinct columns of the k x L character matrix (sorted) and the positions
/// holding each.
struct ColumnTypes {
  std::vector<std::string> types;
  std::vector<std::vector<std::size_t>> positions;
};

inline ColumnTypes column_types(const MultiStringsInstance& inst) {
  const std::size_t L = inst.length();
  std::map<std::string, std::vector<std::size_t>> grouped;
  for (std::size_t p = 0; p < L; ++p) {
    std::string col;
    for (const auto& s : inst.strings) col.push_back(s[p]);
    grouped[col].push_back(p);
  }
  ColumnTypes out;
  for (auto& [col, pos] : grouped) {
    out.types.push_back(col);
    out.positions.push_back(std::move(pos));
  }
  return out;
}

inline void validate(const MultiStringsInstance& inst) {
  const std::size_t k = inst.strings.size();
  if (inst.lower.size() != k || inst.upper.size() != k) throw PreconditionError("need one lower and one upper bound per string");
  for (const auto& s : inst.strings)
    if (s.size() != inst.length()) throw PreconditionError("all strings must have the same length");
  inst.distance.require_complete();
  for (const auto& s : inst.strings)
    for (char c : s)
      if (c != kWildcard && inst.distance.alphabet().find(c) == std::string::npos)
        throw PreconditionError(std::string("character '") + c + "' is not in the alphabet");
  if (inst.distance.alphabet().empty()) throw PreconditionError("alphabet must not be empty");
}

/// One block per column type with one variable per output character (how
/// many positions of that type receive it). Top rows: k '>=' rows for the
/// lower bounds followed by k '<=' rows for the upper bounds. An empty input
/// (L = 0) becomes a single block with no positions.
inline NFoldInstance multistrings_to_ilp(const MultiStringsInstance& inst) {
  validate(inst);
  const std::size_t k = inst.strings.size();
  const std::string& sigma = inst.distance.alphabet();
  const std::size_t t = sigma.size();
  ColumnTypes ct = column_types(inst);
  if (ct.types.empty()) {
    ct.types.push_back(std::string(k, kWildcard));
    ct.positions.emplace_back();
  }

  std::vector<IntMatrix> blocks;
  IntVector b_local;
  std::vector<IntVector> cost;
  for (std::size_t i = 0; i < ct.types.size(); ++i) {
    IntMatrix block(2 * k, t);
    IntVector c(t, 0);
    for (std::size_t h = 0; h < k; ++h)
      for (std::size_t ch = 0; ch < t; ++ch) {
        Int d = inst.distance(ct.types[i][h], sigma[ch]);
        block(h, ch) = d;
        block(k + h, ch) = d;
        if (inst.minimize_total) c[ch] = checked::add(c[ch], d);
      }
    blocks.push_back(std::move(block));
    b_local.push_back(static_cast<Int>(ct.positions[i].size()));
    cost.push_back(std::move(c));
  }
  IntVector b_top(inst.lower);
  b_top.insert(b_top.end(), inst.upper.begin(), inst.upper.end());
  std::vector<Relation> rel(k, Relation::GE);
  rel.insert(rel.end(), k, Relation::LE);
  const std::size_t n = blocks.size();
  return NFoldInstance(n, t, 2 * k, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost), std::move(rel),
                       std::vector<Relation>(n, Relation::EQ));
}

struct MultiStringsResult {
  std::string output;
  Int objective = 0;
};

/// Fills the positions of each column type left to right, giving character c
/// to as many positions as the solution assigns it.
inline std::string decode_string(const MultiStringsInstance& inst, const ColumnTypes& ct, const Solution& sol) {
  const std::string& sigma = inst.distance.alphabet();
  std::string y(inst.length(), '?');
  for (std::size_t i = 0; i < ct.positions.size(); ++i) {
    std::size_t next = 0;
    for (std::size_t ch = 0; ch < sigma.size(); ++ch)
      for (Int c = 0; c < sol.bricks[i][ch]; ++c) y[ct.positions[i][next++]] = sigma[ch];
  }
  return y;
}

inline std::optional<MultiStringsResult> multistrings_solve(const MultiStringsInstance& inst) {
  NFoldInstance ilp = multistrings_to_ilp(inst);
  auto sol = solve_general(ilp);
  if (!sol) return std::nullopt;
  return MultiStringsResult{decode_string(inst, column_types(inst), *sol), sol->objective};
}

/// Hamming distance with a common radius: d_h = 0, D_h = radius, no objective.
inline MultiStringsInstance closest_string_instance(std::vector<std::string> strings, Int radius,
                                                    std::string alphabet = {}) {
  if (alphabet.empty()) {
    for (const auto& s : strings)
      for (char c : s)
        if (c != kWildcard && alphabet.find(c) == std::string::npos) alphabet.push_back(c);
    std::sort(alphabet.begin(), alphabet.end());
    if (alphabet.empty()) alphabet = "0";
  }
  const std::size_t k = strings.size();
  return MultiStringsInstance{std::move(strings), std::vector<Int>(k, 0), std::vector<Int>(k, radius),
                              DistanceTable::hamming(alphabet), false};
}

/// Total distance between an output string and one input string.
inline Int string_distance(const DistanceTable& table, const std::string& input, const std::string& output) {
  Int total = 0;
  for (std::size_t p = 0; p < input.size(); ++p) total = checked::add(total, table(input[p], output[p]));
  return total;
}

}  // namespace nfold::strings
