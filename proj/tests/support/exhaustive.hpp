#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nfold/equitable_coloring.hpp"
#include "nfold/multistrings.hpp"

// Direct search over the original problems, sharing no code with the ILP
// front ends.

namespace nfold::testing {

/// Some set of at most k rows, turned to all ones, gives every column a strict majority of ones.
inline bool lobbying_by_subsets(const std::vector<std::vector<int>>& a, Int k) {
  const std::size_t w = a.size();
  const std::size_t m = w == 0 ? 0 : a.front().size();
  if (w == 0) return true;
  for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
    if (__builtin_popcount(mask) > k) continue;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      std::size_t ones = 0;
      for (std::size_t i = 0; i < w; ++i) ones += ((mask >> i) & 1u) ? 1 : static_cast<std::size_t>(a[i][j]);
      ok = 2 * ones > w;
    }
    if (ok) return true;
  }
  return false;
}

/// Objective of a candidate output string, or nullopt when a bound fails.
inline std::optional<Int> strings_objective(const strings::MultiStringsInstance& inst, const std::string& y) {
  Int total = 0;
  for (std::size_t h = 0; h < inst.strings.size(); ++h) {
    Int d = 0;
    for (std::size_t p = 0; p < y.size(); ++p) d += inst.distance(inst.strings[h][p], y[p]);
    if (d < inst.lower[h] || d > inst.upper[h]) return std::nullopt;
    total += d;
  }
  return inst.minimize_total ? total : 0;
}

/// Best objective over every string in sigma^L.
inline std::optional<Int> strings_by_exhaustion(const strings::MultiStringsInstance& inst) {
  const std::string& sigma = inst.distance.alphabet();
  const std::size_t L = inst.length();
  std::vector<std::size_t> digits(L, 0);
  std::optional<Int> best;
  while (true) {
    std::string y(L, ' ');
    for (std::size_t p = 0; p < L; ++p) y[p] = sigma[digits[p]];
    auto v = strings_objective(inst, y);
    if (v && (!best || *v < *best)) best = v;
    std::size_t p = 0;
    while (p < L && ++digits[p] == sigma.size()) digits[p++] = 0;
    if (p == L) break;
  }
  return best;
}

/// Some map V -> {0..h-1} is proper with class sizes differing by at most one.
inline bool coloring_by_exhaustion(const coloring::Graph& g, std::size_t h) {
  const std::size_t nv = g.vertices;
  std::vector<std::size_t> col(nv, 0);
  while (true) {
    bool proper = std::none_of(g.edges.begin(), g.edges.end(), [&](auto e) { return col[e.first] == col[e.second]; });
    if (proper) {
      std::vector<std::size_t> count(h, 0);
      for (std::size_t c : col) ++count[c];
      auto [lo, hi] = std::minmax_element(count.begin(), count.end());
      if (*hi - *lo <= 1) return true;
    }
    std::size_t v = 0;
    while (v < nv && ++col[v] == h) col[v++] = 0;
    if (v == nv) return false;
  }
}

}  // namespace nfold::testing
