#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "reduction.hpp"

namespace nfold::coloring {

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      if (u != v) adj[v].push_back(u);
    }
    return adj;
  }
};

inline bool is_vertex_cover(const Graph& g, const std::vector<std::size_t>& cover) {
  std::vector<bool> in(g.vertices, false);
  for (std::size_t v : cover) {
    if (v >= g.vertices) return false;
    in[v] = true;
  }
  return std::all_of(g.edges.begin(), g.edges.end(), [&](auto e) { return in[e.first] || in[e.second]; });
}

/// Smallest vertex cover by increasing-size subset search. Only meant for
/// small graphs; callers normally supply the cover.
inline std::vector<std::size_t> minimum_vertex_cover(const Graph& g) {
  if (g.vertices > 30) throw SizeLimitError("minimum_vertex_cover is limited to 30 vertices");
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t left) -> bool {
    if (left == 0) return is_vertex_cover(g, chosen);
    for (std::size_t v = from; v < g.vertices; ++v) {
      chosen.push_back(v);
      if (pick(v + 1, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t size = 0; size <= g.vertices; ++size)
    if (pick(0, size)) return chosen;
  return chosen;
}

struct EquitableColoringInstance {
  Graph graph;
  std::size_t colors = 0;
  std::vector<std::size_t> cover;
};

/// Vertices outside the cover grouped by their (cover-side) neighborhood.
struct NeighborhoodClasses {
  std::vector<std::vector<std::size_t>> neighborhoods;  // indices into the cover
  std::vector<std::vector<std::size_t>> members;        // graph vertices
};

inline NeighborhoodClasses neighborhood_classes(const EquitableColoringInstance& inst) {
  const auto adj = inst.graph.adjacency();
  std::vector<int> cover_index(inst.graph.vertices, -1);
  for (std::size_t w = 0; w < inst.cover.size(); ++w) cover_index[inst.cover[w]] = static_cast<int>(w);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> grouped;
  for (std::size_t v = 0; v < inst.graph.vertices; ++v) {
    if (cover_index[v] >= 0) continue;
    std::vector<std::size_t> nb;
    for (std::size_t u : adj[v]) nb.push_back(static_cast<std::size_t>(cover_index[u]));
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    grouped[nb].push_back(v);
  }
  NeighborhoodClasses out;
  for (auto& [nb, vs] : grouped) {
    out.neighborhoods.push_back(nb);
    out.members.push_back(std::move(vs));
  }
  if (out.members.empty()) {
    out.neighborhoods.emplace_back();
    out.members.emplace_back();
  }
  return out;
}

/// Target class sizes: `big` colors get floor(|V|/h) + 1 vertices, the rest floor(|V|/h).
struct ClassSizes {
  Int base = 0;
  std::size_t big_count = 0;
};

inline ClassSizes class_sizes(std::size_t vertices, std::size_t colors) {
  ClassSizes s;
  s.base = static_cast<Int>(vertices / colors);
  s.big_count = vertices - colors * (vertices / colors);
  return s;
}

/// Feasibility program for one coloring of the cover and one choice of which
/// colors take the larger class size. Blocks are neighborhood classes, the
/// variables of block i count its vertices of each color. Row 0 forces zero
/// vertices onto colors already used in a class's neighborhood; rows 1..h fix
/// the number of non-cover vertices per color.
inline NFoldInstance coloring_program(const EquitableColoringInstance& inst, const NeighborhoodClasses& classes,
                                      const std::vector<std::size_t>& cover_colors, const IntVector& color_rhs) {
  const std::size_t h = inst.colors;
  const std::size_t s = classes.members.size();
  std::vector<IntMatrix> blocks;
  IntVector b_local;
  std::vector<IntVector> cost;
  for (std::size_t i = 0; i < s; ++i) {
    IntMatrix block(h + 1, h);
    for (std::size_t w : classes.neighborhoods[i]) block(0, cover_colors[w]) = 1;
    for (std::size_t j = 0; j < h; ++j) block(1 + j, j) = 1;
    blocks.push_back(std::move(block));
    b_local.push_back(static_cast<Int>(classes.members[i].size()));
    cost.push_back(IntVector(h, 0));
  }
  IntVector b_top{0};
  b_top.insert(b_top.end(), color_rhs.begin(), color_rhs.end());
  return NFoldInstance(s, h, h + 1, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost));
}

struct ColoringResult {
  bool yes = false;
  /// Color (0-based) of every vertex when `yes`.
  std::vector<std::size_t> coloring;
  std::uint64_t programs_solved = 0;
};

inline void require_supported(const EquitableColoringInstance& inst) {
  if (inst.colors == 0) throw PreconditionError("the number of colors must be positive");
  if (!is_vertex_cover(inst.graph, inst.cover)) throw PreconditionError("the given vertex set is not a vertex cover");
  std::vector<std::size_t> sorted = inst.cover;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw PreconditionError("cover lists a vertex twice");
}

/// Equitable coloring with exactly `colors` classes (empty classes allowed
/// when |V| < h) whose sizes differ by at most one. Cover colorings are
/// enumerated with colors introduced in order; for each, every placement of
/// the larger class size that is distinct up to renaming unused colors gets
/// its own program.
inline ColoringResult equitable_coloring_solve(const EquitableColoringInstance& inst) {
  require_supported(inst);
  ColoringResult out;
  const std::size_t h = inst.colors;
  const std::size_t k = inst.cover.size();
  const auto adj = inst.graph.adjacency();
  const NeighborhoodClasses classes = neighborhood_classes(inst);
  const ClassSizes sizes = class_sizes(inst.graph.vertices, h);

  std::vector<std::size_t> cover_colors(k, 0);
  std::vector<int> cover_index(inst.graph.vertices, -1);
  for (std::size_t w = 0; w < k; ++w) cover_index[inst.cover[w]] = static_cast<int>(w);

  auto try_sizes = [&](std::size_t used) -> bool {
    std::vector<Int> in_cover(h, 0);
    for (std::size_t c : cover_colors) ++in_cover[c];
    // Subsets of the used colors that take the larger size; the remaining
    // big classes go to the first unused colors.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << used); ++mask) {
      const auto used_big = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (used_big > sizes.big_count || sizes.big_count - used_big > h - used) continue;
      IntVector rhs(h);
      bool ok = true;
      for (std::size_t j = 0; j < h; ++j) {
        bool big = j < used ? ((mask >> j) & 1) != 0 : j - used < sizes.big_count - used_big;
        rhs[j] = sizes.base + (big ? 1 : 0) - in_cover[j];
        ok = ok && rhs[j] >= 0;
      }
      if (!ok) continue;
      ++out.programs_solved;
      auto sol = solve_general(coloring_program(inst, classes, cover_colors, rhs));
      if (!sol) continue;
      out.coloring.assign(inst.graph.vertices, 0);
      for (std::size_t w = 0; w < k; ++w) out.coloring[inst.cover[w]] = cover_colors[w];
      for (std::size_t i = 0; i < classes.members.size(); ++i) {
        std::size_t next = 0;
        for (std::size_t j = 0; j < h; ++j)
          for (Int c = 0; c < sol->bricks[i][j]; ++c) out.coloring[classes.members[i][next++]] = j;
      }
      out.yes = true;
      return true;
    }
    return false;
  };

  std::function<bool(std::size_t, std::size_t)> color_cover = [&](std::size_t w, std::size_t used) -> bool {
    if (w == k) return try_sizes(used);
    const std::size_t limit = std::min(used + 1, h);
    for (std::size_t c = 0; c < limit; ++c) {
      bool clash = false;
      for (std::size_t u : adj[inst.cover[w]]) {
        int ui = cover_index[u];
        if (ui >= 0 && static_cast<std::size_t>(ui) < w && cover_colors[static_cast<std::size_t>(ui)] == c) clash = true;
        if (u == inst.cover[w]) clash = true;
      }
      if (clash) continue;
      cover_colors[w] = c;
      if (color_cover(w + 1, std::max(used, c + 1))) return true;
    }
    return false;
  };
  color_cover(0, 0);
  return out;
}

/// True when the coloring is proper and its h class sizes differ by at most one.
inline bool is_equitable_coloring(const Graph& g, std::size_t colors, const std::vector<std::size_t>& coloring) {
  if (coloring.size() != g.vertices) return false;
  std::vector<std::size_t> count(colors, 0);
  for (std::size_t c : coloring) {
    if (c >= colors) return false;
    ++count[c];
  }
  for (auto [u, v] : g.edges)
    if (coloring[u] == coloring[v]) return false;
  auto [lo, hi] = std::minmax_element(count.begin(), count.end());
  return *hi - *lo <= 1;
}

}  // namespace nfold::coloring
