#pragma once

// Brute-force reference implementations used to derive expected values.
// Kept deliberately naive and independent of the library algorithms.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "radiolab/graph.hpp"

namespace oracle {

using radiolab::Graph;
using radiolab::Vertex;

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

// Floyd-Warshall over an adjacency matrix rebuilt from the edge list.
inline std::vector<std::vector<std::uint32_t>> all_pairs(const Graph& g) {
  std::size_t n = g.size();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::uint32_t diameter(const Graph& g) {
  std::uint32_t best = 0;
  for (const auto& row : all_pairs(g))
    for (auto x : row) best = std::max(best, x);
  return best;
}

inline std::size_t max_degree(const Graph& g) {
  std::vector<std::size_t> deg(g.size());
  for (const auto& e : g.edges()) ++deg[e.u], ++deg[e.v];
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

inline bool connected(const Graph& g) {
  auto d = all_pairs(g);
  for (const auto& row : d)
    for (auto x : row)
      if (x >= kInf) return false;
  return true;
}

// Checks minimality by trying every single removal.
inline bool dominates(const Graph& g, const std::set<Vertex>& dom, const std::vector<Vertex>& targets) {
  for (Vertex t : targets) {
    bool ok = false;
    for (Vertex d : dom) ok = ok || g.adjacent(d, t);
    if (!ok) return false;
  }
  return true;
}

}  // namespace oracle
