#include "radiolab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "radiolab/error.hpp"
#include "radiolab/rng.hpp"

namespace radiolab {

Graph make_path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  return build_graph(n, e);
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidParams, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  e.push_back({0, static_cast<Vertex>(n - 1)});
  return build_graph(n, e);
}

Graph make_star(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidParams, "star needs n >= 1");
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({0, v});
  return build_graph(n, e);
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidParams, "grid needs positive dimensions");
  std::vector<Edge> e;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return build_graph(rows * cols, e);
}

Graph make_complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return build_graph(n, e);
}

namespace {

std::vector<Edge> random_tree_edges(std::size_t n, SplitMix64& rng) {
  std::vector<Edge> e;
  if (n < 2) return e;
  if (n == 2) return {{0, 1}};
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<std::size_t> degree(n, 1);
  for (Vertex c : code) ++degree[c];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  for (Vertex c : code) {
    Vertex leaf = leaves.top();
    leaves.pop();
    e.push_back({std::min(leaf, c), std::max(leaf, c)});
    if (--degree[c] == 1) leaves.push(c);
  }
  Vertex a = leaves.top();
  leaves.pop();
  Vertex b = leaves.top();
  e.push_back({std::min(a, b), std::max(a, b)});
  return e;
}

}  // namespace

Graph make_random_tree(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidParams, "tree needs n >= 1");
  SplitMix64 rng(seed);
  return build_graph(n, random_tree_edges(n, rng));
}

Graph gen_random_connected(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1 || !(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParams, "need n >= 1 and p in [0,1]");
  SplitMix64 rng(seed);
  SplitMix64 tree_rng = rng.split();
  std::vector<Edge> e = random_tree_edges(n, tree_rng);
  std::set<Edge> present(e.begin(), e.end());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (present.count({u, v})) continue;
      if (rng.unit() < p) e.push_back({u, v});
    }
  }
  return build_graph(n, e);
}

std::vector<int> LBFamilyDescriptor::component_of(std::size_t node_count) const {
  std::vector<int> out(node_count, -1);
  for (std::size_t i = 0; i < components.size(); ++i)
    for (Vertex v : components[i]) out.at(v) = static_cast<int>(i);
  return out;
}

Graph gen_lb_component(std::size_t k) {
  if (k < 2 || k % 2 != 0) throw Error(ErrorCode::OddSize, "component size " + std::to_string(k));
  std::size_t half = k / 2;
  std::vector<Edge> e;
  for (std::size_t j = 1; j <= half; ++j)
    for (std::size_t i = 1; i <= j; ++i) e.push_back({static_cast<Vertex>(j - 1), static_cast<Vertex>(half + i - 1)});
  return build_graph(k, e);
}

bool is_even_square(std::size_t n, std::size_t* root) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r == 0 || r * r != n || r % 2 != 0) return false;
  if (root) *root = r;
  return true;
}

namespace {

// Appends a copy of G_n at `offset` to `edges`; returns its components.
std::vector<std::vector<Vertex>> append_lb_family(std::size_t n, Vertex offset, std::vector<Edge>& edges) {
  std::size_t s = 0;
  if (!is_even_square(n, &s)) throw Error(ErrorCode::NotPerfectEvenSquare, "n=" + std::to_string(n));
  Graph part = gen_lb_component(s);
  std::vector<std::vector<Vertex>> comps(s);
  for (std::size_t c = 0; c < s; ++c) {
    Vertex base = offset + static_cast<Vertex>(c * s);
    for (std::size_t i = 0; i < s; ++i) comps[c].push_back(base + static_cast<Vertex>(i));
    for (const Edge& pe : part.edges()) edges.push_back({base + pe.u, base + pe.v});
  }
  for (std::size_t c = 0; c < s; ++c)
    for (std::size_t d = c + 1; d < s; ++d)
      for (Vertex u : comps[c])
        for (Vertex v : comps[d]) edges.push_back({u, v});
  return comps;
}

}  // namespace

std::pair<Graph, LBFamilyDescriptor> gen_lb_family(std::size_t n) {
  std::vector<Edge> edges;
  LBFamilyDescriptor desc;
  desc.n = n;
  desc.components = append_lb_family(n, 0, edges);
  return {build_graph(n, edges), std::move(desc)};
}

std::pair<Graph, LBFamilyDescriptor> gen_lb_general(std::size_t delta, std::size_t n) {
  if (delta < 1 || delta >= n) throw Error(ErrorCode::InvalidParams, "need 1 <= delta < n");
  std::size_t k = 4;
  for (std::size_t s = 2; s * s < delta; s += 2) k = (s + 2) * (s + 2);
  std::size_t copies = (n + delta - 1) / delta;
  std::vector<Edge> edges;
  LBFamilyDescriptor desc;
  desc.n = copies * (k + 1);
  for (std::size_t c = 0; c < copies; ++c) {
    auto offset = static_cast<Vertex>(c * (k + 1));
    for (auto& comp : append_lb_family(k, offset, edges)) desc.components.push_back(std::move(comp));
    auto special = offset + static_cast<Vertex>(k);
    for (Vertex v = offset; v < special; ++v) edges.push_back({v, special});
    desc.special.push_back(special);
  }
  if (copies == 2) {
    edges.push_back({desc.special[0], desc.special[1]});
  } else if (copies > 2) {
    for (std::size_t c = 0; c < copies; ++c) {
      Vertex a = desc.special[c], b = desc.special[(c + 1) % copies];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  return {build_graph(desc.n, edges), std::move(desc)};
}

}  // namespace radiolab
