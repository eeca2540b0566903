#include "radiolab/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "radiolab/error.hpp"

namespace radiolab {

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> position(adj_.size(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < vertices.size(); ++i) position.at(vertices[i]) = static_cast<Vertex>(i);
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : adj_[vertices[i]]) {
      Vertex j = position[w];
      if (j != static_cast<Vertex>(-1) && i < j) sub.push_back({static_cast<Vertex>(i), j});
    }
  }
  return build_graph(vertices.size(), sub);
}

Graph build_graph(std::size_t n, const std::vector<Edge>& edges) {
  Graph g;
  g.adj_.assign(n, {});
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n=" + std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at " + std::to_string(e.u));
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end()) {
      throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(std::min<Vertex>(v, *dup)) + "," +
                                                std::to_string(std::max<Vertex>(v, *dup)) + ") listed twice");
    }
    g.max_degree_ = std::max(g.max_degree_, a.size());
  }
  g.edges_ = edges.size();
  return g;
}

std::vector<std::vector<Vertex>> LayerAssignment::layers() const {
  std::vector<std::vector<Vertex>> out(layer.empty() ? 0 : depth + 1);
  for (Vertex v = 0; v < layer.size(); ++v) out[layer[v]].push_back(v);
  return out;
}

namespace {

constexpr std::uint32_t kUnreached = static_cast<std::uint32_t>(-1);

std::vector<std::uint32_t> distances(const Graph& g, Vertex root) {
  std::vector<std::uint32_t> dist(g.size(), kUnreached);
  std::deque<Vertex> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

LayerAssignment bfs_layers(const Graph& g, Vertex root) {
  if (root >= g.size()) throw Error(ErrorCode::IndexOutOfRange, "root " + std::to_string(root));
  LayerAssignment la;
  la.root = root;
  la.layer = distances(g, root);
  for (std::uint32_t d : la.layer) {
    if (d == kUnreached) throw Error(ErrorCode::Disconnected, "graph is not connected");
    la.depth = std::max(la.depth, d);
  }
  return la;
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  auto dist = distances(g, 0);
  return std::find(dist.begin(), dist.end(), kUnreached) == dist.end();
}

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.size(); ++v) best = std::max<std::size_t>(best, bfs_layers(g, v).depth);
  return best;
}

}  // namespace radiolab
