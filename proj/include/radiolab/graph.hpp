#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace radiolab {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph with sorted adjacency lists. Built only through
// build_graph, which validates the edge list.
class Graph {
 public:
  Graph() = default;

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  // Canonical edge list: u < v, sorted.
  std::vector<Edge> edges() const;

  // Subgraph induced by `vertices` (sorted, distinct). Vertex i of the result
  // is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::size_t n, const std::vector<Edge>& edges);

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
  std::size_t max_degree_ = 0;
};

Graph build_graph(std::size_t n, const std::vector<Edge>& edges);

struct LayerAssignment {
  Vertex root = 0;
  std::vector<std::uint32_t> layer;
  std::uint32_t depth = 0;

  // Nodes of each layer in increasing index order.
  std::vector<std::vector<Vertex>> layers() const;
};

LayerAssignment bfs_layers(const Graph& g, Vertex root);

bool is_connected(const Graph& g);
void require_connected(const Graph& g);
std::size_t diameter(const Graph& g);

}  // namespace radiolab
