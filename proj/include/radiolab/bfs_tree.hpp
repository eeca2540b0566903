#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiolab/graph.hpp"
#include "radiolab/labels.hpp"

namespace radiolab::topo {

// Sequence of gather indices on the tree path from the root; empty at the root.
using NodeId = std::vector<std::uint64_t>;

struct BfsTree {
  Vertex root = 0;
  std::size_t delta = 0;
  LayerAssignment layers;
  // x_sets[i][j] = X_j of layer i, increasing node order.
  std::vector<std::vector<std::vector<Vertex>>> x_sets;
  std::vector<std::size_t> b;
  std::vector<std::size_t> g;
  std::vector<std::optional<Vertex>> parent;
  std::vector<std::vector<Vertex>> children;
  // No neighbor one layer down.
  std::vector<bool> leaf;
  std::vector<bool> ack_path;

  std::size_t depth() const { return layers.depth; }
};

// Greedy maximal X_0, X_1, ... per layer, scanning candidates in index
// order; b and parent follow. Throws ProtocolViolation if some node is left
// after X_delta.
BfsTree assign_broadcast_indices(const Graph& g, Vertex r);
// Fills tree.g: parents in (b, index) order, children in index order, each
// taking the smallest value not yet used by a neighbor of the parent one
// layer down.
void assign_gather_indices(const Graph& g, BfsTree& tree);
// Both assignments plus the ack path to the deepest node (lowest index).
BfsTree build_bfs_tree(const Graph& g, Vertex r);

// Violations of the tree, index and gather-index properties.
std::vector<std::string> check_bfs_tree(const Graph& g, const BfsTree& tree);

std::vector<NodeId> node_ids(const BfsTree& tree);

// Greedy in index order on the distance-two conflict graph; colors from 1.
std::vector<std::size_t> distance_two_coloring(const Graph& g);

// Blocks: [root leaf ack][b][g][delta].
std::vector<Bits> bfs_label_blocks(const BfsTree& tree, Vertex v);
SchemeBundle build_bfs_labels(const Graph& g, Vertex r);

// Documented bound C * (ceil(log2(delta + 1)) + 1) + c0 on encoded BFS labels.
inline constexpr std::size_t kBfsLabelC = 6;
inline constexpr std::size_t kBfsLabelC0 = 12;
std::size_t bfs_label_bound(std::size_t delta);

nlohmann::json to_json(const BfsTree& tree);

}  // namespace radiolab::topo
