#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "radiolab/graph.hpp"

namespace radiolab {

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
// Star with one center (node 0) and n-1 leaves.
Graph make_star(std::size_t n);
Graph make_grid(std::size_t rows, std::size_t cols);
Graph make_complete(std::size_t n);
// Uniform labeled tree drawn through a Pruefer sequence.
Graph make_random_tree(std::size_t n, std::uint64_t seed);

Graph gen_random_connected(std::size_t n, double p, std::uint64_t seed);

struct LBFamilyDescriptor {
  std::size_t n = 0;
  std::vector<std::vector<Vertex>> components;
  std::vector<Vertex> special;

  // components index for every node, -1 for special nodes
  std::vector<int> component_of(std::size_t node_count) const;
};

// Nodes 0..k/2-1 are a_1..a_{k/2}, nodes k/2..k-1 are b_1..b_{k/2}.
Graph gen_lb_component(std::size_t k);
std::pair<Graph, LBFamilyDescriptor> gen_lb_family(std::size_t n);
std::pair<Graph, LBFamilyDescriptor> gen_lb_general(std::size_t delta, std::size_t n);

// Integer square root when n is the square of an even natural number.
bool is_even_square(std::size_t n, std::size_t* root = nullptr);

}  // namespace radiolab
