#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiolab/bits.hpp"
#include "radiolab/graph.hpp"

namespace radiolab::sd {

using ParentArray = std::vector<std::optional<Vertex>>;

struct SubtreeAssignment {
  Vertex root = 0;
  std::vector<bool> in_subtree;
  std::vector<Bits> bits;
  // 1-based position among the subtree children of the parent; 0 for the
  // root and for nodes outside the subtree.
  std::vector<std::uint32_t> child_number;
  // Subtree children ordered by child number.
  std::vector<std::vector<Vertex>> children;
  // floor(log2(tree max degree)) + 1
  std::size_t child_cap = 1;

  // Post-order: children in child-number order, then the node itself.
  Bits concatenation() const;
};

// Spreads `message` over a subtree of the tree given by parent pointers.
// Children are taken by subtree size (descending, ties by index); the first
// child_cap of them get blocks of width ceil(log2(size + 1)) + 1; leftover
// bits go one per chosen child and then at most two to the root.
SubtreeAssignment assign_subtree_bits(const ParentArray& parent, Vertex root, const Bits& message);
SubtreeAssignment assign_subtree_bits(const Graph& tree, Vertex root, const Bits& message);

// Violations of the packing properties; empty when all hold.
std::vector<std::string> check_subtree_assignment(const ParentArray& parent, const SubtreeAssignment& a,
                                                  const Bits& message);

}  // namespace radiolab::sd
