#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "radiolab/exec_schemes.hpp"
#include "radiolab/labels.hpp"
#include "radiolab/subtree_bits.hpp"

namespace radiolab::sd {

// Message tags of the size-learning program.
inline constexpr std::uint8_t kDeltaTag = 0x30;
inline constexpr std::uint8_t kAuxAckFirstTag = 0x31;
inline constexpr std::uint8_t kAuxAckRelayTag = 0x32;
inline constexpr std::uint8_t kAuxAckSecondTag = 0x33;
inline constexpr std::uint8_t kSizeTag = 0x34;
inline constexpr std::uint8_t kFinalTag = 0x35;

// Documented constant of the compact label bound
// C * (ceil(log2 log2 (delta + 2)) + 1).
inline constexpr std::size_t kCompactLabelConstant = 34;

struct CompactPlan {
  Vertex root = 0;
  std::size_t delta = 0;
  // floor(log2 delta) + 1, or 0 for a single node.
  std::size_t helper_count = 0;
  std::vector<Vertex> helpers;
  exec::AckPlan ack;
  Bits message;
  SubtreeAssignment subtree;
  std::size_t index_width = 1;
};

CompactPlan plan_compact(const Graph& g);
// Blocks: [root][a][b][join stay go path end][index][message].
std::vector<Bits> compact_blocks(const CompactPlan& plan, Vertex v);
SchemeBundle build_compact_labels(const Graph& g);
nlohmann::json to_json(const CompactPlan& plan);

std::size_t compact_label_bound(std::size_t delta);

// Learns the maximum degree, runs an acknowledged broadcast, gathers the
// binary size up the broadcast tree and spreads it. Outputs n in decimal.
std::unique_ptr<NodeProgram> auxiliary_sd_program(std::span<const Bits> blocks);
std::unique_ptr<NodeProgram> auxiliary_sd_program(const LabelBits& label);

struct GeneralPlan {
  // Executor stages from the root.
  std::size_t stages = 0;
  bool compact = false;
};

// Compact mode iff the broadcast from the max-degree root takes fewer than
// log2 n stages.
GeneralPlan plan_general(const Graph& g);
// Labels: [mode] followed by the compact or path-message blocks.
SchemeBundle build_general_sd(const Graph& g);
std::unique_ptr<NodeProgram> general_sd_program(std::span<const Bits> blocks);
std::unique_ptr<NodeProgram> general_sd_program(const LabelBits& label);

// Lowest-index node of maximum degree.
Vertex max_degree_root(const Graph& g);

}  // namespace radiolab::sd
