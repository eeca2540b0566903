#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "radiolab/bfs_tree.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::topo {

struct Report {
  NodeId id;
  // sorted
  std::vector<NodeId> neighbors;

  auto operator<=>(const Report&) const = default;
};

std::string encode_id(const NodeId& id);
std::string encode_report(const Report& r);
Report decode_report(std::string_view data);
nlohmann::json id_json(const NodeId& id);

struct Topology {
  // sorted; graph vertex i is ids[i]
  std::vector<NodeId> ids;
  Graph graph;
};

// Edge {u, v} iff one lists the other. Throws InconsistentReports when a
// listing is one-sided or names an unknown id.
Topology reconstruct_topology(std::span<const Report> reports);

// Round counts of the layered primitives on a tree of depth d.
Round broadcast_bfs_rounds(std::size_t depth, std::size_t delta);
Round ack_bfs_rounds(std::size_t depth, std::size_t delta);
Round gather_bfs_rounds(std::size_t depth, std::size_t delta);

struct TopRecSchedule {
  Round ack = 0;
  Round stage2_length = 0;
  Round stage2_start = 0;
  Round stage3_start = 0;
  Round stage4_start = 0;
  Round total = 0;
};

TopRecSchedule toprec_schedule(std::size_t depth, std::size_t delta, std::size_t stage2_length);

// total <= C1 * D * delta + C2 * min(n, delta^2 + 1) + C3
inline constexpr Round kTopRecC1 = 15;
inline constexpr Round kTopRecC2 = 1;
inline constexpr Round kTopRecC3 = 1;
Round toprec_bound(std::size_t diameter, std::size_t delta, std::size_t n);

// Encoded label length <= C * (ceil(log2(delta + 1)) + 1) + c0.
inline constexpr std::size_t kTopRecLabelC = 16;
inline constexpr std::size_t kTopRecLabelC0 = 24;
std::size_t toprec_label_bound(std::size_t delta);

// BFS-label programs. Broadcast: everyone outputs the payload. Ack: everyone
// outputs the total length once it is over. Gather: payload of a node is its
// id; the root outputs the sorted ids as JSON, the others their own id.
std::unique_ptr<NodeProgram> broadcast_bfs_program(const LabelBits& label, const std::string& payload = "M");
std::unique_ptr<NodeProgram> ack_br_bfs_program(const LabelBits& label);
std::unique_ptr<NodeProgram> gather_bfs_program(const LabelBits& label);

struct TopRecPlan {
  BfsTree tree;
  std::vector<std::size_t> color;
  // Unique ids 1..n replace colors when delta^2 + 1 > n.
  bool unique_ids = false;
  std::size_t stage2_length = 0;
  std::vector<NodeId> ids;
  TopRecSchedule schedule;
};

// Root is node 0.
TopRecPlan plan_toprec(const Graph& g);
// Blocks: [root leaf ack mode][b][g][delta][color][id][n at the root].
std::vector<Bits> toprec_blocks(const TopRecPlan& plan, Vertex v);
SchemeBundle build_toprec_labels(const Graph& g);
// Output: {"edges": [[idA, idB], ...], "self": id}.
std::unique_ptr<NodeProgram> toprec_program(const LabelBits& label);

struct TopRecOutput {
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId self;
};
TopRecOutput parse_toprec_output(const std::string& text);

}  // namespace radiolab::topo
