#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "radiolab/bits.hpp"
#include "radiolab/graph.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::exec {

struct ExecBits {
  bool join = false;
  bool stay = false;
  bool go = false;

  Bits to_bits() const;
  // Reads the first three bits.
  static ExecBits from_bits(const Bits& bits);

  friend bool operator==(const ExecBits&, const ExecBits&) = default;
};

struct BroadcastTree {
  std::vector<Vertex> sources;
  std::vector<std::optional<Vertex>> parent;
  // Round of first reception, 0 for sources.
  std::vector<Round> level;
  std::vector<Round> parent_level;
  std::size_t stages = 0;

  Round rounds() const { return 3 * static_cast<Round>(stages); }
  Round max_level() const;
  // Children of every node in increasing index order.
  std::vector<std::vector<Vertex>> children() const;
  // Lowest-index node among those of maximum level.
  Vertex deepest() const;
  // Nodes from the tree root down to v.
  std::vector<Vertex> path_to(Vertex v) const;
};

struct DomStage {
  std::vector<Vertex> dom;
  std::vector<Vertex> frontier;
  // (DOM member, its feedback node)
  std::vector<std::pair<Vertex, Vertex>> feedback;
  std::vector<Vertex> informed_first;
  std::vector<Vertex> go_senders;
  std::vector<Vertex> informed_third;
};

struct DomSchedule {
  std::vector<DomStage> stages;
};

struct BroadcastPlan {
  std::vector<ExecBits> bits;
  BroadcastTree tree;
  DomSchedule schedule;
};

struct PlanOptions {
  // Set go=1 where a round-3 retransmission is collision free and informs a
  // new node.
  bool speedup_go = false;
};

// Greedy removal in descending index order. Result sorted ascending.
std::vector<Vertex> minimal_dominating_subset(std::span<const Vertex> candidates, std::span<const Vertex> targets,
                                              const Graph& g);

// Offline stage-by-stage simulation fixing the bits of every node.
BroadcastPlan plan_broadcast(const Graph& g, std::span<const Vertex> sources, const PlanOptions& options = {});

// Structural checks on a plan. Each returns the list of violations found.
std::vector<std::string> check_tree(const Graph& g, const BroadcastTree& tree);
std::vector<std::string> check_schedule(const Graph& g, const BroadcastPlan& plan);

nlohmann::json to_json(const BroadcastTree& tree);
nlohmann::json to_json(const DomSchedule& schedule);

}  // namespace radiolab::exec
