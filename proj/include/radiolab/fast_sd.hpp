#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "radiolab/executor.hpp"
#include "radiolab/labels.hpp"

namespace radiolab::sd {

inline constexpr std::uint8_t kRelayTag = 0x40;
inline constexpr std::uint8_t kStripeTag = 0x41;
inline constexpr std::uint8_t kGlobalTag = 0x42;

struct StripeDecomposition {
  Vertex root = 0;
  // bit length of n
  std::size_t lg = 0;
  LayerAssignment layers;
  std::vector<bool> green;
  std::vector<bool> super_green;
  // Stripe index j of nodes in a complete stripe, -1 elsewhere.
  std::vector<int> stripe;
  // Complete stripes, increasing.
  std::vector<std::size_t> stripes;

  std::size_t first_layer(std::size_t j) const { return j * lg; }
  std::size_t last_layer(std::size_t j) const { return (j + 1) * lg - 1; }
};

// Throws TooShallow when the BFS depth from s is below the bit length of n.
StripeDecomposition stripe_decomposition(const Graph& g, Vertex s);

// u and every node reachable from it by edges that each go one layer down,
// stopping at layer `to`. Sorted.
std::vector<Vertex> bfs_reach(const Graph& g, const LayerAssignment& layers, Vertex u, std::size_t to);

// Minimal subset of the first stripe layer reaching every super-green node
// of stripe j. Greedy removal in descending index order; sorted result.
std::vector<Vertex> minimal_bfs_cover(const Graph& g, const StripeDecomposition& sd, std::size_t j);

// One path per cover node, from the cover node down to a super-green node
// reached by no other cover node. Throws WitnessNotFound if there is none.
std::vector<std::vector<Vertex>> conflict_free_paths(const Graph& g, const StripeDecomposition& sd, std::size_t j,
                                                     std::span<const Vertex> cover);

// Edges joining nodes of different layers on two distinct paths.
std::vector<Edge> conflicting_edges(const Graph& g, const LayerAssignment& layers,
                                    const std::vector<std::vector<Vertex>>& paths);

struct StripePlan {
  std::size_t index = 0;
  std::vector<Vertex> cover;
  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> reach;
  std::size_t phase2_stages = 0;
};

struct FastPlan {
  bool fast = false;
  StripeDecomposition sd;
  std::vector<StripePlan> stripes;
  std::vector<bool> reach;
  std::vector<bool> cover;
  std::vector<bool> on_path;
  std::vector<bool> message_bit;
  std::vector<exec::ExecBits> phase2;
  exec::BroadcastPlan stage2;
  // First round of the global run.
  Round barrier = 0;
};

// Stage-2 start lg + 3n + 1.
Round fast_barrier(std::size_t n);

// Root is node 0; fast mode iff its BFS depth is at least lg n.
FastPlan plan_fast(const Graph& g);
// Fast mode: [1][reach sg cover paths][M_v][B_v][S2_v]. Otherwise [0] and
// the general-scheme blocks.
SchemeBundle build_fast_sd(const Graph& g);
nlohmann::json to_json(const FastPlan& plan);

std::unique_ptr<NodeProgram> fast_sd_program(const LabelBits& label);

}  // namespace radiolab::sd
