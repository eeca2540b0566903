#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "radiolab/exec_session.hpp"
#include "radiolab/executor.hpp"
#include "radiolab/labels.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::exec {

// Message tag of the stand-alone broadcast program.
inline constexpr std::uint8_t kExecutorTag = 0x10;
// Tag of the first run inside an acknowledged broadcast.
inline constexpr std::uint8_t kAckFirstTag = 0x20;
// Tag of the upward collection messages of the path-message program.
inline constexpr std::uint8_t kCollectTag = 0x23;

struct ExecutorSynthesis {
  SchemeBundle bundle;
  BroadcastPlan plan;
};

// Labels: [join stay go][source].
ExecutorSynthesis synthesize_executor(const Graph& g, Vertex s, const PlanOptions& options = {});
ExecutorSynthesis synthesize_mbroadcast(const Graph& g, std::span<const Vertex> sources,
                                        const PlanOptions& options = {});
// Sources broadcast `payload`; every node outputs the payload once it has it.
std::unique_ptr<NodeProgram> executor_program(const LabelBits& label, const std::string& payload = "M");

struct AckPlan {
  BroadcastPlan broadcast;
  // Root to deepest node.
  std::vector<Vertex> path;
  std::vector<AckBits> bits;
};

AckPlan plan_ack(const Graph& g, Vertex s, const PlanOptions& options = {});

struct AckSynthesis {
  SchemeBundle bundle;
  AckPlan plan;
};

// Labels: [join stay go path end][source].
AckSynthesis synthesize_execack(const Graph& g, Vertex s, const PlanOptions& options = {});
// Outputs "t L level parent_level" once the acknowledged broadcast ends.
std::unique_ptr<NodeProgram> execack_program(const LabelBits& label);

struct PathMessagePlan {
  AckPlan ack;
  // Marked nodes in increasing level order, starting with the root.
  std::vector<Vertex> marked;
  std::vector<Bits> chunk;
  std::size_t chunk_size = 0;
};

PathMessagePlan plan_path_message(const Graph& g, Vertex s, const Bits& message, const PlanOptions& options = {});

// Blocks: [source][join stay go path end][marked][chunk].
std::vector<Bits> path_message_blocks(const PathMessagePlan& plan, Vertex v);

struct PathMessageSynthesis {
  SchemeBundle bundle;
  PathMessagePlan plan;
};

PathMessageSynthesis synthesize_path_message(const Graph& g, Vertex s, const Bits& message,
                                             const PlanOptions& options = {});

using MessageFormatter = std::function<std::string(const Bits&)>;

// Runs on the block list produced by path_message_blocks. Every node outputs
// format(M); the default prints the bits.
std::unique_ptr<NodeProgram> path_message_program(std::span<const Bits> blocks, MessageFormatter format = {});
std::unique_ptr<NodeProgram> path_message_program(const LabelBits& label);

nlohmann::json to_json(const AckPlan& plan);

}  // namespace radiolab::exec
