#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radiolab/graph.hpp"
#include "radiolab/labels.hpp"

namespace radiolab {

using Round = std::int64_t;
using Message = std::string;

class Action {
 public:
  static Action listen() { return Action(); }
  static Action transmit(Message message) {
    Action a;
    a.transmits_ = true;
    a.message_ = std::move(message);
    return a;
  }

  bool transmits() const noexcept { return transmits_; }
  const Message& message() const noexcept { return message_; }

 private:
  Action() = default;
  bool transmits_ = false;
  Message message_;
};

// Without collision detection a listener observes Heard or Noise; with it,
// Heard, Collision or Silence. A transmitter always observes Transmitted.
enum class ObservationKind : std::uint8_t { Heard, Noise, Collision, Silence, Transmitted };

std::string_view to_string(ObservationKind kind);

struct Observation {
  ObservationKind kind = ObservationKind::Noise;
  // Only meaningful for Heard. Points into engine storage: copy what you keep.
  std::string_view message;

  bool heard() const noexcept { return kind == ObservationKind::Heard; }
};

struct Transmission {
  Vertex node;
  Message message;
};

Observation observation(Vertex v, std::span<const Transmission> transmitters, const Graph& g, bool cd,
                        bool v_transmitted);

class ExecutionTrace;

// Read-only view of one node's past observations. Deliberately carries no
// node identity that a program could read.
class HistoryView {
 public:
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  // Entry i is the observation of round i + 1.
  Observation operator[](std::size_t i) const;
  Observation back() const { return (*this)[size_ - 1]; }

 private:
  friend class Engine;
  HistoryView(const ExecutionTrace* trace, Vertex node, std::size_t size) : trace_(trace), node_(node), size_(size) {}

  const ExecutionTrace* trace_;
  Vertex node_;
  std::size_t size_;
};

struct NodeContext {
  const LabelBits& label;
  Round round;
  HistoryView history;
};

// A node's local algorithm. It sees its label (at construction and in every
// context), the round number and its own history, nothing else.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;

  // Decide the action for ctx.round. ctx.history covers rounds before it.
  virtual Action act(const NodeContext& ctx) = 0;
  // Called after ctx.round; ctx.history.back() is that round's observation.
  virtual void observe(const NodeContext& ctx) = 0;
  virtual std::optional<std::string> output() const = 0;
  // True when the program will not transmit again unless it hears something.
  virtual bool idle() const = 0;
};

using ProgramFactory = std::function<std::unique_ptr<NodeProgram>(const LabelBits& label)>;

struct RunOptions {
  bool collision_detection = false;
  // Defaults to default_max_rounds(n).
  std::optional<Round> max_rounds;
};

Round default_max_rounds(std::size_t n);

class ExecutionTrace {
 public:
  std::size_t node_count() const noexcept { return graph_->size(); }
  Round rounds() const noexcept { return static_cast<Round>(rounds_.size()); }
  bool collision_detection() const noexcept { return cd_; }
  const Graph& graph() const noexcept { return *graph_; }

  // Transmitters of round r (1-based), sorted by node.
  std::span<const Transmission> transmitters(Round r) const;
  bool transmitted(Round r, Vertex v) const;
  Observation observation_at(Round r, Vertex v) const;
  // Offline only: the neighbor whose message v heard in round r.
  std::optional<Vertex> heard_from(Round r, Vertex v) const;

  const std::optional<std::string>& output(Vertex v) const { return outputs_.at(v); }
  // Round after which v first reported its output; 0 if before round 1.
  Round output_round(Vertex v) const { return output_rounds_.at(v); }

 private:
  friend class Engine;

  struct Slot {
    ObservationKind kind;
    std::uint32_t sender;  // index into the round's transmitters when Heard
  };

  const Transmission* find(Round r, Vertex v) const;

  std::shared_ptr<const Graph> graph_;
  bool cd_ = false;
  std::vector<std::vector<Transmission>> rounds_;
  // Observations of the most recent round, cached for the running engine.
  std::vector<Slot> last_;
  std::vector<std::optional<std::string>> outputs_;
  std::vector<Round> output_rounds_;
};

// Throws RoundLimitExceeded if some node has not produced an output by the
// round limit.
ExecutionTrace run(const Graph& g, std::span<const LabelBits> labels, const ProgramFactory& factory,
                   const RunOptions& options = {});

struct HistoryEntry {
  ObservationKind kind;
  std::string message;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

using History = std::vector<HistoryEntry>;

History history_of(const ExecutionTrace& trace, Vertex v);

// Display form: "#" for a transmission or a collision, "ε" for silence,
// "?" for no-CD noise, otherwise the message bytes.
std::string history_symbol(const HistoryEntry& entry);

}  // namespace radiolab
