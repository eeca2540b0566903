#include "radiolab/radio.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "radiolab/error.hpp"

namespace radiolab {

std::string_view to_string(ObservationKind kind) {
  switch (kind) {
    case ObservationKind::Heard: return "heard";
    case ObservationKind::Noise: return "noise";
    case ObservationKind::Collision: return "collision";
    case ObservationKind::Silence: return "silence";
    case ObservationKind::Transmitted: return "transmitted";
  }
  return "unknown";
}

namespace {

ObservationKind quiet_kind(std::size_t count, bool cd) {
  if (!cd) return ObservationKind::Noise;
  return count == 0 ? ObservationKind::Silence : ObservationKind::Collision;
}

}  // namespace

Observation observation(Vertex v, std::span<const Transmission> transmitters, const Graph& g, bool cd,
                        bool v_transmitted) {
  if (v_transmitted) return {ObservationKind::Transmitted, {}};
  std::size_t count = 0;
  const Transmission* only = nullptr;
  for (const auto& t : transmitters) {
    if (t.node != v && g.adjacent(v, t.node)) {
      ++count;
      only = &t;
    }
  }
  if (count == 1) return {ObservationKind::Heard, only->message};
  return {quiet_kind(count, cd), {}};
}

Observation HistoryView::operator[](std::size_t i) const {
  if (i >= size_) throw Error(ErrorCode::IndexOutOfRange, "history index " + std::to_string(i));
  return trace_->observation_at(static_cast<Round>(i) + 1, node_);
}

Round default_max_rounds(std::size_t n) {
  return std::max<Round>(50 * static_cast<Round>(n) * static_cast<Round>(n), 50);
}

std::span<const Transmission> ExecutionTrace::transmitters(Round r) const {
  if (r < 1 || r > rounds()) throw Error(ErrorCode::IndexOutOfRange, "round " + std::to_string(r));
  return rounds_[static_cast<std::size_t>(r - 1)];
}

const Transmission* ExecutionTrace::find(Round r, Vertex v) const {
  auto tx = transmitters(r);
  auto it = std::lower_bound(tx.begin(), tx.end(), v, [](const Transmission& t, Vertex x) { return t.node < x; });
  return it != tx.end() && it->node == v ? &*it : nullptr;
}

bool ExecutionTrace::transmitted(Round r, Vertex v) const { return find(r, v) != nullptr; }

Observation ExecutionTrace::observation_at(Round r, Vertex v) const {
  if (r == rounds() && !last_.empty()) {
    const Slot& s = last_.at(v);
    if (s.kind == ObservationKind::Heard) return {s.kind, rounds_.back()[s.sender].message};
    return {s.kind, {}};
  }
  auto tx = transmitters(r);
  if (find(r, v)) return {ObservationKind::Transmitted, {}};
  auto nbrs = graph_->neighbors(v);
  std::size_t count = 0;
  const Transmission* only = nullptr;
  if (tx.size() < nbrs.size()) {
    for (const auto& t : tx) {
      if (graph_->adjacent(v, t.node)) {
        ++count;
        only = &t;
      }
    }
  } else {
    for (Vertex w : nbrs) {
      if (const Transmission* t = find(r, w)) {
        ++count;
        only = t;
      }
    }
  }
  if (count == 1) return {ObservationKind::Heard, only->message};
  return {quiet_kind(count, cd_), {}};
}

std::optional<Vertex> ExecutionTrace::heard_from(Round r, Vertex v) const {
  if (find(r, v)) return std::nullopt;
  std::optional<Vertex> sender;
  for (Vertex w : graph_->neighbors(v)) {
    if (find(r, w)) {
      if (sender) return std::nullopt;
      sender = w;
    }
  }
  return sender;
}

class Engine {
 public:
  static ExecutionTrace run(const Graph& g, std::span<const LabelBits> labels, const ProgramFactory& factory,
                            const RunOptions& options);
};

ExecutionTrace Engine::run(const Graph& g, std::span<const LabelBits> labels, const ProgramFactory& factory,
                           const RunOptions& options) {
  const std::size_t n = g.size();
  if (labels.size() != n) {
    throw Error(ErrorCode::InvalidParams,
                std::to_string(labels.size()) + " labels for " + std::to_string(n) + " nodes");
  }
  const Round limit = options.max_rounds.value_or(default_max_rounds(n));

  ExecutionTrace trace;
  trace.graph_ = std::make_shared<const Graph>(g);
  trace.cd_ = options.collision_detection;
  trace.outputs_.assign(n, std::nullopt);
  trace.output_rounds_.assign(n, 0);

  std::vector<std::unique_ptr<NodeProgram>> programs;
  programs.reserve(n);
  for (Vertex v = 0; v < n; ++v) programs.push_back(factory(labels[v]));

  std::size_t pending = n;
  auto collect_outputs = [&](Round r) {
    for (Vertex v = 0; v < n; ++v) {
      if (trace.outputs_[v]) continue;
      if (auto out = programs[v]->output()) {
        trace.outputs_[v] = std::move(out);
        trace.output_rounds_[v] = r;
        --pending;
      }
    }
  };
  auto finished = [&] {
    return pending == 0 && std::all_of(programs.begin(), programs.end(), [](const auto& p) { return p->idle(); });
  };

  collect_outputs(0);
  std::vector<std::uint32_t> count(n);
  std::vector<std::uint32_t> sender(n);
  for (Round r = 1; !finished(); ++r) {
    if (r > limit) {
      if (pending == 0) break;
      throw Error(ErrorCode::RoundLimitExceeded,
                  std::to_string(pending) + " node(s) without output after " + std::to_string(limit) + " rounds");
    }
    std::vector<Transmission> tx;
    for (Vertex v = 0; v < n; ++v) {
      NodeContext ctx{labels[v], r, HistoryView(&trace, v, static_cast<std::size_t>(r - 1))};
      Action a = programs[v]->act(ctx);
      if (a.transmits()) tx.push_back({v, a.message()});
    }

    std::fill(count.begin(), count.end(), 0);
    for (std::uint32_t i = 0; i < tx.size(); ++i) {
      for (Vertex w : g.neighbors(tx[i].node)) {
        ++count[w];
        sender[w] = i;
      }
    }
    trace.last_.assign(n, {ObservationKind::Noise, 0});
    for (Vertex v = 0; v < n; ++v) {
      auto& slot = trace.last_[v];
      if (count[v] == 1) slot = {ObservationKind::Heard, sender[v]};
      else slot = {quiet_kind(count[v], trace.cd_), 0};
    }
    for (const auto& t : tx) trace.last_[t.node] = {ObservationKind::Transmitted, 0};
    trace.rounds_.push_back(std::move(tx));

    for (Vertex v = 0; v < n; ++v) {
      NodeContext ctx{labels[v], r, HistoryView(&trace, v, static_cast<std::size_t>(r))};
      programs[v]->observe(ctx);
    }
    collect_outputs(r);
  }
  return trace;
}

ExecutionTrace run(const Graph& g, std::span<const LabelBits> labels, const ProgramFactory& factory,
                   const RunOptions& options) {
  return Engine::run(g, labels, factory, options);
}

History history_of(const ExecutionTrace& trace, Vertex v) {
  if (v >= trace.node_count()) throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v));
  History h;
  h.reserve(static_cast<std::size_t>(trace.rounds()));
  for (Round r = 1; r <= trace.rounds(); ++r) {
    Observation o = trace.observation_at(r, v);
    h.push_back({o.kind, std::string(o.message)});
  }
  return h;
}

std::string history_symbol(const HistoryEntry& entry) {
  switch (entry.kind) {
    case ObservationKind::Transmitted:
    case ObservationKind::Collision: return "#";
    case ObservationKind::Silence: return "ε";
    case ObservationKind::Noise: return "?";
    case ObservationKind::Heard: return entry.message;
  }
  return "";
}

}  // namespace radiolab
