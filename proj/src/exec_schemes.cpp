#include "radiolab/exec_schemes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "radiolab/error.hpp"
#include "radiolab/program_util.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::exec {

namespace {

constexpr std::uint8_t kTagRun = kExecutorTag;
constexpr std::uint8_t kTagAckFirst = kAckFirstTag;
constexpr std::uint8_t kTagAckRelay = 0x21;
constexpr std::uint8_t kTagAckSecond = 0x22;
constexpr std::uint8_t kTagCollect = kCollectTag;
constexpr std::uint8_t kTagSpread = 0x24;

class ExecutorProgram : public NodeProgram {
 public:
  ExecutorProgram(const LabelBits& label, const std::string& payload) : session_(parse(label), kTagRun) {
    if (source_) {
      session_.start_as_source(1, payload);
      out_ = payload;
    }
  }

  Action act(const NodeContext& ctx) override { return to_action(session_.act(ctx.round)); }

  void observe(const NodeContext& ctx) override {
    session_.observe(ctx.round, ctx.history.back());
    if (session_.informed() && !out_) out_ = session_.payload();
  }

  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return session_.idle(); }

 private:
  ExecBits parse(const LabelBits& label) {
    auto blocks = split_label(label, 2);
    source_ = flag(blocks[1]);
    return ExecBits::from_bits(blocks[0]);
  }

  bool source_ = false;
  BroadcastSession session_;
  std::optional<std::string> out_;
};

class ExecAckProgram : public NodeProgram {
 public:
  explicit ExecAckProgram(const LabelBits& label) : ack_(parse(label), kTagAckFirst, kTagAckRelay, kTagAckSecond) {
    if (source_) ack_.start_as_source(1, "");
    check(0);
  }

  Action act(const NodeContext& ctx) override { return to_action(ack_.act(ctx.round)); }

  void observe(const NodeContext& ctx) override {
    ack_.observe(ctx.round, ctx.history.back());
    check(ctx.round);
  }

  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return ack_.idle(); }

 private:
  AckBits parse(const LabelBits& label) {
    auto blocks = split_label(label, 2);
    source_ = flag(blocks[1]);
    return AckBits::from_bits(blocks[0]);
  }

  void check(Round round) {
    if (out_ || !ack_.knows_length() || round < ack_.last_round()) return;
    out_ = std::to_string(ack_.length()) + " " + std::to_string(ack_.max_level()) + " " +
           std::to_string(ack_.first().level()) + " " + std::to_string(ack_.first().parent_level());
  }

  bool source_ = false;
  AckSession ack_;
  std::optional<std::string> out_;
};

std::string encode_chunks(const std::map<Round, Bits>& chunks) {
  Writer w;
  w.u8(kTagCollect).varint(chunks.size());
  for (const auto& [level, bits] : chunks) w.varint(static_cast<std::uint64_t>(level)).bits(bits);
  return std::move(w).str();
}

class PathMessageProgram : public NodeProgram {
 public:
  PathMessageProgram(std::span<const Bits> blocks, MessageFormatter format)
      : format_(format ? std::move(format) : [](const Bits& b) { return b.to_string(); }),
        ack_(parse(blocks), kTagAckFirst, kTagAckRelay, kTagAckSecond),
        spread_(bits_.exec, kTagSpread) {
    if (source_) ack_.start_as_source(1, "");
    progress(0);
  }

  Action act(const NodeContext& ctx) override {
    if (collect_at_ && *collect_at_ == ctx.round) {
      collect_at_.reset();
      sent_ = true;
      return Action::transmit(encode_chunks(chunks_));
    }
    if (auto m = ack_.act(ctx.round)) return Action::transmit(std::move(*m));
    return to_action(spread_.act(ctx.round));
  }

  void observe(const NodeContext& ctx) override {
    Observation obs = ctx.history.back();
    ack_.observe(ctx.round, obs);
    spread_.observe(ctx.round, obs);
    if (marked_ && !sent_ && has_tag(obs, kTagCollect)) {
      Reader r(obs.message);
      r.u8();
      for (auto count = r.varint(); count > 0; --count) {
        auto level = static_cast<Round>(r.varint());
        chunks_[level] = r.bits();
      }
    }
    progress(ctx.round);
  }

  std::optional<std::string> output() const override { return out_; }

  bool idle() const override {
    bool waiting_to_assemble = source_ && scheduled_ && !assembled_;
    return ack_.idle() && spread_.idle() && !collect_at_ && !waiting_to_assemble;
  }

 private:
  AckBits parse(std::span<const Bits> blocks) {
    if (blocks.size() != 4) throw Error(ErrorCode::ProtocolViolation, "path-message label needs 4 blocks");
    source_ = flag(blocks[0]);
    bits_ = AckBits::from_bits(blocks[1]);
    marked_ = flag(blocks[2]);
    chunk_ = blocks[3];
    return bits_;
  }

  void progress(Round round) {
    if (!scheduled_ && ack_.knows_length()) {
      scheduled_ = true;
      Round end = ack_.last_round();
      Round top = ack_.max_level();
      Round level = ack_.first().level();
      if (marked_) chunks_[level] = chunk_;
      if (source_) {
        assemble_at_ = end + top;
      } else if (marked_) {
        collect_at_ = end + top - level + 1;
      }
    }
    if (source_ && scheduled_ && !assembled_ && round >= assemble_at_) {
      assembled_ = true;
      Bits message;
      for (const auto& [level, bits] : chunks_) message.append(bits);
      out_ = format_(message);
      spread_.start_as_source(assemble_at_ + 1, Writer().bits(message).str());
    }
    if (!source_ && !out_ && spread_.informed()) {
      Reader r(spread_.payload());
      out_ = format_(r.bits());
    }
  }

  MessageFormatter format_;
  bool source_ = false;
  bool marked_ = false;
  Bits chunk_;
  AckBits bits_;
  AckSession ack_;
  BroadcastSession spread_;
  std::map<Round, Bits> chunks_;
  bool scheduled_ = false;
  bool assembled_ = false;
  bool sent_ = false;
  Round assemble_at_ = 0;
  std::optional<Round> collect_at_;
  std::optional<std::string> out_;
};

SchemeBundle make_bundle(std::string name, std::size_t n, const std::function<std::vector<Bits>(Vertex)>& blocks) {
  SchemeBundle b;
  b.scheme = std::move(name);
  for (Vertex v = 0; v < n; ++v) b.labels.push_back(encode_blocks(blocks(v)));
  return b;
}

}  // namespace

ExecutorSynthesis synthesize_mbroadcast(const Graph& g, std::span<const Vertex> sources, const PlanOptions& options) {
  require_connected(g);
  ExecutorSynthesis out;
  out.plan = plan_broadcast(g, sources, options);
  std::set<Vertex> src(sources.begin(), sources.end());
  out.bundle = make_bundle("executor", g.size(), [&](Vertex v) {
    return std::vector<Bits>{out.plan.bits[v].to_bits(), to_binary(src.count(v))};
  });
  out.bundle.metadata = {{"tree", to_json(out.plan.tree)}, {"schedule", to_json(out.plan.schedule)},
                         {"rounds", out.plan.tree.rounds()}};
  return out;
}

ExecutorSynthesis synthesize_executor(const Graph& g, Vertex s, const PlanOptions& options) {
  std::vector<Vertex> sources{s};
  return synthesize_mbroadcast(g, sources, options);
}

std::unique_ptr<NodeProgram> executor_program(const LabelBits& label, const std::string& payload) {
  return std::make_unique<ExecutorProgram>(label, payload);
}

AckPlan plan_ack(const Graph& g, Vertex s, const PlanOptions& options) {
  require_connected(g);
  AckPlan plan;
  std::vector<Vertex> sources{s};
  plan.broadcast = plan_broadcast(g, sources, options);
  plan.path = plan.broadcast.tree.path_to(plan.broadcast.tree.deepest());
  plan.bits.assign(g.size(), {});
  for (Vertex v = 0; v < g.size(); ++v) plan.bits[v].exec = plan.broadcast.bits[v];
  for (Vertex v : plan.path) plan.bits[v].path = true;
  plan.bits[plan.path.back()].end = true;
  return plan;
}

AckSynthesis synthesize_execack(const Graph& g, Vertex s, const PlanOptions& options) {
  AckSynthesis out;
  out.plan = plan_ack(g, s, options);
  out.bundle = make_bundle("execack", g.size(), [&](Vertex v) {
    return std::vector<Bits>{out.plan.bits[v].to_bits(), to_binary(v == s)};
  });
  out.bundle.metadata = to_json(out.plan);
  return out;
}

std::unique_ptr<NodeProgram> execack_program(const LabelBits& label) { return std::make_unique<ExecAckProgram>(label); }

PathMessagePlan plan_path_message(const Graph& g, Vertex s, const Bits& message, const PlanOptions& options) {
  PathMessagePlan plan;
  plan.ack = plan_ack(g, s, options);
  const auto& tree = plan.ack.broadcast.tree;
  const auto children = tree.children();
  const auto& path = plan.ack.path;

  std::set<Vertex> marked(path.begin(), path.end());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Vertex v = path[i];
    Round next_level = tree.level[path[i + 1]];
    for (Round k = tree.level[v] + 1; k < next_level; ++k) {
      if (k % 3 != 1) continue;
      for (Vertex c : children[v]) {
        if (tree.level[c] == k) {
          marked.insert(c);
          break;
        }
      }
    }
  }
  plan.marked.assign(marked.begin(), marked.end());
  std::stable_sort(plan.marked.begin(), plan.marked.end(),
                   [&](Vertex a, Vertex b) { return tree.level[a] < tree.level[b]; });

  Round t = tree.rounds();
  plan.chunk_size = t == 0 ? message.size() : 9 * ((message.size() + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t));
  plan.chunk.assign(g.size(), {});
  std::size_t pos = 0;
  for (Vertex v : plan.marked) {
    std::size_t take = std::min(plan.chunk_size, message.size() - pos);
    plan.chunk[v] = message.slice(pos, take);
    pos += take;
  }
  if (pos != message.size()) throw Error(ErrorCode::MessageTooLong, "marked path cannot hold the message");
  return plan;
}

std::vector<Bits> path_message_blocks(const PathMessagePlan& plan, Vertex v) {
  bool marked = std::find(plan.marked.begin(), plan.marked.end(), v) != plan.marked.end();
  return {to_binary(v == plan.ack.path.front()), plan.ack.bits[v].to_bits(), to_binary(marked), plan.chunk[v]};
}

PathMessageSynthesis synthesize_path_message(const Graph& g, Vertex s, const Bits& message, const PlanOptions& options) {
  PathMessageSynthesis out;
  out.plan = plan_path_message(g, s, message, options);
  out.bundle = make_bundle("path-message", g.size(), [&](Vertex v) { return path_message_blocks(out.plan, v); });
  out.bundle.metadata = to_json(out.plan.ack);
  out.bundle.metadata["marked"] = out.plan.marked;
  out.bundle.metadata["chunk_size"] = out.plan.chunk_size;
  return out;
}

std::unique_ptr<NodeProgram> path_message_program(std::span<const Bits> blocks, MessageFormatter format) {
  return std::make_unique<PathMessageProgram>(blocks, std::move(format));
}

std::unique_ptr<NodeProgram> path_message_program(const LabelBits& label) {
  auto blocks = decode_blocks(label);
  return path_message_program(blocks);
}

nlohmann::json to_json(const AckPlan& plan) {
  return {{"tree", to_json(plan.broadcast.tree)},
          {"schedule", to_json(plan.broadcast.schedule)},
          {"rounds", plan.broadcast.tree.rounds()},
          {"path", plan.path}};
}

}  // namespace radiolab::exec
