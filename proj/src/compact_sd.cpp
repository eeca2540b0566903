#include "radiolab/compact_sd.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "radiolab/error.hpp"
#include "radiolab/program_util.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::sd {

Vertex max_degree_root(const Graph& g) {
  Vertex best = 0;
  for (Vertex v = 1; v < g.size(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

CompactPlan plan_compact(const Graph& g) {
  require_connected(g);
  CompactPlan plan;
  plan.root = max_degree_root(g);
  plan.delta = g.max_degree();
  plan.helper_count = bit_width_of(plan.delta);
  auto nbrs = g.neighbors(plan.root);
  plan.helpers.assign(nbrs.begin(), nbrs.begin() + static_cast<std::ptrdiff_t>(plan.helper_count));
  plan.ack = exec::plan_ack(g, plan.root);
  plan.message = to_binary(g.size());
  plan.subtree = assign_subtree_bits(plan.ack.broadcast.tree.parent, plan.root, plan.message);
  plan.index_width = std::max<std::size_t>(1, bit_width_of(plan.helper_count));
  return plan;
}

std::vector<Bits> compact_blocks(const CompactPlan& plan, Vertex v) {
  Bits a = to_binary(0);
  Bits b = to_binary(0);
  if (v == plan.root) {
    a = to_binary(plan.helper_count);
  } else if (auto it = std::find(plan.helpers.begin(), plan.helpers.end(), v); it != plan.helpers.end()) {
    std::size_t i = static_cast<std::size_t>(it - plan.helpers.begin()) + 1;
    a = to_binary(i, plan.index_width);
    b = to_binary(plan.delta, plan.helper_count).slice(i - 1, 1);
  }
  Bits index = to_binary(plan.subtree.child_number[v], plan.index_width);
  return {to_binary(v == plan.root), a, b, plan.ack.bits[v].to_bits(), index, plan.subtree.bits[v]};
}

nlohmann::json to_json(const CompactPlan& plan) {
  auto j = exec::to_json(plan.ack);
  j["root"] = plan.root;
  j["delta"] = plan.delta;
  j["helpers"] = plan.helpers;
  j["message"] = plan.message.to_string();
  j["child_number"] = plan.subtree.child_number;
  std::vector<Vertex> members;
  for (Vertex v = 0; v < plan.subtree.in_subtree.size(); ++v)
    if (plan.subtree.in_subtree[v]) members.push_back(v);
  j["subtree"] = members;
  return j;
}

SchemeBundle build_compact_labels(const Graph& g) {
  auto plan = plan_compact(g);
  SchemeBundle b;
  b.scheme = "compact";
  for (Vertex v = 0; v < g.size(); ++v) b.labels.push_back(encode_blocks(compact_blocks(plan, v)));
  b.metadata = to_json(plan);
  return b;
}

std::size_t compact_label_bound(std::size_t delta) {
  double inner = std::log2(std::log2(static_cast<double>(delta) + 2.0));
  auto lg = static_cast<std::size_t>(std::max(0.0, std::ceil(inner - 1e-12)));
  return kCompactLabelConstant * (lg + 1);
}

namespace {

class AuxiliaryProgram : public NodeProgram {
 public:
  explicit AuxiliaryProgram(std::span<const Bits> blocks)
      : ack_(parse(blocks), kAuxAckFirstTag, kAuxAckRelayTag, kAuxAckSecondTag), final_(bits_.exec, kFinalTag) {
    if (root_ && helper_count_ == 0) start_ack(1);
    progress(0);
  }

  Action act(const NodeContext& ctx) override {
    Round r = ctx.round;
    if (!root_ && helper_ > 0 && r == static_cast<Round>(helper_)) {
      return Action::transmit(Writer().u8(kDeltaTag).bits(delta_bit_).str());
    }
    if (send_at_ && *send_at_ == r) {
      send_at_.reset();
      Bits payload = gathered();
      return Action::transmit(Writer()
                                  .u8(kSizeTag)
                                  .varint(static_cast<std::uint64_t>(ack_.first().level()))
                                  .varint(index_)
                                  .bits(payload)
                                  .str());
    }
    if (auto m = ack_.act(r)) return Action::transmit(std::move(*m));
    return to_action(final_.act(r));
  }

  void observe(const NodeContext& ctx) override {
    Round r = ctx.round;
    Observation obs = ctx.history.back();
    if (root_ && has_tag(obs, kDeltaTag)) {
      Reader rd(obs.message);
      rd.u8();
      Bits bit = rd.bits();
      if (bit.size() != 1) throw Error(ErrorCode::ProtocolViolation, "bad degree bit");
      delta_bits_[r] = bit[0];
    }
    if (root_ && helper_count_ > 0 && r == static_cast<Round>(helper_count_)) {
      Bits d;
      for (Round i = 1; i <= r; ++i) {
        auto it = delta_bits_.find(i);
        if (it == delta_bits_.end()) throw Error(ErrorCode::ProtocolViolation, "missing degree bit");
        d.push_back(it->second);
      }
      start_ack(r + 1, from_binary(d));
    }
    ack_.observe(r, obs);
    final_.observe(r, obs);
    if (has_tag(obs, kSizeTag)) {
      Reader rd(obs.message);
      rd.u8();
      auto level = static_cast<Round>(rd.varint());
      auto k = rd.varint();
      Bits bits = rd.bits();
      if (ack_.first().informed() && ack_.first().sent_broadcast_at(level)) received_[k] = bits;
    }
    progress(r);
  }

  std::optional<std::string> output() const override { return out_; }

  bool idle() const override {
    bool waiting = root_ && !assembled_;
    return ack_.idle() && final_.idle() && !send_at_ && !waiting;
  }

 private:
  exec::AckBits parse(std::span<const Bits> blocks) {
    if (blocks.size() != 6) throw Error(ErrorCode::ProtocolViolation, "compact label needs 6 blocks");
    root_ = flag(blocks[0]);
    if (root_) {
      helper_count_ = from_binary(blocks[1]);
    } else {
      helper_ = from_binary(blocks[1]);
      delta_bit_ = blocks[2];
    }
    bits_ = exec::AckBits::from_bits(blocks[3]);
    index_ = from_binary(blocks[4]);
    own_ = blocks[5];
    return bits_;
  }

  void start_ack(Round round, std::uint64_t delta = 0) {
    ack_.start_as_source(round, Writer().varint(delta).str());
  }

  Bits gathered() const {
    Bits out;
    for (const auto& [k, bits] : received_) out.append(bits);
    out.append(own_);
    return out;
  }

  void progress(Round round) {
    if (!scheduled_ && ack_.knows_length() && ack_.first().informed()) {
      scheduled_ = true;
      Reader rd(ack_.first().payload());
      auto delta = rd.varint();
      auto phase = static_cast<Round>(bit_width_of(delta));
      Round top = ack_.max_level();
      Round start = ack_.last_round() + 1;
      if (root_) {
        assemble_at_ = start + top * phase - 1;
      } else if (index_ > 0) {
        send_at_ = start + (top - ack_.first().level()) * phase + static_cast<Round>(index_) - 1;
      }
    }
    if (root_ && scheduled_ && !assembled_ && round >= assemble_at_) {
      assembled_ = true;
      Bits m = gathered();
      if (m.empty() || !m[0] || m.size() > 64) {
        throw Error(ErrorCode::ProtocolViolation, "gathered size \"" + m.to_string() + "\" is malformed");
      }
      auto n = from_binary(m);
      out_ = std::to_string(n);
      final_.start_as_source(std::max(round, assemble_at_) + 1, Writer().varint(n).str());
    }
    if (!root_ && !out_ && final_.informed()) {
      Reader rd(final_.payload());
      out_ = std::to_string(rd.varint());
    }
  }

  bool root_ = false;
  std::uint64_t helper_count_ = 0;
  std::uint64_t helper_ = 0;
  Bits delta_bit_;
  exec::AckBits bits_;
  std::uint64_t index_ = 0;
  Bits own_;
  exec::AckSession ack_;
  exec::BroadcastSession final_;
  std::map<Round, bool> delta_bits_;
  std::map<std::uint64_t, Bits> received_;
  bool scheduled_ = false;
  bool assembled_ = false;
  Round assemble_at_ = 0;
  std::optional<Round> send_at_;
  std::optional<std::string> out_;
};

}  // namespace

std::unique_ptr<NodeProgram> auxiliary_sd_program(std::span<const Bits> blocks) {
  return std::make_unique<AuxiliaryProgram>(blocks);
}

std::unique_ptr<NodeProgram> auxiliary_sd_program(const LabelBits& label) {
  auto blocks = decode_blocks(label);
  return auxiliary_sd_program(blocks);
}

GeneralPlan plan_general(const Graph& g) {
  require_connected(g);
  std::vector<Vertex> src{max_degree_root(g)};
  auto plan = exec::plan_broadcast(g, src);
  GeneralPlan out;
  out.stages = plan.tree.stages;
  out.compact = static_cast<double>(out.stages) < std::log2(static_cast<double>(g.size()));
  return out;
}

SchemeBundle build_general_sd(const Graph& g) {
  auto general = plan_general(g);
  SchemeBundle b;
  b.scheme = "general";
  if (general.compact) {
    auto plan = plan_compact(g);
    for (Vertex v = 0; v < g.size(); ++v) {
      auto blocks = compact_blocks(plan, v);
      blocks.insert(blocks.begin(), to_binary(1));
      b.labels.push_back(encode_blocks(blocks));
    }
    b.metadata = to_json(plan);
  } else {
    auto plan = exec::plan_path_message(g, max_degree_root(g), to_binary(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) {
      auto blocks = exec::path_message_blocks(plan, v);
      blocks.insert(blocks.begin(), to_binary(0));
      b.labels.push_back(encode_blocks(blocks));
    }
    b.metadata = exec::to_json(plan.ack);
    b.metadata["marked"] = plan.marked;
    b.metadata["chunk_size"] = plan.chunk_size;
  }
  b.metadata["mode"] = general.compact ? "compact" : "path";
  b.metadata["stages"] = general.stages;
  return b;
}

std::unique_ptr<NodeProgram> general_sd_program(std::span<const Bits> blocks) {
  if (blocks.empty()) throw Error(ErrorCode::ProtocolViolation, "empty label");
  auto rest = blocks.subspan(1);
  if (flag(blocks[0])) return auxiliary_sd_program(rest);
  return exec::path_message_program(rest, [](const Bits& m) {
    if (m.empty() || !m[0] || m.size() > 64) throw Error(ErrorCode::ProtocolViolation, "malformed size message");
    return std::to_string(from_binary(m));
  });
}

std::unique_ptr<NodeProgram> general_sd_program(const LabelBits& label) {
  auto blocks = decode_blocks(label);
  return general_sd_program(blocks);
}

}  // namespace radiolab::sd
