#include "radiolab/toprec.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bfs_session.hpp"
#include "radiolab/error.hpp"
#include "radiolab/program_util.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::topo {

namespace {

constexpr std::uint8_t kBroadcastTag = 0x50;
constexpr std::uint8_t kAckBase = 0x51;       // 0x51..0x53
constexpr std::uint8_t kGatherBase = 0x54;    // 0x54..0x58
constexpr std::uint8_t kStage1Base = 0x60;    // 0x60..0x62
constexpr std::uint8_t kStage2Tag = 0x63;
constexpr std::uint8_t kStage3Base = 0x64;    // 0x64..0x68
constexpr std::uint8_t kStage4Tag = 0x69;

void write_id(Writer& w, const NodeId& id) {
  w.varint(id.size());
  for (auto x : id) w.varint(x);
}

NodeId read_id(Reader& r) {
  NodeId id(r.varint());
  for (auto& x : id) x = r.varint();
  return id;
}

NodeId decode_id(std::string_view data) {
  Reader r(data);
  return read_id(r);
}

std::string encode_items(const std::set<std::string>& items) {
  Writer w;
  w.varint(items.size());
  for (const auto& item : items) w.bytes(item);
  return std::move(w).str();
}

std::set<std::string> decode_items(std::string_view data) {
  Reader r(data);
  std::set<std::string> out;
  for (auto count = r.varint(); count > 0; --count) out.insert(r.bytes());
  return out;
}

}  // namespace

std::string encode_id(const NodeId& id) {
  Writer w;
  write_id(w, id);
  return std::move(w).str();
}

std::string encode_report(const Report& rep) {
  Writer w;
  write_id(w, rep.id);
  w.varint(rep.neighbors.size());
  for (const auto& id : rep.neighbors) write_id(w, id);
  return std::move(w).str();
}

Report decode_report(std::string_view data) {
  Reader r(data);
  Report rep;
  rep.id = read_id(r);
  rep.neighbors.resize(r.varint());
  for (auto& id : rep.neighbors) id = read_id(r);
  return rep;
}

nlohmann::json id_json(const NodeId& id) { return nlohmann::json(id); }

Topology reconstruct_topology(std::span<const Report> reports) {
  Topology t;
  std::map<NodeId, std::set<NodeId>> listed;
  for (const auto& rep : reports) {
    if (listed.count(rep.id)) throw Error(ErrorCode::InconsistentReports, "duplicate report");
    listed[rep.id].insert(rep.neighbors.begin(), rep.neighbors.end());
  }
  for (const auto& [id, nbrs] : listed) t.ids.push_back(id);
  std::vector<Edge> edges;
  for (const auto& [id, nbrs] : listed) {
    auto u = static_cast<Vertex>(std::lower_bound(t.ids.begin(), t.ids.end(), id) - t.ids.begin());
    for (const auto& other : nbrs) {
      auto it = listed.find(other);
      if (it == listed.end()) throw Error(ErrorCode::InconsistentReports, "report names an unknown id");
      if (!it->second.count(id)) throw Error(ErrorCode::InconsistentReports, "one-sided adjacency");
      auto v = static_cast<Vertex>(std::lower_bound(t.ids.begin(), t.ids.end(), other) - t.ids.begin());
      if (u == v) throw Error(ErrorCode::InconsistentReports, "node lists itself");
      if (u < v) edges.push_back({u, v});
    }
  }
  t.graph = build_graph(t.ids.size(), edges);
  return t;
}

Round broadcast_bfs_rounds(std::size_t depth, std::size_t delta) {
  return static_cast<Round>(depth) * (static_cast<Round>(delta) + 1);
}

Round ack_bfs_rounds(std::size_t depth, std::size_t delta) {
  return static_cast<Round>(depth) * (2 * static_cast<Round>(delta) + 3);
}

Round gather_bfs_rounds(std::size_t depth, std::size_t delta) {
  return ack_bfs_rounds(depth, delta) + broadcast_bfs_rounds(depth, delta) +
         static_cast<Round>(depth) * static_cast<Round>(delta);
}

TopRecSchedule toprec_schedule(std::size_t depth, std::size_t delta, std::size_t stage2_length) {
  TopRecSchedule s;
  s.ack = ack_bfs_rounds(depth, delta);
  s.stage2_length = static_cast<Round>(stage2_length);
  s.stage2_start = s.ack + 1;
  s.stage3_start = s.stage2_start + s.stage2_length;
  s.stage4_start = s.stage3_start + gather_bfs_rounds(depth, delta);
  s.total = s.stage4_start + broadcast_bfs_rounds(depth, delta) - 1;
  return s;
}

Round toprec_bound(std::size_t diameter, std::size_t delta, std::size_t n) {
  auto d = static_cast<Round>(delta);
  return kTopRecC1 * static_cast<Round>(diameter) * d + kTopRecC2 * std::min<Round>(static_cast<Round>(n), d * d + 1) +
         kTopRecC3;
}

std::size_t toprec_label_bound(std::size_t delta) { return kTopRecLabelC * (bit_width_of(delta) + 1) + kTopRecLabelC0; }

namespace {

class BroadcastBfsProgram : public NodeProgram {
 public:
  BroadcastBfsProgram(const LabelBits& label, const std::string& payload)
      : run_(BfsBits::parse(split_label(label, 4)), kBroadcastTag, 1) {
    if (BfsBits::parse(split_label(label, 4)).root) {
      run_.start_as_root(payload);
      out_ = payload;
    }
  }

  Action act(const NodeContext& ctx) override { return to_action(run_.act(ctx.round)); }
  void observe(const NodeContext& ctx) override {
    run_.observe(ctx.round, ctx.history.back());
    if (run_.informed() && !out_) out_ = run_.payload();
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return run_.idle(); }

 private:
  LayeredBroadcast run_;
  std::optional<std::string> out_;
};

class AckBfsProgram : public NodeProgram {
 public:
  explicit AckBfsProgram(const LabelBits& label) : ack_(BfsBits::parse(split_label(label, 4)), kAckBase, 1) {
    if (BfsBits::parse(split_label(label, 4)).root) ack_.start_as_root("");
    check(0);
  }

  Action act(const NodeContext& ctx) override { return to_action(ack_.act(ctx.round)); }
  void observe(const NodeContext& ctx) override {
    ack_.observe(ctx.round, ctx.history.back());
    check(ctx.round);
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return out_.has_value(); }

 private:
  void check(Round round) {
    if (!out_ && ack_.knows_length() && round >= ack_.end()) out_ = std::to_string(ack_.length());
  }

  AckLayered ack_;
  std::optional<std::string> out_;
};

class GatherBfsProgram : public NodeProgram {
 public:
  explicit GatherBfsProgram(const LabelBits& label)
      : bits_(BfsBits::parse(split_label(label, 4))), gather_(bits_, 1, kGatherBase) {
    if (bits_.root) gather_.start_as_root();
    progress(0);
  }

  Action act(const NodeContext& ctx) override { return to_action(gather_.act(ctx.round)); }
  void observe(const NodeContext& ctx) override {
    gather_.observe(ctx.round, ctx.history.back());
    progress(ctx.round);
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return out_.has_value(); }

 private:
  void progress(Round round) {
    bool has_id = bits_.root || gather_.ack().layer() > 0;
    if (!added_ && has_id) {
      added_ = true;
      gather_.add(encode_id(gather_.ack().id()));
    }
    if (out_ || !gather_.done(round)) return;
    if (bits_.root) {
      std::vector<NodeId> ids;
      for (const auto& item : gather_.items()) ids.push_back(decode_id(item));
      std::sort(ids.begin(), ids.end());
      out_ = nlohmann::json(ids).dump();
    } else {
      out_ = id_json(gather_.ack().id()).dump();
    }
  }

  BfsBits bits_;
  GatherSession gather_;
  bool added_ = false;
  std::optional<std::string> out_;
};

class TopRecProgram : public NodeProgram {
 public:
  explicit TopRecProgram(const LabelBits& label) : blocks_(split_label(label, 7)), bits_(BfsBits::parse(blocks_)),
                                                   stage1_(bits_, kStage1Base, 1) {
    unique_ids_ = blocks_[0].size() == 4 && blocks_[0][3];
    slot_ = unique_ids_ ? from_binary(blocks_[5]) : from_binary(blocks_[4]);
    if (bits_.root) {
      std::uint64_t len = unique_ids_ ? from_binary(blocks_[6]) : bits_.delta * bits_.delta + 1;
      stage1_.start_as_root(Writer().varint(len).str());
    }
    progress(0);
  }

  Action act(const NodeContext& ctx) override {
    Round r = ctx.round;
    if (auto m = stage1_.act(r)) return Action::transmit(std::move(*m));
    if (schedule_ && r == schedule_->stage2_start + static_cast<Round>(slot_) - 1) {
      return Action::transmit(Writer().u8(kStage2Tag).bytes(encode_id(stage1_.id())).str());
    }
    if (gather_) {
      if (auto m = gather_->act(r)) return Action::transmit(std::move(*m));
    }
    if (stage4_) return to_action(stage4_->act(r));
    return Action::listen();
  }

  void observe(const NodeContext& ctx) override {
    Round r = ctx.round;
    Observation obs = ctx.history.back();
    stage1_.observe(r, obs);
    if (schedule_ && has_tag(obs, kStage2Tag) && r >= schedule_->stage2_start && r < schedule_->stage3_start) {
      Reader rd(obs.message);
      rd.u8();
      neighbors_.insert(decode_id(rd.bytes()));
    }
    if (gather_) gather_->observe(r, obs);
    if (stage4_) stage4_->observe(r, obs);
    progress(r);
  }

  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return out_.has_value(); }

 private:
  void progress(Round round) {
    if (!schedule_ && stage1_.knows_length() && (bits_.root || !stage1_.extra().empty())) {
      Reader rd(stage1_.extra());
      auto len = rd.varint();
      schedule_ = toprec_schedule(static_cast<std::size_t>(stage1_.depth()), bits_.delta, len);
      if (slot_ < 1 || slot_ > len) throw Error(ErrorCode::ProtocolViolation, "stage-2 slot out of range");
      gather_.emplace(bits_, schedule_->stage3_start, kStage3Base);
      if (bits_.root) gather_->start_as_root();
      stage4_.emplace(bits_, kStage4Tag, schedule_->stage4_start);
    }
    if (!schedule_) return;
    if (!reported_ && round >= schedule_->stage3_start - 1) {
      reported_ = true;
      Report rep{stage1_.id(), {neighbors_.begin(), neighbors_.end()}};
      gather_->add(encode_report(rep));
    }
    if (bits_.root && !stage4_->informed() && gather_->done(round)) {
      stage4_->start_as_root(encode_items(gather_->items()));
    }
    if (!out_ && round >= schedule_->total) {
      if (!stage4_->informed()) throw Error(ErrorCode::ProtocolViolation, "final broadcast missed");
      std::vector<Report> reports;
      for (const auto& item : decode_items(stage4_->payload())) reports.push_back(decode_report(item));
      auto topo = reconstruct_topology(reports);
      nlohmann::json edges = nlohmann::json::array();
      for (const Edge& e : topo.graph.edges()) edges.push_back({topo.ids[e.u], topo.ids[e.v]});
      out_ = nlohmann::json{{"edges", edges}, {"self", stage1_.id()}}.dump();
    }
  }

  std::vector<Bits> blocks_;
  BfsBits bits_;
  AckLayered stage1_;
  bool unique_ids_ = false;
  std::uint64_t slot_ = 0;
  std::optional<TopRecSchedule> schedule_;
  std::set<NodeId> neighbors_;
  std::optional<GatherSession> gather_;
  std::optional<LayeredBroadcast> stage4_;
  bool reported_ = false;
  std::optional<std::string> out_;
};

}  // namespace

std::unique_ptr<NodeProgram> broadcast_bfs_program(const LabelBits& label, const std::string& payload) {
  return std::make_unique<BroadcastBfsProgram>(label, payload);
}

std::unique_ptr<NodeProgram> ack_br_bfs_program(const LabelBits& label) { return std::make_unique<AckBfsProgram>(label); }

std::unique_ptr<NodeProgram> gather_bfs_program(const LabelBits& label) {
  return std::make_unique<GatherBfsProgram>(label);
}

TopRecPlan plan_toprec(const Graph& g) {
  require_connected(g);
  TopRecPlan plan;
  plan.tree = build_bfs_tree(g, 0);
  plan.color = distance_two_coloring(g);
  const std::size_t delta = plan.tree.delta;
  plan.unique_ids = delta * delta + 1 > g.size();
  plan.stage2_length = plan.unique_ids ? g.size() : delta * delta + 1;
  plan.ids = node_ids(plan.tree);
  plan.schedule = toprec_schedule(plan.tree.depth(), delta, plan.stage2_length);
  return plan;
}

std::vector<Bits> toprec_blocks(const TopRecPlan& plan, Vertex v) {
  auto blocks = bfs_label_blocks(plan.tree, v);
  blocks[0].push_back(plan.unique_ids);
  bool root = v == plan.tree.root;
  blocks.push_back(plan.unique_ids ? to_binary(0) : to_binary(plan.color[v]));
  blocks.push_back(plan.unique_ids ? to_binary(v + 1) : to_binary(0));
  blocks.push_back(plan.unique_ids && root ? to_binary(plan.ids.size()) : to_binary(0));
  return blocks;
}

SchemeBundle build_toprec_labels(const Graph& g) {
  auto plan = plan_toprec(g);
  SchemeBundle b;
  b.scheme = "toprec";
  for (Vertex v = 0; v < g.size(); ++v) b.labels.push_back(encode_blocks(toprec_blocks(plan, v)));
  b.metadata = to_json(plan.tree);
  b.metadata["color"] = plan.color;
  b.metadata["unique_ids"] = plan.unique_ids;
  b.metadata["stage2_length"] = plan.stage2_length;
  b.metadata["ids"] = plan.ids;
  b.metadata["total_rounds"] = plan.schedule.total;
  return b;
}

std::unique_ptr<NodeProgram> toprec_program(const LabelBits& label) { return std::make_unique<TopRecProgram>(label); }

TopRecOutput parse_toprec_output(const std::string& text) {
  TopRecOutput out;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& e : j.at("edges")) out.edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    out.self = j.at("self").get<NodeId>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

}  // namespace radiolab::topo
