#include "radiolab/fast_sd.hpp"

#include <algorithm>
#include <set>

#include "radiolab/compact_sd.hpp"
#include "radiolab/error.hpp"
#include "radiolab/program_util.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::sd {

StripeDecomposition stripe_decomposition(const Graph& g, Vertex s) {
  StripeDecomposition sd;
  sd.root = s;
  sd.lg = bit_width_of(g.size());
  sd.layers = bfs_layers(g, s);
  if (sd.layers.depth < sd.lg) {
    throw Error(ErrorCode::TooShallow, "depth " + std::to_string(sd.layers.depth) + " below " + std::to_string(sd.lg));
  }
  const std::size_t n = g.size();
  sd.green.assign(n, false);
  sd.super_green.assign(n, false);
  sd.stripe.assign(n, -1);
  for (std::size_t j = 0; (j + 1) * sd.lg - 1 <= sd.layers.depth; j += 2) sd.stripes.push_back(j);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t layer = sd.layers.layer[v];
    std::size_t j = layer / sd.lg;
    sd.green[v] = j % 2 == 0;
    if (sd.green[v] && sd.last_layer(j) <= sd.layers.depth) {
      sd.stripe[v] = static_cast<int>(j);
      sd.super_green[v] = layer == sd.last_layer(j);
    }
  }
  return sd;
}

std::vector<Vertex> bfs_reach(const Graph& g, const LayerAssignment& layers, Vertex u, std::size_t to) {
  std::set<Vertex> seen{u};
  std::vector<Vertex> frontier{u};
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      if (layers.layer[x] >= to) continue;
      for (Vertex y : g.neighbors(x)) {
        if (layers.layer[y] == layers.layer[x] + 1 && seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<Vertex> layer_nodes(const StripeDecomposition& sd, std::size_t layer) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < sd.layers.layer.size(); ++v)
    if (sd.layers.layer[v] == layer) out.push_back(v);
  return out;
}

std::set<Vertex> reached_targets(const Graph& g, const StripeDecomposition& sd, std::size_t j, Vertex u) {
  std::set<Vertex> out;
  for (Vertex x : bfs_reach(g, sd.layers, u, sd.last_layer(j)))
    if (sd.layers.layer[x] == sd.last_layer(j)) out.insert(x);
  return out;
}

}  // namespace

std::vector<Vertex> minimal_bfs_cover(const Graph& g, const StripeDecomposition& sd, std::size_t j) {
  auto candidates = layer_nodes(sd, sd.first_layer(j));
  auto targets = layer_nodes(sd, sd.last_layer(j));
  std::vector<std::set<Vertex>> reach;
  for (Vertex u : candidates) reach.push_back(reached_targets(g, sd, j, u));

  std::vector<bool> kept(candidates.size(), true);
  auto covers = [&]() {
    std::set<Vertex> all;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (kept[i]) all.insert(reach[i].begin(), reach[i].end());
    return all.size() == targets.size();
  };
  if (!covers()) throw Error(ErrorCode::ProtocolViolation, "stripe layer does not reach its last layer");
  for (std::size_t i = candidates.size(); i-- > 0;) {
    kept[i] = false;
    if (!covers()) kept[i] = true;
  }
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (kept[i]) out.push_back(candidates[i]);
  return out;
}

std::vector<std::vector<Vertex>> conflict_free_paths(const Graph& g, const StripeDecomposition& sd, std::size_t j,
                                                     std::span<const Vertex> cover) {
  std::vector<std::set<Vertex>> reach;
  for (Vertex u : cover) {
    auto r = bfs_reach(g, sd.layers, u, sd.last_layer(j));
    reach.emplace_back(r.begin(), r.end());
  }
  std::vector<std::vector<Vertex>> paths;
  for (std::size_t l = 0; l < cover.size(); ++l) {
    std::optional<Vertex> witness;
    for (Vertex y : reach[l]) {
      if (sd.layers.layer[y] != sd.last_layer(j)) continue;
      bool own = true;
      for (std::size_t m = 0; m < cover.size() && own; ++m)
        if (m != l && reach[m].count(y)) own = false;
      if (own) {
        witness = y;
        break;
      }
    }
    if (!witness) throw Error(ErrorCode::WitnessNotFound, "cover node " + std::to_string(cover[l]) + " has no witness");
    std::vector<Vertex> path{*witness};
    while (path.back() != cover[l]) {
      Vertex x = path.back();
      std::optional<Vertex> up;
      for (Vertex y : g.neighbors(x)) {
        if (sd.layers.layer[y] + 1 == sd.layers.layer[x] && reach[l].count(y)) {
          up = y;
          break;
        }
      }
      path.push_back(*up);
    }
    std::reverse(path.begin(), path.end());
    paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<Edge> conflicting_edges(const Graph& g, const LayerAssignment& layers,
                                    const std::vector<std::vector<Vertex>>& paths) {
  std::vector<int> owner(g.size(), -1);
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (Vertex v : paths[i]) owner[v] = static_cast<int>(i);
  std::vector<Edge> bad;
  for (const Edge& e : g.edges()) {
    if (owner[e.u] < 0 || owner[e.v] < 0 || owner[e.u] == owner[e.v]) continue;
    if (layers.layer[e.u] != layers.layer[e.v]) bad.push_back(e);
  }
  return bad;
}

Round fast_barrier(std::size_t n) { return static_cast<Round>(bit_width_of(n) + 3 * n + 1); }

FastPlan plan_fast(const Graph& g) {
  require_connected(g);
  FastPlan plan;
  const std::size_t n = g.size();
  if (bfs_layers(g, 0).depth < bit_width_of(n)) return plan;
  plan.fast = true;
  plan.sd = stripe_decomposition(g, 0);
  plan.reach.assign(n, false);
  plan.cover.assign(n, false);
  plan.on_path.assign(n, false);
  plan.message_bit.assign(n, false);
  plan.phase2.assign(n, {});
  plan.barrier = fast_barrier(n);
  Bits m = to_binary(n);

  std::vector<Vertex> super_green;
  for (Vertex v = 0; v < n; ++v)
    if (plan.sd.super_green[v]) super_green.push_back(v);

  for (std::size_t j : plan.sd.stripes) {
    StripePlan sp;
    sp.index = j;
    sp.cover = minimal_bfs_cover(g, plan.sd, j);
    sp.paths = conflict_free_paths(g, plan.sd, j, sp.cover);
    std::set<Vertex> reach;
    for (Vertex u : sp.cover) {
      auto r = bfs_reach(g, plan.sd.layers, u, plan.sd.last_layer(j));
      reach.insert(r.begin(), r.end());
    }
    sp.reach.assign(reach.begin(), reach.end());
    for (Vertex u : sp.cover) plan.cover[u] = true;
    for (Vertex v : sp.reach) plan.reach[v] = true;
    for (const auto& path : sp.paths) {
      for (std::size_t i = 0; i < path.size(); ++i) {
        plan.on_path[path[i]] = true;
        plan.message_bit[path[i]] = m[i];
      }
    }

    Graph sub = g.induced(sp.reach);
    std::vector<Vertex> local_sources;
    for (Vertex u : sp.cover)
      local_sources.push_back(static_cast<Vertex>(std::lower_bound(sp.reach.begin(), sp.reach.end(), u) - sp.reach.begin()));
    auto local = exec::plan_broadcast(sub, local_sources);
    sp.phase2_stages = local.tree.stages;
    for (std::size_t i = 0; i < sp.reach.size(); ++i) plan.phase2[sp.reach[i]] = local.bits[i];
    if (static_cast<Round>(plan.sd.lg) + local.tree.rounds() >= plan.barrier) {
      throw Error(ErrorCode::ProtocolViolation, "stripe broadcast would overrun the barrier");
    }
    plan.stripes.push_back(std::move(sp));
  }
  plan.stage2 = exec::plan_broadcast(g, super_green);
  return plan;
}

nlohmann::json to_json(const FastPlan& plan) {
  nlohmann::json j = {{"fast", plan.fast}};
  if (!plan.fast) return j;
  j["lg"] = plan.sd.lg;
  j["depth"] = plan.sd.layers.depth;
  j["barrier"] = plan.barrier;
  j["stripes"] = nlohmann::json::array();
  for (const auto& sp : plan.stripes) {
    j["stripes"].push_back(
        {{"index", sp.index}, {"cover", sp.cover}, {"paths", sp.paths}, {"reach", sp.reach}, {"phase2_stages", sp.phase2_stages}});
  }
  j["stage2"] = exec::to_json(plan.stage2.tree);
  j["stage2_rounds"] = plan.stage2.tree.rounds();
  return j;
}

SchemeBundle build_fast_sd(const Graph& g) {
  auto plan = plan_fast(g);
  SchemeBundle b;
  b.scheme = "fastsd";
  if (!plan.fast) {
    auto general = build_general_sd(g);
    for (const auto& label : general.labels) {
      auto blocks = decode_blocks(label);
      blocks.insert(blocks.begin(), to_binary(0));
      b.labels.push_back(encode_blocks(blocks));
    }
    b.metadata = {{"fast", false}, {"general", general.metadata}};
    return b;
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    Bits flags;
    flags.push_back(plan.reach[v]);
    flags.push_back(plan.sd.super_green[v]);
    flags.push_back(plan.cover[v]);
    flags.push_back(plan.on_path[v]);
    b.labels.push_back(encode_blocks({to_binary(1), flags, to_binary(plan.message_bit[v]), plan.phase2[v].to_bits(),
                                      plan.stage2.bits[v].to_bits()}));
  }
  b.metadata = to_json(plan);
  return b;
}

namespace {

class FastProgram : public NodeProgram {
 public:
  explicit FastProgram(std::span<const Bits> blocks)
      : stripe_(parse(blocks, 0), kStripeTag), global_(parse(blocks, 1), kGlobalTag) {}

  Action act(const NodeContext& ctx) override {
    Round r = ctx.round;
    if (on_path_ && super_green_ && r == 1) {
      relayed_ = true;
      return Action::transmit(Writer().u8(kRelayTag).bits(own_bits()).str());
    }
    if (relay_at_ && *relay_at_ == r) {
      relay_at_.reset();
      return Action::transmit(Writer().u8(kRelayTag).bits(relay_bits_).str());
    }
    if (reach_) {
      if (auto m = stripe_.act(r)) return Action::transmit(std::move(*m));
    }
    return to_action(global_.act(r));
  }

  void observe(const NodeContext& ctx) override {
    Round r = ctx.round;
    Observation obs = ctx.history.back();
    if (on_path_ && !relayed_ && has_tag(obs, kRelayTag)) {
      relayed_ = true;
      Reader rd(obs.message);
      rd.u8();
      relay_bits_ = own_bits();
      relay_bits_.append(rd.bits());
      if (cover_) {
        if (relay_bits_.size() > 64 || !relay_bits_[0]) throw Error(ErrorCode::ProtocolViolation, "bad size bits");
        auto n = from_binary(relay_bits_);
        learn(n);
        if (static_cast<std::size_t>(r) + 1 != bit_width_of(n)) {
          throw Error(ErrorCode::ProtocolViolation, "relay finished in round " + std::to_string(r));
        }
        stripe_.start_as_source(r + 2, Writer().varint(n).str());
      } else {
        relay_at_ = r + 1;
      }
    }
    if (reach_) {
      stripe_.observe(r, obs);
      if (stripe_.informed() && !n_) learn(Reader(stripe_.payload()).varint());
    }
    global_.observe(r, obs);
    if (global_.informed() && !n_) learn(Reader(global_.payload()).varint());
  }

  std::optional<std::string> output() const override {
    if (!n_) return std::nullopt;
    return std::to_string(*n_);
  }

  bool idle() const override {
    bool pending_start = on_path_ && super_green_ && !relayed_;
    return !pending_start && !relay_at_ && (!reach_ || stripe_.idle()) && global_.idle() &&
           !(super_green_ && !n_);
  }

 private:
  exec::ExecBits parse(std::span<const Bits> blocks, int which) {
    if (blocks.size() != 5) throw Error(ErrorCode::ProtocolViolation, "fast label needs 5 blocks");
    const Bits& flags = blocks[1];
    if (flags.size() != 4) throw Error(ErrorCode::ProtocolViolation, "fast label needs 4 flags");
    reach_ = flags[0];
    super_green_ = flags[1];
    cover_ = flags[2];
    on_path_ = flags[3];
    bit_ = blocks[2];
    return exec::ExecBits::from_bits(blocks[3 + which]);
  }

  Bits own_bits() const { return bit_; }

  void learn(std::uint64_t n) {
    if (n_) return;
    n_ = n;
    if (super_green_) global_.start_as_source(fast_barrier(n), Writer().varint(n).str());
  }

  bool reach_ = false;
  bool super_green_ = false;
  bool cover_ = false;
  bool on_path_ = false;
  Bits bit_;
  exec::BroadcastSession stripe_;
  exec::BroadcastSession global_;
  bool relayed_ = false;
  Bits relay_bits_;
  std::optional<Round> relay_at_;
  std::optional<std::uint64_t> n_;
};

}  // namespace

std::unique_ptr<NodeProgram> fast_sd_program(const LabelBits& label) {
  auto blocks = decode_blocks(label);
  if (blocks.empty()) throw Error(ErrorCode::ProtocolViolation, "empty label");
  if (!flag(blocks[0])) return general_sd_program(std::span<const Bits>(blocks).subspan(1));
  return std::make_unique<FastProgram>(blocks);
}

}  // namespace radiolab::sd
