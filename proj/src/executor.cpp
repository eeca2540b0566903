#include "radiolab/executor.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "radiolab/error.hpp"

namespace radiolab::exec {

Bits ExecBits::to_bits() const {
  Bits b;
  b.push_back(join);
  b.push_back(stay);
  b.push_back(go);
  return b;
}

ExecBits ExecBits::from_bits(const Bits& bits) {
  if (bits.size() < 3) throw Error(ErrorCode::ProtocolViolation, "exec label needs 3 bits");
  return {bits[0], bits[1], bits[2]};
}

Round BroadcastTree::max_level() const {
  Round best = 0;
  for (Round l : level) best = std::max(best, l);
  return best;
}

std::vector<std::vector<Vertex>> BroadcastTree::children() const {
  std::vector<std::vector<Vertex>> out(parent.size());
  for (Vertex v = 0; v < parent.size(); ++v)
    if (parent[v]) out[*parent[v]].push_back(v);
  return out;
}

Vertex BroadcastTree::deepest() const {
  Round best = max_level();
  for (Vertex v = 0; v < level.size(); ++v)
    if (level[v] == best) return v;
  return 0;
}

std::vector<Vertex> BroadcastTree::path_to(Vertex v) const {
  std::vector<Vertex> path{v};
  while (parent.at(path.back())) path.push_back(*parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Vertex> minimal_dominating_subset(std::span<const Vertex> candidates, std::span<const Vertex> targets,
                                              const Graph& g) {
  std::vector<char> is_target(g.size(), 0);
  for (Vertex t : targets) is_target.at(t) = 1;
  std::set<Vertex> chosen(candidates.begin(), candidates.end());
  std::vector<std::size_t> cover(g.size(), 0);
  for (Vertex c : chosen)
    for (Vertex w : g.neighbors(c))
      if (is_target[w]) ++cover[w];
  for (Vertex t : targets) {
    if (cover[t] == 0) throw Error(ErrorCode::Undominatable, "node " + std::to_string(t) + " has no candidate neighbor");
  }
  for (auto it = chosen.rbegin(); it != chosen.rend();) {
    Vertex c = *it;
    auto nbrs = g.neighbors(c);
    bool needed = std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex w) { return is_target[w] && cover[w] == 1; });
    if (needed) {
      ++it;
      continue;
    }
    for (Vertex w : nbrs)
      if (is_target[w]) --cover[w];
    it = std::make_reverse_iterator(chosen.erase(std::next(it).base()));
  }
  return {chosen.begin(), chosen.end()};
}

namespace {

constexpr Round kUnset = -1;

std::vector<Vertex> frontier_of(const Graph& g, const std::vector<char>& informed) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (informed[v]) continue;
    auto nbrs = g.neighbors(v);
    if (std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex w) { return informed[w]; })) out.push_back(v);
  }
  return out;
}

// Uninformed nodes with exactly one neighbor in `senders`, paired with it.
std::vector<std::pair<Vertex, Vertex>> unique_receivers(const Graph& g, const std::vector<char>& informed,
                                                        const std::vector<Vertex>& senders) {
  std::vector<std::size_t> count(g.size(), 0);
  std::vector<Vertex> from(g.size(), 0);
  for (Vertex s : senders) {
    for (Vertex w : g.neighbors(s)) {
      ++count[w];
      from[w] = s;
    }
  }
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!informed[v] && count[v] == 1) out.push_back({v, from[v]});
  return out;
}

// Every sender has at least one node that hears only it.
bool each_sender_heard(const Graph& g, const std::vector<char>& informed, const std::vector<Vertex>& senders) {
  std::set<Vertex> heard;
  for (const auto& [u, s] : unique_receivers(g, informed, senders)) heard.insert(s);
  return heard.size() == senders.size();
}

}  // namespace

BroadcastPlan plan_broadcast(const Graph& g, std::span<const Vertex> sources, const PlanOptions& options) {
  if (sources.empty()) throw Error(ErrorCode::EmptySourceSet, "broadcast needs a source");
  const std::size_t n = g.size();
  BroadcastPlan plan;
  plan.bits.assign(n, {});
  auto& tree = plan.tree;
  tree.sources.assign(sources.begin(), sources.end());
  std::sort(tree.sources.begin(), tree.sources.end());
  tree.sources.erase(std::unique(tree.sources.begin(), tree.sources.end()), tree.sources.end());
  tree.parent.assign(n, std::nullopt);
  tree.level.assign(n, kUnset);
  tree.parent_level.assign(n, kUnset);

  std::vector<char> informed(n, 0);
  for (Vertex s : tree.sources) {
    informed.at(s) = 1;
    tree.level[s] = 0;
  }
  std::vector<Vertex> frontier = frontier_of(g, informed);
  std::vector<Vertex> dom = minimal_dominating_subset(tree.sources, frontier, g);
  for (Vertex s : dom) plan.bits[s].join = true;

  for (std::size_t k = 0; !frontier.empty(); ++k) {
    if (dom.empty()) throw Error(ErrorCode::Disconnected, "broadcast cannot reach every node");
    DomStage stage;
    stage.dom = dom;
    stage.frontier = frontier;
    const Round base = 3 * static_cast<Round>(k);

    std::vector<Vertex> newly;
    for (const auto& [u, from] : unique_receivers(g, informed, dom)) {
      stage.informed_first.push_back(u);
      tree.parent[u] = from;
      tree.level[u] = base + 1;
      newly.push_back(u);
    }
    for (Vertex u : stage.informed_first) informed[u] = 1;

    for (Vertex v : dom) {
      auto nbrs = g.neighbors(v);
      auto f = std::find_if(nbrs.begin(), nbrs.end(), [&](Vertex w) { return tree.parent[w] == v && tree.level[w] == base + 1; });
      if (f == nbrs.end()) throw Error(ErrorCode::ProtocolViolation, "DOM member without a unique receiver");
      stage.feedback.push_back({v, *f});
    }

    if (options.speedup_go) {
      for (Vertex v : dom) {
        auto trial = stage.go_senders;
        trial.push_back(v);
        if (each_sender_heard(g, informed, trial)) stage.go_senders = std::move(trial);
      }
      for (const auto& [u, from] : unique_receivers(g, informed, stage.go_senders)) {
        stage.informed_third.push_back(u);
        tree.parent[u] = from;
        tree.level[u] = base + 3;
        newly.push_back(u);
      }
      for (Vertex u : stage.informed_third) informed[u] = 1;
    }
    std::sort(newly.begin(), newly.end());

    frontier = frontier_of(g, informed);
    std::vector<Vertex> candidates = dom;
    candidates.insert(candidates.end(), newly.begin(), newly.end());
    std::vector<Vertex> next = minimal_dominating_subset(candidates, frontier, g);
    auto in_next = [&](Vertex v) { return std::binary_search(next.begin(), next.end(), v); };
    for (const auto& [v, f] : stage.feedback) {
      plan.bits[f].stay = in_next(v);
      plan.bits[f].go = std::binary_search(stage.go_senders.begin(), stage.go_senders.end(), v);
    }
    for (Vertex u : newly) plan.bits[u].join = in_next(u);

    plan.schedule.stages.push_back(std::move(stage));
    dom = std::move(next);
  }
  tree.stages = plan.schedule.stages.size();
  for (Vertex v = 0; v < n; ++v) {
    if (tree.parent[v]) tree.parent_level[v] = tree.level[*tree.parent[v]];
  }
  return plan;
}

std::vector<std::string> check_tree(const Graph& g, const BroadcastTree& tree) {
  std::vector<std::string> bad;
  auto say = [&](std::string s) { bad.push_back(std::move(s)); };
  const std::size_t n = g.size();
  auto children = tree.children();
  std::vector<char> is_source(n, 0);
  for (Vertex s : tree.sources) is_source[s] = 1;
  for (Vertex v = 0; v < n; ++v) {
    std::string who = "node " + std::to_string(v);
    if (is_source[v]) {
      if (tree.level[v] != 0 || tree.parent[v]) say(who + ": source with a level or parent");
      continue;
    }
    if (!tree.parent[v] || tree.level[v] < 1) {
      say(who + ": never informed");
      continue;
    }
    Vertex p = *tree.parent[v];
    Round i = tree.level[v], j = tree.level[p];
    if (!g.adjacent(v, p)) say(who + ": parent is not a neighbor");
    if (i <= j) say(who + ": level not above parent level");
    if (i % 3 == 2) say(who + ": informed in a feedback round");
    if (tree.parent_level[v] != j) say(who + ": parent level mismatch");
    for (Round k = j + 1; k <= i; ++k) {
      if (k % 3 != 1) continue;
      bool found = std::any_of(children[p].begin(), children[p].end(), [&](Vertex c) { return tree.level[c] == k; });
      if (!found) say(who + ": parent lacks a child at level " + std::to_string(k));
    }
  }
  if (tree.stages > n) say("more stages than nodes");
  if (tree.stages > 0 && tree.max_level() <= tree.rounds() - 3) say("maximum level not in the last stage");
  return bad;
}

std::vector<std::string> check_schedule(const Graph& g, const BroadcastPlan& plan) {
  std::vector<std::string> bad;
  auto say = [&](std::string s) { bad.push_back(std::move(s)); };
  const auto& tree = plan.tree;
  const auto& stages = plan.schedule.stages;
  const std::size_t n = g.size();

  std::vector<std::vector<std::size_t>> member_of(n);
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& st = stages[k];
    std::string at = "stage " + std::to_string(k) + ": ";
    if (st.dom.empty()) say(at + "empty DOM");
    std::vector<std::size_t> cover(n, 0);
    std::vector<Vertex> only(n, 0);
    for (Vertex d : st.dom) {
      member_of[d].push_back(k);
      if (tree.level[d] < 0 || tree.level[d] >= 3 * static_cast<Round>(k) + 1) say(at + "uninformed DOM member");
      for (Vertex w : g.neighbors(d)) {
        ++cover[w];
        only[w] = d;
      }
    }
    for (Vertex u : st.frontier)
      if (cover[u] == 0) say(at + "frontier node " + std::to_string(u) + " not dominated");
    for (Vertex d : st.dom) {
      bool unique = std::any_of(st.frontier.begin(), st.frontier.end(), [&](Vertex u) { return cover[u] == 1 && only[u] == d; });
      if (!unique) say(at + "DOM member " + std::to_string(d) + " covers no frontier node alone");
    }
    if (k + 1 < stages.size()) {
      std::set<Vertex> expect;
      for (const auto& [v, f] : st.feedback)
        if (plan.bits[f].stay) expect.insert(v);
      for (Vertex u : st.informed_first)
        if (plan.bits[u].join) expect.insert(u);
      for (Vertex u : st.informed_third)
        if (plan.bits[u].join) expect.insert(u);
      if (expect != std::set<Vertex>(stages[k + 1].dom.begin(), stages[k + 1].dom.end()))
        say(at + "next DOM does not follow from stay/join bits");
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    const auto& m = member_of[v];
    if (m.empty()) continue;
    for (std::size_t i = 1; i < m.size(); ++i)
      if (m[i] != m[i - 1] + 1) say("node " + std::to_string(v) + ": DOM membership not contiguous");
    Round first_stage_round = 3 * static_cast<Round>(m.front()) + 1;
    Round informed_stage_end = tree.level[v] == 0 ? 0 : 3 * ((tree.level[v] + 2) / 3);
    if (first_stage_round != informed_stage_end + 1) say("node " + std::to_string(v) + ": joins DOM late");
  }
  return bad;
}

nlohmann::json to_json(const BroadcastTree& tree) {
  nlohmann::json parents = nlohmann::json::array();
  for (const auto& p : tree.parent) parents.push_back(p ? nlohmann::json(*p) : nlohmann::json(nullptr));
  return {{"sources", tree.sources}, {"parent", parents}, {"level", tree.level}, {"stages", tree.stages}};
}

nlohmann::json to_json(const DomSchedule& schedule) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& st : schedule.stages) {
    nlohmann::json fb = nlohmann::json::array();
    for (const auto& [v, f] : st.feedback) fb.push_back({v, f});
    out.push_back({{"dom", st.dom}, {"frontier", st.frontier}, {"feedback", fb}, {"go", st.go_senders}});
  }
  return out;
}

}  // namespace radiolab::exec
