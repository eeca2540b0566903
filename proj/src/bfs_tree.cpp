#include "radiolab/bfs_tree.hpp"

#include <algorithm>
#include <set>

#include "radiolab/error.hpp"

namespace radiolab::topo {

namespace {

std::vector<Vertex> down_neighbors(const Graph& g, const LayerAssignment& layers, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(v))
    if (layers.layer[w] == layers.layer[v] + 1) out.push_back(w);
  return out;
}

}  // namespace

BfsTree assign_broadcast_indices(const Graph& g, Vertex r) {
  BfsTree t;
  const std::size_t n = g.size();
  t.root = r;
  t.delta = g.max_degree();
  t.layers = bfs_layers(g, r);
  t.b.assign(n, 0);
  t.g.assign(n, 0);
  t.parent.assign(n, std::nullopt);
  t.children.assign(n, {});
  t.leaf.assign(n, false);
  t.ack_path.assign(n, false);

  auto by_layer = t.layers.layers();
  t.x_sets.resize(by_layer.size());
  for (std::size_t i = 0; i < by_layer.size(); ++i) {
    const auto& layer = by_layer[i];
    std::vector<bool> assigned(n, false);
    std::set<Vertex> covered;
    std::size_t left = layer.size();
    for (std::size_t j = 0; left > 0; ++j) {
      if (j > t.delta) throw Error(ErrorCode::ProtocolViolation, "layer not covered by X_0..X_delta");
      std::vector<Vertex> xj;
      std::set<Vertex> claimed;
      for (Vertex v : layer) {
        if (assigned[v]) continue;
        std::vector<Vertex> z;
        for (Vertex w : down_neighbors(g, t.layers, v))
          if (!covered.count(w)) z.push_back(w);
        bool free = std::none_of(z.begin(), z.end(), [&](Vertex w) { return claimed.count(w) > 0; });
        if (!free) continue;
        xj.push_back(v);
        assigned[v] = true;
        t.b[v] = j;
        --left;
        for (Vertex w : z) {
          claimed.insert(w);
          t.parent[w] = v;
        }
      }
      covered.insert(claimed.begin(), claimed.end());
      t.x_sets[i].push_back(std::move(xj));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (t.parent[v]) t.children[*t.parent[v]].push_back(v);
    t.leaf[v] = down_neighbors(g, t.layers, v).empty();
  }
  return t;
}

void assign_gather_indices(const Graph& g, BfsTree& t) {
  auto by_layer = t.layers.layers();
  t.g.assign(g.size(), 0);
  for (std::size_t i = 1; i < by_layer.size(); ++i) {
    auto parents = by_layer[i - 1];
    std::stable_sort(parents.begin(), parents.end(), [&](Vertex x, Vertex y) {
      return t.b[x] != t.b[y] ? t.b[x] < t.b[y] : x < y;
    });
    std::vector<bool> done(g.size(), false);
    for (Vertex p : parents) {
      auto below = down_neighbors(g, t.layers, p);
      for (Vertex c : t.children[p]) {
        std::set<std::size_t> used;
        for (Vertex w : below)
          if (done[w]) used.insert(t.g[w]);
        std::size_t val = 0;
        while (used.count(val)) ++val;
        t.g[c] = val;
        done[c] = true;
      }
    }
  }
}

BfsTree build_bfs_tree(const Graph& g, Vertex r) {
  auto t = assign_broadcast_indices(g, r);
  assign_gather_indices(g, t);
  Vertex deepest = r;
  for (Vertex v = 0; v < g.size(); ++v)
    if (t.layers.layer[v] > t.layers.layer[deepest]) deepest = v;
  for (std::optional<Vertex> v = deepest; v; v = t.parent[*v]) t.ack_path[*v] = true;
  return t;
}

std::vector<std::string> check_bfs_tree(const Graph& g, const BfsTree& t) {
  std::vector<std::string> bad;
  const std::size_t n = g.size();
  auto who = [](Vertex v) { return "node " + std::to_string(v); };
  for (std::size_t i = 0; i < t.x_sets.size(); ++i) {
    if (t.x_sets[i].size() > t.delta + 1) bad.push_back("layer " + std::to_string(i) + " needs more than delta+1 sets");
    std::set<Vertex> covered;
    std::size_t members = 0;
    for (const auto& xj : t.x_sets[i]) {
      std::set<Vertex> seen;
      members += xj.size();
      for (Vertex v : xj) {
        for (Vertex w : down_neighbors(g, t.layers, v)) {
          if (covered.count(w)) continue;
          if (!seen.insert(w).second) bad.push_back(who(w) + ": shared by two members of one X set");
        }
      }
      covered.insert(seen.begin(), seen.end());
    }
    if (members != t.layers.layers()[i].size()) bad.push_back("layer " + std::to_string(i) + " not covered");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v == t.root) {
      if (t.parent[v] || t.g[v] != 0) bad.push_back("root has a parent or a gather index");
      continue;
    }
    if (!t.parent[v]) {
      bad.push_back(who(v) + ": no parent");
      continue;
    }
    Vertex p = *t.parent[v];
    if (!g.adjacent(p, v) || t.layers.layer[p] + 1 != t.layers.layer[v]) bad.push_back(who(v) + ": parent not one layer up");
    for (Vertex w : g.neighbors(v)) {
      if (t.layers.layer[w] + 1 == t.layers.layer[v] && t.b[w] < t.b[p]) bad.push_back(who(v) + ": parent b not minimal");
    }
    if (t.delta > 0 && t.g[v] >= t.delta) bad.push_back(who(v) + ": gather index out of range");
    for (Vertex u = 0; u < n; ++u) {
      if (u == v || u == t.root || t.layers.layer[u] != t.layers.layer[v] || t.g[u] != t.g[v]) continue;
      if (t.parent[u] == t.parent[v]) bad.push_back(who(v) + ": sibling with equal gather index");
      else if (g.adjacent(u, p)) bad.push_back(who(u) + ": adjacent to the parent of " + who(v) + " with equal gather index");
    }
  }
  return bad;
}

std::vector<NodeId> node_ids(const BfsTree& t) {
  std::vector<NodeId> ids(t.parent.size());
  for (const auto& layer : t.layers.layers()) {
    for (Vertex v : layer) {
      if (!t.parent[v]) continue;
      ids[v] = ids[*t.parent[v]];
      ids[v].push_back(t.g[v]);
    }
  }
  return ids;
}

std::vector<std::size_t> distance_two_coloring(const Graph& g) {
  std::vector<std::size_t> color(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    std::set<std::size_t> used;
    for (Vertex w : g.neighbors(v)) {
      used.insert(color[w]);
      for (Vertex x : g.neighbors(w)) used.insert(color[x]);
    }
    std::size_t c = 1;
    while (used.count(c)) ++c;
    color[v] = c;
  }
  return color;
}

std::vector<Bits> bfs_label_blocks(const BfsTree& t, Vertex v) {
  Bits flags;
  flags.push_back(v == t.root);
  flags.push_back(t.leaf[v]);
  flags.push_back(t.ack_path[v]);
  return {flags, to_binary(t.b[v]), to_binary(t.g[v]), to_binary(t.delta)};
}

SchemeBundle build_bfs_labels(const Graph& g, Vertex r) {
  require_connected(g);
  auto t = build_bfs_tree(g, r);
  SchemeBundle out;
  out.scheme = "bfs";
  for (Vertex v = 0; v < g.size(); ++v) out.labels.push_back(encode_blocks(bfs_label_blocks(t, v)));
  out.metadata = to_json(t);
  return out;
}

std::size_t bfs_label_bound(std::size_t delta) { return kBfsLabelC * (bit_width_of(delta) + 1) + kBfsLabelC0; }

nlohmann::json to_json(const BfsTree& t) {
  std::vector<long long> parent;
  for (const auto& p : t.parent) parent.push_back(p ? static_cast<long long>(*p) : -1);
  std::vector<int> ack(t.ack_path.begin(), t.ack_path.end());
  return {{"root", t.root}, {"delta", t.delta}, {"depth", t.depth()}, {"b", t.b},
          {"g", t.g},       {"parent", parent}, {"ack_path", ack},    {"layer", t.layers.layer}};
}

}  // namespace radiolab::topo
