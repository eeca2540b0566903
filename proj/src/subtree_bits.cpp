#include "radiolab/subtree_bits.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "radiolab/error.hpp"

namespace radiolab::sd {

Bits SubtreeAssignment::concatenation() const {
  Bits out;
  std::function<void(Vertex)> walk = [&](Vertex v) {
    for (Vertex c : children[v]) walk(c);
    out.append(bits[v]);
  };
  if (!in_subtree.empty() && in_subtree[root]) walk(root);
  return out;
}

SubtreeAssignment assign_subtree_bits(const ParentArray& parent, Vertex root, const Bits& message) {
  const std::size_t n = parent.size();
  if (root >= n || parent[root]) throw Error(ErrorCode::InvalidParams, "bad tree root");
  std::vector<std::vector<Vertex>> kids(n);
  for (Vertex v = 0; v < n; ++v)
    if (parent[v]) kids.at(*parent[v]).push_back(v);

  // Subtree sizes bottom-up over a BFS order.
  std::vector<Vertex> order{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex c : kids[order[i]]) order.push_back(c);
  if (order.size() != n) throw Error(ErrorCode::InvalidParams, "parent array is not a tree");
  std::vector<std::size_t> size(n, 1);
  for (std::size_t i = order.size(); i-- > 1;) size[*parent[order[i]]] += size[order[i]];

  std::size_t max_degree = 0;
  for (Vertex v = 0; v < n; ++v) max_degree = std::max(max_degree, kids[v].size() + (parent[v] ? 1 : 0));

  SubtreeAssignment a;
  a.root = root;
  a.in_subtree.assign(n, false);
  a.bits.assign(n, {});
  a.child_number.assign(n, 0);
  a.children.assign(n, {});
  a.child_cap = max_degree == 0 ? 1 : floor_log2(max_degree) + 1;

  if (message.size() > bit_width_of(n) + 1) {
    throw Error(ErrorCode::MessageTooLong, std::to_string(message.size()) + " bits for a tree of " + std::to_string(n));
  }

  // Stores message[lo, hi) in the subtree of v; bits[v] gets at most 2.
  std::function<void(Vertex, std::size_t, std::size_t)> place = [&](Vertex v, std::size_t lo, std::size_t hi) {
    a.in_subtree[v] = true;
    auto by_size = kids[v];
    std::sort(by_size.begin(), by_size.end(), [&](Vertex x, Vertex y) {
      return size[x] != size[y] ? size[x] > size[y] : x < y;
    });
    if (by_size.size() > a.child_cap) by_size.resize(a.child_cap);

    std::size_t remaining = hi - lo;
    std::vector<std::size_t> block(by_size.size(), 0);
    for (std::size_t i = 0; i < by_size.size(); ++i) {
      block[i] = std::min(bit_width_of(size[by_size[i]]) + 1, remaining);
      remaining -= block[i];
    }
    std::size_t extra = std::min(remaining, by_size.size());
    remaining -= extra;
    if (remaining > 2) throw Error(ErrorCode::MessageTooLong, "more than two bits left at a subtree root");

    std::size_t pos = lo;
    for (std::size_t i = 0; i < by_size.size() && block[i] > 0; ++i) {
      Vertex c = by_size[i];
      place(c, pos, pos + block[i]);
      pos += block[i];
      if (i < extra) {
        a.bits[c].push_back(message[pos]);
        ++pos;
      }
      a.children[v].push_back(c);
      a.child_number[c] = static_cast<std::uint32_t>(a.children[v].size());
    }
    a.bits[v] = message.slice(pos, hi - pos);
  };
  if (!message.empty()) {
    place(root, 0, message.size());
  } else {
    a.in_subtree[root] = true;
  }
  return a;
}

SubtreeAssignment assign_subtree_bits(const Graph& tree, Vertex root, const Bits& message) {
  if (tree.edge_count() + 1 != tree.size()) throw Error(ErrorCode::InvalidParams, "not a tree");
  auto layers = bfs_layers(tree, root);
  ParentArray parent(tree.size());
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (v == root) continue;
    for (Vertex w : tree.neighbors(v)) {
      if (layers.layer[w] + 1 == layers.layer[v]) parent[v] = w;
    }
  }
  return assign_subtree_bits(parent, root, message);
}

std::vector<std::string> check_subtree_assignment(const ParentArray& parent, const SubtreeAssignment& a,
                                                  const Bits& message) {
  std::vector<std::string> bad;
  const std::size_t n = parent.size();
  std::size_t max_degree = 0;
  std::vector<std::size_t> kids(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (parent[v]) ++kids[*parent[v]];
  for (Vertex v = 0; v < n; ++v) max_degree = std::max(max_degree, kids[v] + (parent[v] ? 1 : 0));
  std::size_t cap = max_degree == 0 ? 1 : floor_log2(max_degree) + 1;

  for (Vertex v = 0; v < n; ++v) {
    std::string who = "node " + std::to_string(v);
    if (!a.in_subtree[v]) {
      if (!a.bits[v].empty()) bad.push_back(who + ": bits outside the subtree");
      continue;
    }
    if (v == a.root ? a.bits[v].size() > 2 : a.bits[v].size() > 3) bad.push_back(who + ": too many bits");
    if (a.children[v].size() > cap) bad.push_back(who + ": too many subtree children");
    if (v != a.root && (!parent[v] || !a.in_subtree[*parent[v]])) bad.push_back(who + ": subtree not connected");
    for (std::size_t i = 0; i < a.children[v].size(); ++i) {
      Vertex c = a.children[v][i];
      if (parent[c] != v) bad.push_back(who + ": subtree child is not a tree child");
      if (a.child_number[c] != i + 1) bad.push_back(who + ": child numbers out of order");
    }
  }
  if (a.concatenation() != message) bad.push_back("post-order concatenation differs from the message");
  return bad;
}

}  // namespace radiolab::sd
