// Acceptance run over the pinned corpus: one PASS/FAIL line per criterion.
// Usage: radiolab_acceptance [scaling.csv]

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "radiolab/bfs_tree.hpp"
#include "radiolab/compact_sd.hpp"
#include "radiolab/corpus.hpp"
#include "radiolab/exec_schemes.hpp"
#include "radiolab/fast_sd.hpp"
#include "radiolab/lb_audit.hpp"
#include "radiolab/rng.hpp"
#include "radiolab/schemes.hpp"
#include "radiolab/subtree_bits.hpp"
#include "radiolab/toprec.hpp"
#include "trace_checks.hpp"

#ifndef RADIOLAB_DATA_DIR
#define RADIOLAB_DATA_DIR "data"
#endif

using namespace radiolab;

namespace {

// Time budget for criterion 1, seconds.
constexpr double kSizeBudget = 300.0;
// Round bound constants for topology recognition, see toprec.hpp.
constexpr Round kC1 = 15, kC2 = 1, kC3 = 1;
// Label bound for topology recognition on K_{1,2^k}: 16k + 56.
constexpr std::size_t kLabelSlope = 16, kLabelOffset = 56;

struct Corpus {
  std::vector<std::string> ids;
  std::vector<Graph> graphs;
};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

Round first_heard(const ExecutionTrace& t, Vertex v, std::uint8_t tag) {
  for (Round r = 1; r <= t.rounds(); ++r) {
    auto o = t.observation_at(r, v);
    if (o.heard() && !o.message.empty() && static_cast<std::uint8_t>(o.message[0]) == tag) return r;
  }
  return 0;
}

// 1 ------------------------------------------------------------------------
Outcome size_discovery(const Corpus& c) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  std::size_t runs = 0;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    const Graph& g = c.graphs[i];
    if (g.size() < 2 || g.size() > 300 || !is_connected(g)) out.fail(c.ids[i] + " outside the corpus contract");
    for (const char* scheme : {"compact", "general", "fastsd"}) {
      ++runs;
      try {
        auto r = run_scheme(scheme, g);
        for (Vertex v = 0; v < g.size(); ++v)
          if (r.trace.output(v) != std::optional<std::string>(std::to_string(g.size()))) {
            out.fail(c.ids[i] + " " + scheme + ": node " + std::to_string(v) + " wrong");
            break;
          }
      } catch (const std::exception& e) {
        out.fail(c.ids[i] + " " + scheme + ": " + e.what());
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.graphs.size() < 200) out.fail("corpus has only " + std::to_string(c.graphs.size()) + " graphs");
  if (secs >= kSizeBudget) out.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << c.graphs.size() << " graphs, " << runs << " runs, " << static_cast<int>(secs * 10) / 10.0 << " s";
  out.detail = d.str();
  return out;
}

// 2 ------------------------------------------------------------------------
Outcome round_formulas(const Corpus& c) {
  Outcome out;
  constexpr std::uint8_t kBroadcastTag = 0x50, kGatherMainTag = 0x58;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    const Graph& g = c.graphs[i];
    auto tree = topo::build_bfs_tree(g, 0);
    const Round D = static_cast<Round>(tree.depth()), Dl = static_cast<Round>(tree.delta);
    const Round phase = Dl + 1, length = D * (Dl + 1);

    auto b = run_scheme("broadcast-bfs", g);
    if (!b.passed()) out.fail(c.ids[i] + " broadcast: " + b.failure);
    Round last = 0;
    for (Vertex v = 1; v < g.size(); ++v) {
      Round f = first_heard(b.trace, v, kBroadcastTag);
      Round layer = tree.layers.layer[v];
      if (f <= (layer - 1) * phase || f > layer * phase) out.fail(c.ids[i] + ": node " + std::to_string(v) + " outside its phase");
      else if (b.trace.heard_from(f, v) != tree.parent[v]) out.fail(c.ids[i] + ": node " + std::to_string(v) + " first heard a non-parent");
      last = std::max(last, f);
    }
    if (last <= (D - 1) * phase || last > length) out.fail(c.ids[i] + ": broadcast did not end in its last phase");
    for (Round r = length + 1; r <= b.trace.rounds(); ++r)
      if (!b.trace.transmitters(r).empty()) out.fail(c.ids[i] + ": broadcast transmits after D*(Delta+1)");

    auto gr = run_scheme("gather-bfs", g);
    if (!gr.passed()) out.fail(c.ids[i] + " gather: " + gr.failure);
    const Round start = D * (2 * Dl + 3) + D * (Dl + 1) + 1, end = start + D * Dl - 1;
    if (gr.trace.output_round(0) != end) out.fail(c.ids[i] + ": gather root finished in " + std::to_string(gr.trace.output_round(0)));
    bool first_window = false, last_window = false;
    for (Round r = 1; r <= gr.trace.rounds(); ++r)
      for (const auto& tx : gr.trace.transmitters(r)) {
        if (tx.message.empty() || static_cast<std::uint8_t>(tx.message[0]) != kGatherMainTag) continue;
        if (r < start || r > end) out.fail(c.ids[i] + ": gather message outside the gathering part");
        first_window |= r < start + Dl;
        last_window |= r > end - Dl;
      }
    if (D > 0 && !(first_window && last_window)) out.fail(c.ids[i] + ": gathering part shorter than D*Delta");
  }
  out.detail = std::to_string(c.graphs.size()) + " graphs, broadcast and gather";
  return out;
}

// 3 ------------------------------------------------------------------------
Outcome topology_recognition(const Corpus& c) {
  Outcome out;
  std::size_t runs = 0;
  Round worst_slack = -1;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    const Graph& g = c.graphs[i];
    if (g.size() > 150) continue;
    ++runs;
    auto plan = topo::plan_toprec(g);
    auto r = run_scheme("toprec", g);
    if (!r.passed()) out.fail(c.ids[i] + ": " + r.failure);
    const Round D = static_cast<Round>(diameter(g)), Dl = static_cast<Round>(g.max_degree());
    const Round bound = kC1 * D * Dl + kC2 * std::min<Round>(static_cast<Round>(g.size()), Dl * Dl + 1) + kC3;
    if (r.trace.rounds() > bound) out.fail(c.ids[i] + ": " + std::to_string(r.trace.rounds()) + " rounds > " + std::to_string(bound));
    for (Vertex v = 0; v < g.size(); ++v)
      if (r.trace.output_round(v) != plan.schedule.total) {
        out.fail(c.ids[i] + ": node " + std::to_string(v) + " finished off schedule");
        break;
      }
    worst_slack = worst_slack < 0 ? bound - r.trace.rounds() : std::min(worst_slack, bound - r.trace.rounds());
  }
  out.detail = std::to_string(runs) + " graphs with n <= 150, bound 15*D*Delta + min(n, Delta^2+1) + 1, least slack " +
               std::to_string(worst_slack);
  return out;
}

// 4 ------------------------------------------------------------------------
Outcome label_scaling() {
  Outcome out;
  std::vector<std::size_t> compact(13, 0), toprec(13, 0);
  std::ostringstream d;
  for (std::size_t k = 2; k <= 12; ++k) {
    Graph star = make_star((std::size_t{1} << k) + 1);
    compact[k] = sd::build_compact_labels(star).max_label_bits();
    toprec[k] = topo::build_toprec_labels(star).max_label_bits();
    if (k > 2 && compact[k] < compact[k - 1]) out.fail("compact bits drop at k=" + std::to_string(k));
    if (toprec[k] > kLabelSlope * k + kLabelOffset) out.fail("toprec bits " + std::to_string(toprec[k]) + " at k=" + std::to_string(k));
  }
  if (compact[12] > 3 * compact[3]) out.fail("compact bits(12) > 3 bits(3)");
  d << "compact k=2..12:";
  for (std::size_t k = 2; k <= 12; ++k) d << ' ' << compact[k];
  d << "; toprec:";
  for (std::size_t k = 2; k <= 12; ++k) d << ' ' << toprec[k];
  out.detail = d.str();
  return out;
}

// 5 ------------------------------------------------------------------------
std::string subtree_violation(const sd::ParentArray& parent, Vertex root, const sd::SubtreeAssignment& a, const Bits& m) {
  const std::size_t n = parent.size();
  std::vector<std::vector<Vertex>> kids(n);
  std::vector<std::size_t> deg(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (parent[v]) {
      kids[*parent[v]].push_back(v);
      ++deg[v];
      ++deg[*parent[v]];
    }
  std::size_t delta = *std::max_element(deg.begin(), deg.end());
  std::size_t cap = 1;
  while ((std::size_t{1} << cap) <= delta) ++cap;
  std::string walked, bad;
  std::function<void(Vertex)> post = [&](Vertex v) {
    std::map<std::uint32_t, Vertex> order;
    for (Vertex w : kids[v])
      if (a.in_subtree[w]) {
        if (a.child_number[w] == 0 || order.count(a.child_number[w])) bad = "bad child number";
        order[a.child_number[w]] = w;
      }
    if (order.size() > cap) bad = "too many children";
    for (auto [k, w] : order) post(w);
    if (a.bits[v].size() > (v == root ? 2u : 3u)) bad = "node " + std::to_string(v) + " holds too many bits";
    walked += a.bits[v].to_string();
  };
  post(root);
  if (walked != m.to_string()) bad = "post-order concatenation differs";
  return bad;
}

Outcome subtree_suite() {
  Outcome out;
  SplitMix64 rng(20261016);
  for (int trial = 0; trial < 1000; ++trial) {
    auto n = static_cast<std::size_t>(1 + rng.below(256));
    Graph tree = make_random_tree(n, rng.next());
    auto root = static_cast<Vertex>(rng.below(n));
    std::size_t width = 0;
    while ((std::size_t{1} << width) <= n) ++width;
    std::size_t len = width + 1 - rng.below(2);
    Bits m;
    for (std::size_t i = 0; i < len; ++i) m.push_back(rng.below(2) == 1);
    auto layers = bfs_layers(tree, root);
    sd::ParentArray parent(n);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : tree.neighbors(v))
        if (layers.layer[w] + 1 == layers.layer[v]) parent[v] = w;
    try {
      auto a = sd::assign_subtree_bits(parent, root, m);
      auto why = subtree_violation(parent, root, a, m);
      if (!why.empty()) out.fail("trial " + std::to_string(trial) + ": " + why);
    } catch (const std::exception& e) {
      out.fail("trial " + std::to_string(trial) + ": " + e.what());
    }
  }
  out.detail = "1000 random trees, n <= 256";
  return out;
}

// 6 ------------------------------------------------------------------------
Outcome executor_properties(const Corpus& c) {
  Outcome out;
  std::size_t max_stages = 0;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    const Graph& g = c.graphs[i];
    auto syn = exec::synthesize_executor(g, 0);
    auto t = run(g, syn.bundle.labels, [](const LabelBits& l) { return exec::executor_program(l); });
    std::vector<std::string> bad = exec::check_tree(g, syn.plan.tree);
    for (auto& s : exec::check_schedule(g, syn.plan)) bad.push_back(s);
    for (auto& s : checks::compare_run(t, syn.plan, exec::kExecutorTag, 1)) bad.push_back(s);
    auto ack = sd::plan_compact(g).ack.broadcast;
    for (auto& s : exec::check_tree(g, ack.tree)) bad.push_back("ack: " + s);
    for (auto& s : exec::check_schedule(g, ack)) bad.push_back("ack: " + s);
    if (syn.plan.tree.stages > g.size()) bad.push_back("more stages than nodes");
    for (Vertex v = 0; v < g.size(); ++v)
      if (t.output(v) != std::optional<std::string>("M")) bad.push_back("node " + std::to_string(v) + " not informed");
    if (!bad.empty()) out.fail(c.ids[i] + ": " + bad.front());
    max_stages = std::max(max_stages, syn.plan.tree.stages);
  }
  out.detail = std::to_string(c.graphs.size()) + " graphs, max stages " + std::to_string(max_stages);
  return out;
}

// 7 ------------------------------------------------------------------------
// Direct collision checks: the parent of v must hear v alone in v's gather
// slot, and v must hear its parent alone in the parent's broadcast slot.
std::string index_violation(const Graph& g, const topo::BfsTree& t) {
  const auto& L = t.layers.layer;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!t.parent[v]) continue;
    Vertex p = *t.parent[v];
    if (!g.adjacent(v, p) || L[p] + 1 != L[v]) return "parent of " + std::to_string(v) + " is not one layer up";
    if (t.g[v] >= t.delta) return "g of " + std::to_string(v) + " not below delta";
    for (Vertex w : g.neighbors(p))
      if (w != v && L[w] == L[v] && t.g[w] == t.g[v]) return "gather slot of " + std::to_string(v) + " collides at its parent";
    for (Vertex w : g.neighbors(v)) {
      if (w == p || L[w] + 1 != L[v]) continue;
      if (t.b[w] == t.b[p] && !t.leaf[w]) return "broadcast slot of parent of " + std::to_string(v) + " collides";
      if (t.b[w] < t.b[p] && !t.leaf[w]) return "parent of " + std::to_string(v) + " has no minimal b";
    }
  }
  return {};
}

Outcome index_suite(const Corpus& c) {
  Outcome out;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    auto t = topo::build_bfs_tree(c.graphs[i], 0);
    auto bad = topo::check_bfs_tree(c.graphs[i], t);
    auto why = index_violation(c.graphs[i], t);
    if (!why.empty()) bad.push_back(why);
    if (!bad.empty()) out.fail(c.ids[i] + ": " + bad.front());
  }
  out.detail = std::to_string(c.graphs.size()) + " graphs";
  return out;
}

// 8 ------------------------------------------------------------------------
Outcome fast_structure(const Corpus& c) {
  Outcome out;
  std::size_t fast = 0, stripes = 0, paths = 0;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    const Graph& g = c.graphs[i];
    auto plan = sd::plan_fast(g);
    if (!plan.fast) continue;
    ++fast;
    const auto& L = plan.sd.layers.layer;
    for (const auto& sp : plan.stripes) {
      ++stripes;
      paths += sp.paths.size();
      // exhaustive scan for edges between different layers of two paths
      std::map<Vertex, std::size_t> path_of;
      for (std::size_t k = 0; k < sp.paths.size(); ++k) {
        const auto& p = sp.paths[k];
        if (p.front() != sp.cover[k] || !plan.sd.super_green[p.back()]) out.fail(c.ids[i] + ": malformed path");
        for (std::size_t s = 0; s + 1 < p.size(); ++s)
          if (!g.adjacent(p[s], p[s + 1]) || L[p[s]] + 1 != L[p[s + 1]]) out.fail(c.ids[i] + ": path not layer-increasing");
        for (Vertex v : p) path_of[v] = k;
      }
      for (auto [u, ku] : path_of)
        for (Vertex w : g.neighbors(u)) {
          auto it = path_of.find(w);
          if (it != path_of.end() && it->second != ku && L[u] != L[w])
            out.fail(c.ids[i] + ": edge " + std::to_string(u) + "-" + std::to_string(w) + " joins two paths");
        }
    }
    auto r = run_scheme("fastsd", g);
    if (!r.passed()) out.fail(c.ids[i] + ": " + r.failure);
    for (auto& s : checks::stripe_isolation(r.trace, plan)) out.fail(c.ids[i] + ": " + s);
    for (auto& s : checks::relay_simultaneity(r.trace, plan)) out.fail(c.ids[i] + ": " + s);
  }
  if (fast == 0) out.fail("no corpus graph uses the fast mode");
  out.detail = std::to_string(fast) + " fast-mode graphs, " + std::to_string(stripes) + " stripes, " +
               std::to_string(paths) + " paths";
  return out;
}

// 9 ------------------------------------------------------------------------
Outcome lower_bound_audits() {
  Outcome out;
  std::ostringstream d;
  for (std::size_t n : {16, 36, 64, 100}) {
    auto [g, desc] = gen_lb_family(n);
    for (const char* scheme : {"toprec", "general"}) {
      auto r = run_scheme(scheme, g, RunOptions{true, {}});
      if (!r.passed()) out.fail(std::string(scheme) + " G_" + std::to_string(n) + ": " + r.failure);
      auto rep = lb::audit_facts(r.trace, desc, r.bundle.labels);
      for (const auto& v : rep.violations)
        out.fail(std::string(scheme) + " G_" + std::to_string(n) + " " + v.check + " round " + std::to_string(v.round) + ": " + v.detail);
      d << scheme << " G_" << n << ": " << rep.departures.size() << " departures; ";
    }
  }
  out.detail = d.str();
  return out;
}

// 10 -----------------------------------------------------------------------
Outcome scaling_csv(const std::string& path) {
  Outcome out;
  std::ofstream csv(path);
  if (!csv) {
    out.fail("cannot write " + path);
    return out;
  }
  write_bench_header(csv);
  for (std::size_t k = 6; k <= 11; ++k) {
    Graph p = make_path(std::size_t{1} << k);
    for (const char* scheme : {"fastsd", "general"}) {
      auto r = run_scheme(scheme, p);
      if (!r.passed()) out.fail(std::string(scheme) + " on P" + std::to_string(p.size()) + ": " + r.failure);
      write_bench_row(csv, bench_record("path-" + std::to_string(p.size()), p, r));
    }
  }
  out.detail = "wrote " + path + " (measured rounds for inspection; no asymptotic claim asserted)";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string scaling_path = argc > 1 ? argv[1] : "scaling.csv";
  Corpus corpus;
  for (const auto& e : read_manifest_file(std::string(RADIOLAB_DATA_DIR) + "/corpus.manifest")) {
    corpus.ids.push_back(e.id);
    corpus.graphs.push_back(generate(e.params));
  }

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {"size discovery on the corpus", [&] { return size_discovery(corpus); }},
      {"exact BFS broadcast and gather lengths", [&] { return round_formulas(corpus); }},
      {"topology recognition and round bound", [&] { return topology_recognition(corpus); }},
      {"label length scaling on stars", [] { return label_scaling(); }},
      {"subtree bit assignment on random trees", [] { return subtree_suite(); }},
      {"executor tree and schedule properties", [&] { return executor_properties(corpus); }},
      {"broadcast and gather index properties", [&] { return index_suite(corpus); }},
      {"stripe isolation, conflict-free paths, relay timing", [&] { return fast_structure(corpus); }},
      {"lower-bound audits on G_n", [] { return lower_bound_audits(); }},
      {"path scaling CSV", [&] { return scaling_csv(scaling_path); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << all[i].name << " (" << o.detail
              << ")\n";
    for (const auto& f : o.failures) std::cout << "      " << f << '\n';
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? 1 : 0;
}
