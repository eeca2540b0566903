#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "radiolab/error.hpp"
#include "radiolab/exec_schemes.hpp"
#include "radiolab/executor.hpp"
#include "radiolab/generators.hpp"
#include "radiolab/rng.hpp"
#include "trace_checks.hpp"

using namespace radiolab;
using namespace radiolab::exec;

namespace {

// Brute-force minimality: dominates, and no single member can be dropped.
bool is_minimal_dominating(const Graph& g, const std::vector<Vertex>& set, const std::vector<Vertex>& targets) {
  std::set<Vertex> s(set.begin(), set.end());
  if (!oracle::dominates(g, s, targets)) return false;
  for (Vertex v : set) {
    auto smaller = s;
    smaller.erase(v);
    if (oracle::dominates(g, smaller, targets)) return false;
  }
  return true;
}

ExecutionTrace run_executor(const Graph& g, const SchemeBundle& bundle) {
  return run(g, bundle.labels, [](const LabelBits& l) { return executor_program(l, "payload"); });
}

std::vector<Graph> sample_graphs() {
  std::vector<Graph> gs{make_path(1), make_path(2), make_path(4), make_path(17), make_cycle(6), make_cycle(13),
                        make_star(5), make_star(30), make_grid(4, 7), make_complete(6), gen_lb_family(16).first};
  for (std::uint64_t seed = 1; seed <= 25; ++seed) gs.push_back(gen_random_connected(8 + seed * 3, 0.06, seed));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) gs.push_back(make_random_tree(20 + seed * 7, seed));
  return gs;
}

}  // namespace

TEST_CASE("minimal_dominating_subset examples") {
  Graph star = make_star(5);
  std::vector<Vertex> s{0};
  std::vector<Vertex> nbrs{1, 2, 3, 4};
  CHECK(minimal_dominating_subset(s, nbrs, star) == std::vector<Vertex>{0});

  // a-b-c as 0-1-2
  Graph p3 = make_path(3);
  std::vector<Vertex> ab{0, 1};
  std::vector<Vertex> c{2};
  CHECK(minimal_dominating_subset(ab, c, p3) == std::vector<Vertex>{1});

  std::vector<Vertex> cl{0, 1};
  std::vector<Vertex> leaves{2, 3, 4};
  CHECK(minimal_dominating_subset(cl, leaves, star) == std::vector<Vertex>{0});

  std::vector<Vertex> lonely{1};
  std::vector<Vertex> far{3};
  CHECK_THROWS_AS(minimal_dominating_subset(lonely, far, star), Error);
}

TEST_CASE("minimal_dominating_subset is minimal") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = gen_random_connected(6 + rng.below(20), 0.2, trial);
    std::vector<Vertex> cand, targets;
    for (Vertex v = 0; v < g.size(); ++v) (rng.below(3) == 0 ? cand : targets).push_back(v);
    std::vector<Vertex> reachable;
    for (Vertex t : targets) {
      auto nb = g.neighbors(t);
      if (std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return std::count(cand.begin(), cand.end(), w); }))
        reachable.push_back(t);
    }
    auto dom = minimal_dominating_subset(cand, reachable, g);
    CHECK(is_minimal_dominating(g, dom, reachable));
  }
}

TEST_CASE("synthesize_executor small cases") {
  auto one = synthesize_executor(make_path(1), 0);
  CHECK(one.plan.tree.rounds() == 0);
  CHECK_FALSE(one.plan.bits[0].join);

  auto p2 = synthesize_executor(make_path(2), 0);
  CHECK(p2.plan.tree.stages == 1);
  CHECK(p2.plan.tree.level[1] == 1);
  CHECK(p2.plan.bits[0].join);

  auto star = synthesize_executor(make_star(5), 0);
  CHECK(star.plan.tree.stages == 1);
  for (Vertex v = 1; v < 5; ++v) {
    CHECK(star.plan.tree.level[v] == 1);
    CHECK(star.plan.tree.parent[v] == 0u);
  }
}

TEST_CASE("executor program informs everyone") {
  Graph p4 = make_path(4);
  auto syn = synthesize_executor(p4, 0);
  auto trace = run_executor(p4, syn.bundle);
  for (Vertex v = 0; v < 4; ++v) CHECK(trace.output(v) == "payload");
  CHECK(syn.plan.tree.stages <= 3);
  CHECK(trace.rounds() <= 9);
  for (Vertex v = 1; v < 4; ++v) CHECK(syn.plan.tree.level[v] % 3 == 1);

  Graph c6 = make_cycle(6);
  auto cyc = synthesize_executor(c6, 0);
  auto ct = run_executor(c6, cyc.bundle);
  std::size_t tree_edges = 0;
  for (Vertex v = 0; v < 6; ++v) {
    CHECK(ct.output(v) == "payload");
    if (cyc.plan.tree.parent[v]) {
      ++tree_edges;
      CHECK(c6.adjacent(v, *cyc.plan.tree.parent[v]));
    }
  }
  CHECK(tree_edges == 5);
}

TEST_CASE("executor plans satisfy the structural properties") {
  for (bool go : {false, true}) {
    for (const Graph& g : sample_graphs()) {
      for (Vertex s : {Vertex{0}, static_cast<Vertex>(g.size() - 1)}) {
        auto syn = synthesize_executor(g, s, {.speedup_go = go});
        CHECK(check_tree(g, syn.plan.tree).empty());
        CHECK(check_schedule(g, syn.plan).empty());
        CHECK(syn.plan.tree.stages <= g.size());
        auto trace = run_executor(g, syn.bundle);
        for (Vertex v = 0; v < g.size(); ++v) CHECK(trace.output(v) == "payload");
        auto diff = checks::compare_run(trace, syn.plan, kExecutorTag, 1);
        CHECK_MESSAGE(diff.empty(), (diff.empty() ? "" : diff.front()));
        if (!go) {
          for (Vertex v = 0; v < g.size(); ++v)
            if (v != s) CHECK(syn.plan.tree.level[v] % 3 == 1);
        }
      }
    }
  }
}

TEST_CASE("multi-source broadcast") {
  Graph p5 = make_path(5);
  std::vector<Vertex> all{0, 1, 2, 3, 4};
  CHECK(synthesize_mbroadcast(p5, all).plan.tree.stages == 0);

  std::vector<Vertex> ends{0, 4};
  auto syn = synthesize_mbroadcast(p5, ends);
  CHECK(syn.plan.tree.stages <= 2);
  auto trace = run_executor(p5, syn.bundle);
  for (Vertex v = 0; v < 5; ++v) CHECK(trace.output(v) == "payload");

  std::vector<Vertex> none;
  CHECK_THROWS_AS(synthesize_mbroadcast(p5, none), Error);

  Graph g = make_grid(6, 6);
  auto single = synthesize_executor(g, 7);
  std::vector<Vertex> seven{7};
  auto multi = synthesize_mbroadcast(g, seven);
  CHECK(single.bundle.labels == multi.bundle.labels);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph h = gen_random_connected(30, 0.05, seed);
    std::vector<Vertex> src{static_cast<Vertex>(seed % 30), static_cast<Vertex>((seed * 7 + 3) % 30)};
    auto m = synthesize_mbroadcast(h, src);
    CHECK(check_tree(h, m.plan.tree).empty());
    CHECK(check_schedule(h, m.plan).empty());
    auto tr = run_executor(h, m.bundle);
    for (Vertex v = 0; v < h.size(); ++v) CHECK(tr.output(v) == "payload");
    CHECK(checks::compare_run(tr, m.plan, kExecutorTag, 1).empty());
  }
}

TEST_CASE("acknowledged broadcast") {
  auto expect_knowledge = [](const Graph& g, Vertex s) {
    auto syn = synthesize_execack(g, s);
    auto trace = run(g, syn.bundle.labels, execack_program);
    const auto& tree = syn.plan.broadcast.tree;
    Round t = tree.rounds();
    CHECK(trace.rounds() <= 3 * t);
    for (Vertex v = 0; v < g.size(); ++v) {
      Round parent_level = tree.parent[v] ? tree.parent_level[v] : 0;
      CHECK(trace.output(v) == std::to_string(t) + " " + std::to_string(tree.max_level()) + " " +
                                   std::to_string(tree.level[v]) + " " + std::to_string(parent_level));
    }
    return t;
  };
  CHECK(expect_knowledge(make_path(2), 0) == 3);
  CHECK(expect_knowledge(make_path(1), 0) == 0);
  CHECK(expect_knowledge(make_star(4), 0) == 3);
  for (const Graph& g : sample_graphs()) expect_knowledge(g, static_cast<Vertex>(g.size() / 2));
}

TEST_CASE("message along the deepest path") {
  auto check_run = [](const Graph& g, Vertex s, const char* m) {
    Bits message = Bits::from_string(m);
    auto syn = synthesize_path_message(g, s, message);
    auto trace = run(g, syn.bundle.labels, [](const LabelBits& l) { return path_message_program(l); });
    for (Vertex v = 0; v < g.size(); ++v) CHECK(trace.output(v) == std::string(m));
    // Collection window: after the acknowledged broadcast, before the
    // final spread.
    Round t = syn.plan.ack.broadcast.tree.rounds();
    Round top = syn.plan.ack.broadcast.tree.max_level();
    for (Round r = 3 * t + 1; r <= 3 * t + top && r <= trace.rounds(); ++r) CHECK(trace.transmitters(r).size() <= 1);
    // Levels of marked nodes are distinct and chunks fit.
    std::set<Round> levels;
    for (Vertex v : syn.plan.marked) {
      CHECK(levels.insert(syn.plan.ack.broadcast.tree.level[v]).second);
      CHECK(syn.plan.chunk[v].size() <= syn.plan.chunk_size);
    }
    return syn;
  };
  auto single = check_run(make_path(1), 0, "101");
  CHECK(single.plan.chunk[0] == Bits::from_string("101"));
  check_run(make_path(8), 0, "1011");
  auto k4 = check_run(make_complete(4), 0, "1");
  CHECK(k4.plan.chunk[0] == Bits::from_string("1"));
  for (const Graph& g : sample_graphs()) check_run(g, 0, "110100111010110");
}
