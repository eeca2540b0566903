#include "radiolab/schemes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "radiolab/bfs_tree.hpp"
#include "radiolab/compact_sd.hpp"
#include "radiolab/error.hpp"
#include "radiolab/fast_sd.hpp"
#include "radiolab/toprec.hpp"

namespace radiolab {

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"compact", "general", "fastsd", "toprec", "broadcast-bfs", "gather-bfs"};
  return names;
}

bool is_scheme(const std::string& name) {
  const auto& all = scheme_names();
  return std::find(all.begin(), all.end(), name) != all.end();
}

namespace {

using Verifier = std::function<std::string(Vertex, const std::string&)>;

SchemeRun finish(std::string scheme, SchemeBundle bundle, ExecutionTrace trace, const Verifier& verify) {
  SchemeRun out{std::move(scheme), std::move(bundle), std::move(trace), 0, {}};
  for (Vertex v = 0; v < out.trace.node_count(); ++v) {
    const auto& o = out.trace.output(v);
    std::string why = o ? verify(v, *o) : "no output";
    if (why.empty()) ++out.correct;
    else if (out.failure.empty()) out.failure = "node " + std::to_string(v) + ": " + why;
  }
  return out;
}

Verifier expect_text(std::string want) {
  return [want](Vertex, const std::string& got) { return got == want ? std::string() : "printed " + got; };
}

std::string check_toprec(const std::set<Edge>& want, const std::vector<topo::NodeId>& ids,
                         const std::map<topo::NodeId, Vertex>& node_of, Vertex v, const std::string& text) {
  topo::TopRecOutput out;
  try {
    out = topo::parse_toprec_output(text);
  } catch (const std::exception& e) {
    return std::string("unreadable output: ") + e.what();
  }
  if (out.self != ids[v]) return "wrong own position";
  std::set<Edge> got;
  for (const auto& [a, b] : out.edges) {
    auto x = node_of.find(a), y = node_of.find(b);
    if (x == node_of.end() || y == node_of.end()) return "unknown id in edge list";
    got.insert(Edge{std::min(x->second, y->second), std::max(x->second, y->second)});
  }
  if (got.size() != out.edges.size()) return "repeated edge";
  if (got != want) return "edge set differs";
  return {};
}

}  // namespace

SchemeRun run_scheme(const std::string& scheme, const Graph& g, const RunOptions& options) {
  if (!is_scheme(scheme)) throw Error(ErrorCode::InvalidParams, "unknown scheme '" + scheme + "'");
  require_connected(g);
  const std::string n_text = std::to_string(g.size());

  if (scheme == "compact") {
    auto b = sd::build_compact_labels(g);
    auto t = run(g, b.labels, [](const LabelBits& l) { return sd::auxiliary_sd_program(l); }, options);
    return finish(scheme, std::move(b), std::move(t), expect_text(n_text));
  }
  if (scheme == "general") {
    auto b = sd::build_general_sd(g);
    auto t = run(g, b.labels, [](const LabelBits& l) { return sd::general_sd_program(l); }, options);
    return finish(scheme, std::move(b), std::move(t), expect_text(n_text));
  }
  if (scheme == "fastsd") {
    auto b = sd::build_fast_sd(g);
    auto t = run(g, b.labels, [](const LabelBits& l) { return sd::fast_sd_program(l); }, options);
    return finish(scheme, std::move(b), std::move(t), expect_text(n_text));
  }
  if (scheme == "toprec") {
    auto plan = topo::plan_toprec(g);
    std::map<topo::NodeId, Vertex> node_of;
    for (Vertex v = 0; v < g.size(); ++v) node_of[plan.ids[v]] = v;
    auto edges = g.edges();
    const std::set<Edge> want(edges.begin(), edges.end());
    auto b = topo::build_toprec_labels(g);
    auto t = run(g, b.labels, [](const LabelBits& l) { return topo::toprec_program(l); }, options);
    return finish(scheme, std::move(b), std::move(t), [&](Vertex v, const std::string& text) {
      return check_toprec(want, plan.ids, node_of, v, text);
    });
  }
  if (scheme == "broadcast-bfs") {
    auto b = topo::build_bfs_labels(g, 0);
    auto t = run(g, b.labels, [](const LabelBits& l) { return topo::broadcast_bfs_program(l); }, options);
    return finish(scheme, std::move(b), std::move(t), expect_text("M"));
  }
  // gather-bfs
  auto ids = topo::node_ids(topo::build_bfs_tree(g, 0));
  auto sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> want(g.size());
  for (Vertex v = 0; v < g.size(); ++v) want[v] = v == 0 ? nlohmann::json(sorted).dump() : topo::id_json(ids[v]).dump();
  auto b = topo::build_bfs_labels(g, 0);
  auto t = run(g, b.labels, [](const LabelBits& l) { return topo::gather_bfs_program(l); }, options);
  return finish(scheme, std::move(b), std::move(t), [&](Vertex v, const std::string& text) {
    return text == want[v] ? std::string() : "printed " + text;
  });
}

BenchRecord bench_record(const std::string& graph_id, const Graph& g, const SchemeRun& run) {
  return {graph_id,
          g.size(),
          g.max_degree(),
          diameter(g),
          run.scheme,
          run.bundle.max_label_bits(),
          run.trace.rounds(),
          run.correct};
}

void write_bench_header(std::ostream& out) {
  out << "graph_id,n,delta,diameter,scheme,max_label_bits,rounds,correct\n";
}

void write_bench_row(std::ostream& out, const BenchRecord& r) {
  out << r.graph_id << ',' << r.n << ',' << r.delta << ',' << r.diameter << ',' << r.scheme << ','
      << r.max_label_bits << ',' << r.rounds << ',' << r.correct << '\n';
}

nlohmann::json to_json(const BenchRecord& r) {
  return {{"graph_id", r.graph_id}, {"n", r.n},         {"delta", r.delta},
          {"diameter", r.diameter}, {"scheme", r.scheme}, {"max_label_bits", r.max_label_bits},
          {"rounds", r.rounds},     {"correct", r.correct}};
}

}  // namespace radiolab
