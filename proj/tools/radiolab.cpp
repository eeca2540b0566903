// radiolab: generate graphs, run labeling schemes, benchmark and audit.
//
// Exit codes: 0 all verifications passed, 1 a run failed verification or a
// library error was raised, 2 usage error.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "radiolab/corpus.hpp"
#include "radiolab/error.hpp"
#include "radiolab/graph_io.hpp"
#include "radiolab/lb_audit.hpp"
#include "radiolab/schemes.hpp"

#ifndef RADIOLAB_DATA_DIR
#define RADIOLAB_DATA_DIR "data"
#endif

using namespace radiolab;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunOptions run_options(bool cd) {
  RunOptions o;
  o.collision_detection = cd;
  if (const char* env = std::getenv("RADIOLAB_MAX_ROUNDS")) {
    try {
      o.max_rounds = std::stoll(env);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("RADIOLAB_MAX_ROUNDS is not a number: ") + env);
    }
  }
  return o;
}

// Writes to `path`, or stdout when it is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
  fn(out);
}

// --- gen -------------------------------------------------------------------

int cmd_gen(const GenParams& params, const std::string& out) {
  Graph g = generate(params);
  emit(out, [&](std::ostream& os) { write_edge_list(os, g); });
  return 0;
}

// --- run -------------------------------------------------------------------

int cmd_run(const std::string& scheme, const std::string& graph_path, bool cd, const std::string& out) {
  if (!is_scheme(scheme)) throw UsageError("unknown scheme '" + scheme + "'");
  Graph g = read_edge_list_file(graph_path);
  auto result = run_scheme(scheme, g, run_options(cd));
  auto j = to_json(bench_record(graph_path, g, result));
  j["passed"] = result.passed();
  if (!result.passed()) j["failure"] = result.failure;
  emit(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return result.passed() ? 0 : 1;
}

// --- bench -----------------------------------------------------------------

struct Job {
  std::string graph_id;
  GenParams params;
  std::string scheme;
};

std::vector<Job> suite_jobs(const std::string& suite, const std::string& manifest) {
  std::vector<Job> jobs;
  if (suite == "size" || suite == "toprec") {
    for (const auto& e : read_manifest_file(manifest)) {
      if (suite == "size") {
        for (const char* s : {"compact", "general", "fastsd"}) jobs.push_back({e.id, e.params, s});
      } else if (e.params.n <= 150 || (e.params.rows * e.params.cols && e.params.rows * e.params.cols <= 150)) {
        jobs.push_back({e.id, e.params, "toprec"});
      }
    }
  } else if (suite == "labels") {
    for (std::size_t k = 2; k <= 12; ++k) {
      GenParams s{"star", (std::size_t{1} << k) + 1};
      for (const char* scheme : {"compact", "toprec"}) jobs.push_back({"star-k" + std::to_string(k), s, scheme});
    }
  } else if (suite == "scaling") {
    for (std::size_t k = 6; k <= 11; ++k) {
      GenParams s{"path", std::size_t{1} << k};
      for (const char* scheme : {"fastsd", "general"}) jobs.push_back({"path-" + std::to_string(s.n), s, scheme});
    }
  } else {
    throw UsageError("unknown suite '" + suite + "' (size, labels, toprec, scaling)");
  }
  return jobs;
}

int cmd_bench(const std::string& suite, const std::string& manifest, const std::string& out, unsigned jobs_n) {
  auto jobs = suite_jobs(suite, manifest);
  std::vector<BenchRecord> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const RunOptions options = run_options(false);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      const auto& job = jobs[i];
      Graph g = generate(job.params);
      try {
        rows[i] = bench_record(job.graph_id, g, run_scheme(job.scheme, g, options));
      } catch (const Error& e) {
        rows[i] = {job.graph_id, g.size(), g.max_degree(), 0, job.scheme, 0, 0, 0};
        errors[i] = e.what();
      }
    }
  };
  if (jobs_n == 0) jobs_n = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs_n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int status = 0;
  emit(out, [&](std::ostream& os) {
    write_bench_header(os);
    for (const auto& r : rows) write_bench_row(os, r);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].correct == rows[i].n && errors[i].empty()) continue;
    status = 1;
    std::cerr << "FAIL " << rows[i].graph_id << ' ' << rows[i].scheme << ": "
              << (errors[i].empty() ? std::to_string(rows[i].correct) + "/" + std::to_string(rows[i].n) + " correct"
                                    : errors[i])
              << '\n';
  }
  return status;
}

// --- audit -----------------------------------------------------------------

LBFamilyDescriptor read_partition(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open partition file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("partition: ") + e.what());
  }
  if (j.is_object()) j = j.at("components");
  LBFamilyDescriptor d;
  d.n = n;
  d.components = j.get<std::vector<std::vector<Vertex>>>();
  std::vector<bool> seen(n, false);
  for (const auto& c : d.components)
    for (Vertex v : c) {
      if (v >= n || seen[v]) throw Error(ErrorCode::InvalidParams, "partition lists node " + std::to_string(v) + " twice or out of range");
      seen[v] = true;
    }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) d.special.push_back(v);
  return d;
}

std::optional<LBFamilyDescriptor> detect_lb_family(const Graph& g) {
  if (!is_even_square(g.size())) return std::nullopt;
  auto [lb, desc] = gen_lb_family(g.size());
  if (!(lb == g)) return std::nullopt;
  return desc;
}

int cmd_audit(const std::string& graph_path, const std::string& scheme, const std::string& partition,
              const std::string& out, const std::string& csv) {
  if (!is_scheme(scheme)) throw UsageError("unknown scheme '" + scheme + "'");
  Graph g = read_edge_list_file(graph_path);
  std::optional<LBFamilyDescriptor> desc;
  if (!partition.empty()) desc = read_partition(partition, g.size());
  else desc = detect_lb_family(g);
  if (!desc) throw UsageError("graph is not a G_n instance; pass --partition");

  auto result = run_scheme(scheme, g, run_options(true));
  auto report = lb::audit_facts(result.trace, *desc, result.bundle.labels);
  auto j = lb::to_json(report);
  j["scheme"] = scheme;
  j["outputs_correct"] = result.correct;
  emit(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  if (!csv.empty()) emit(csv, [&](std::ostream& os) { lb::write_audit_csv(os, report); });
  return report.passed() && result.passed() ? 0 : 1;
}

// --- corpus ----------------------------------------------------------------

int cmd_corpus(const std::string& manifest, const std::string& dir) {
  for (const auto& e : read_manifest_file(manifest)) write_edge_list_file(dir + "/" + e.id + ".el", generate(e.params));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeling schemes for radio networks: generation, simulation, benchmarks, audits"};
  app.require_subcommand(1);

  GenParams params;
  std::string out;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("--family", params.family, "path, cycle, star, grid, gnp-connected, tree, lbG, lbH")->required();
  gen->add_option("--n", params.n, "Number of nodes");
  gen->add_option("--p", params.p, "Extra edge probability (gnp-connected)");
  gen->add_option("--delta", params.delta, "Maximum degree (lbH)");
  gen->add_option("--seed", params.seed, "Random seed");
  gen->add_option("--rows", params.rows, "Grid rows");
  gen->add_option("--cols", params.cols, "Grid columns");
  gen->add_option("--out", out, "Output file (default stdout)");

  std::string scheme, graph_path;
  bool cd = false;
  auto* runc = app.add_subcommand("run", "Synthesize labels, run a scheme and verify the outputs");
  runc->add_option("--scheme", scheme, "compact, general, fastsd, toprec, broadcast-bfs, gather-bfs")->required();
  runc->add_option("graph", graph_path, "Edge-list file")->required();
  runc->add_flag("--cd", cd, "Collision detection");
  runc->add_option("--out", out, "Result JSON (default stdout)");

  std::string suite, manifest = std::string(RADIOLAB_DATA_DIR) + "/corpus.manifest";
  unsigned jobs = 0;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench->add_option("--suite", suite, "size, labels, toprec, scaling")->required();
  bench->add_option("--manifest", manifest, "Corpus manifest")->capture_default_str();
  bench->add_option("--out", out, "CSV file (default stdout)");
  bench->add_option("--jobs", jobs, "Worker threads (default: all cores)");

  std::string partition, csv;
  auto* audit = app.add_subcommand("audit", "Run a scheme with collision detection and audit it on a G_n instance");
  audit->add_option("graph", graph_path, "Edge-list file")->required();
  audit->add_option("--scheme", scheme, "Scheme to run")->required();
  audit->add_option("--partition", partition, "JSON list of components for graphs other than G_n");
  audit->add_option("--out", out, "Report JSON (default stdout)");
  audit->add_option("--csv", csv, "Per-round CSV summary");

  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "Write every manifest graph as <dir>/<id>.el");
  corpus->add_option("--manifest", manifest, "Corpus manifest")->capture_default_str();
  corpus->add_option("--out", dir, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) return cmd_gen(params, out);
    if (*runc) return cmd_run(scheme, graph_path, cd, out);
    if (*bench) return cmd_bench(suite, manifest, out, jobs);
    if (*audit) return cmd_audit(graph_path, scheme, partition, out, csv);
    if (*corpus) return cmd_corpus(manifest, dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
