#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "radiolab/labels.hpp"
#include "radiolab/radio.hpp"

namespace radiolab {

// compact, general, fastsd, toprec, broadcast-bfs, gather-bfs
const std::vector<std::string>& scheme_names();
bool is_scheme(const std::string& name);

struct SchemeRun {
  std::string scheme;
  SchemeBundle bundle;
  ExecutionTrace trace;
  // Nodes whose output passed verification.
  std::size_t correct = 0;
  // First verification failure, empty when every node passed.
  std::string failure;

  bool passed() const { return correct == trace.node_count(); }
};

// Synthesizes labels, runs and verifies. Size schemes must print n; toprec
// must reproduce the graph under the label-id bijection and name the node
// itself; broadcast-bfs must deliver the payload; gather-bfs must leave the
// sorted id list at the root and every id at its node. Throws Disconnected,
// InvalidParams for an unknown scheme, RoundLimitExceeded.
SchemeRun run_scheme(const std::string& scheme, const Graph& g, const RunOptions& options = {});

struct BenchRecord {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t delta = 0;
  std::size_t diameter = 0;
  std::string scheme;
  std::size_t max_label_bits = 0;
  Round rounds = 0;
  std::size_t correct = 0;
};

BenchRecord bench_record(const std::string& graph_id, const Graph& g, const SchemeRun& run);

// graph_id,n,delta,diameter,scheme,max_label_bits,rounds,correct
void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRecord& r);
nlohmann::json to_json(const BenchRecord& r);

}  // namespace radiolab
