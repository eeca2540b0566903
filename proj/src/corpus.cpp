#include "radiolab/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "radiolab/error.hpp"

namespace radiolab {

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"path", "cycle", "star", "grid", "gnp-connected", "tree", "lbG", "lbH"};
  return names;
}

namespace {

std::pair<std::size_t, std::size_t> grid_shape(const GenParams& s) {
  if (s.rows && s.cols) return {s.rows, s.cols};
  if (s.n == 0) throw Error(ErrorCode::InvalidParams, "grid needs n or rows and cols");
  if (s.cols) {
    if (s.n % s.cols) throw Error(ErrorCode::InvalidParams, "n is not a multiple of cols");
    return {s.n / s.cols, s.cols};
  }
  std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(s.n)));
  while (r > 1 && s.n % r) --r;
  return {r, s.n / r};
}

}  // namespace

std::pair<Graph, std::optional<LBFamilyDescriptor>> generate_with_partition(const GenParams& s) {
  const auto& f = s.family;
  if (f == "path") return {make_path(s.n), std::nullopt};
  if (f == "cycle") return {make_cycle(s.n), std::nullopt};
  if (f == "star") return {make_star(s.n), std::nullopt};
  if (f == "grid") {
    auto [r, c] = grid_shape(s);
    return {make_grid(r, c), std::nullopt};
  }
  if (f == "gnp-connected") return {gen_random_connected(s.n, s.p, s.seed), std::nullopt};
  if (f == "tree") return {make_random_tree(s.n, s.seed), std::nullopt};
  if (f == "lbG") {
    auto [g, d] = gen_lb_family(s.n);
    return {std::move(g), std::move(d)};
  }
  if (f == "lbH") {
    auto [g, d] = gen_lb_general(s.delta, s.n);
    return {std::move(g), std::move(d)};
  }
  throw Error(ErrorCode::InvalidParams, "unknown family '" + f + "'");
}

Graph generate(const GenParams& params) { return generate_with_partition(params).first; }

std::vector<CorpusEntry> read_manifest(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    CorpusEntry e;
    if (!(ls >> e.id >> e.params.family)) throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno));
    std::string kv;
    while (ls >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno) + ": " + kv);
      std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      try {
        if (key == "n") e.params.n = std::stoul(value);
        else if (key == "p") e.params.p = std::stod(value);
        else if (key == "delta") e.params.delta = std::stoul(value);
        else if (key == "seed") e.params.seed = std::stoull(value);
        else if (key == "rows") e.params.rows = std::stoul(value);
        else if (key == "cols") e.params.cols = std::stoul(value);
        else throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno) + ": unknown key " + key);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno) + ": bad value " + kv);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_manifest(in);
}

}  // namespace radiolab
