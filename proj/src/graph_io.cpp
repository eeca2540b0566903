#include "radiolab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "radiolab/error.hpp"

namespace radiolab {

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw Error(ErrorCode::ParseError, "unexpected end of input after line " + std::to_string(line_no));
  };
  long long n = -1, m = -1;
  {
    auto header = next_line();
    if (!(header >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::ParseError, "bad header on line " + std::to_string(line_no));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    auto row = next_line();
    long long u = -1, v = -1;
    if (!(row >> u >> v)) throw Error(ErrorCode::ParseError, "bad edge on line " + std::to_string(line_no));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "edge on line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return build_graph(static_cast<std::size_t>(n), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  write_edge_list(out, g);
}

void write_dot(std::ostream& out, const Graph& g) {
  out << "graph G {\n";
  for (Vertex v = 0; v < g.size(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
}

}  // namespace radiolab
