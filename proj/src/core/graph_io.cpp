#include "lightspan/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lightspan {

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << e.weight.numerator() << ' ' << e.weight.denominator()
        << '\n';
  }
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

WeightedGraph read_graph(std::istream& in, ParallelEdges parallel) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError("graph file is empty");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  std::string extra;
  if (!(header >> n >> m) || n < 0 || m < 0 || (header >> extra)) {
    throw ParseError("line " + std::to_string(line_no) + ": expected 'n m' header");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!(row >> u >> v >> num >> den) || (row >> extra) || u < 0 || v < 0 || den <= 0) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v w_num w_den'");
    }
    edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v), Weight(num, den)});
  }
  if (next_content_line(in, line, line_no)) {
    throw ParseError("line " + std::to_string(line_no) + ": trailing content after edge list");
  }
  try {
    return WeightedGraph(static_cast<std::size_t>(n), std::move(edges), parallel);
  } catch (const StructuralError& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_graph(out, g);
  if (!out) throw Error("failed writing " + path.string());
}

WeightedGraph load_graph(const std::filesystem::path& path, ParallelEdges parallel) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_graph(in, parallel);
}

}  // namespace lightspan
