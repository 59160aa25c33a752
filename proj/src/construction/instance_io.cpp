#include <algorithm>
#include <fstream>
#include <sstream>

#include "lightspan/construction.hpp"
#include "lightspan/graph_io.hpp"

namespace lightspan {

void write_layout(std::ostream& out, const EmbeddedInstance& inst) {
  const CycleLayout& layout = inst.layout;
  out << "# lightspan instance layout\n";
  out << "k " << layout.k << '\n';
  out << "epsilon " << layout.epsilon.to_string() << '\n';
  out << "cycle_length " << layout.cycle_length << '\n';
  out << "cluster_size " << layout.cluster_size << '\n';
  out << "spacer_size " << layout.spacer_size << '\n';
  out << "base " << inst.base.node_count() << ' ' << inst.base.edge_count() << '\n';
  for (const Edge& e : inst.base.edges()) out << "base_edge " << e.u << ' ' << e.v << '\n';
  out << "assignment";
  for (std::uint32_t c : layout.cluster_of_node) out << ' ' << c;
  out << '\n';
  for (const EmbeddedEdge& e : inst.embedded) {
    out << "embedded " << e.base_edge << ' ' << e.graph_edge << '\n';
  }
  out << "pruned";
  for (EdgeId e : inst.pruned) out << ' ' << e;
  out << '\n';
}

std::string layout_text(const EmbeddedInstance& inst) {
  std::ostringstream out;
  write_layout(out, inst);
  return out.str();
}

namespace {

class LayoutReader {
 public:
  explicit LayoutReader(std::istream& in) : in_(in) {}

  /// Next non-comment line, which must start with `key`.
  std::istringstream expect(const std::string& key) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string word;
      fields >> word;
      if (word != key) fail("expected '" + key + "', found '" + word + "'");
      return fields;
    }
    fail("unexpected end of layout, expected '" + key + "'");
  }

  template <class T>
  T value(const std::string& key) {
    auto fields = expect(key);
    T out{};
    if (!(fields >> out)) fail("bad value for '" + key + "'");
    finish(fields);
    return out;
  }

  void finish(std::istringstream& fields) {
    std::string rest;
    if (fields >> rest) fail("trailing input '" + rest + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("layout line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void check_instance(const EmbeddedInstance& inst) {
  const CycleLayout& layout = inst.layout;
  const auto fail = [](const std::string& what) { throw StructuralError("instance: " + what); };
  const std::uint64_t inverse = static_cast<std::uint64_t>(layout.epsilon.inverse());
  const std::size_t n = inst.base.node_count();
  if (layout.cluster_size != layout.k * inverse || layout.spacer_size != 3 * layout.k * inverse ||
      layout.cycle_length != 4 * layout.k * inverse * n) {
    fail("cluster, spacer and cycle sizes disagree with k and epsilon");
  }
  std::vector<char> seen(n, 0);
  if (layout.cluster_of_node.size() != n) fail("assignment size differs from base node count");
  for (std::uint32_t c : layout.cluster_of_node) {
    if (c >= n || seen[c]) fail("assignment is not a bijection");
    seen[c] = 1;
  }
  if (inst.graph.node_count() != layout.cycle_length ||
      inst.graph.edge_count() != layout.cycle_length + inst.base.edge_count()) {
    fail("graph size does not match the layout");
  }
  for (std::uint64_t i = 0; i < layout.cycle_length; ++i) {
    const Edge& e = inst.graph.edge(static_cast<EdgeId>(i));
    if (e != Edge{static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % layout.cycle_length),
                  Weight{1}}) {
      fail("edge " + std::to_string(i) + " is not the expected spanning-cycle edge");
    }
  }
  if (inst.embedded.size() != inst.base.edge_count()) fail("embedded edge count mismatch");
  for (EdgeId j = 0; j < inst.embedded.size(); ++j) {
    const EmbeddedEdge& m = inst.embedded[j];
    if (m.base_edge != j || m.graph_edge != layout.cycle_length + j) {
      fail("embedded edge " + std::to_string(j) + " is out of order");
    }
    const Edge& h = inst.graph.edge(m.graph_edge);
    const Edge& b = inst.base.edge(j);
    if (h.weight != Weight(layout.epsilon.inverse()) ||
        !layout.cluster_of(b.u).contains(h.u) || !layout.cluster_of(b.v).contains(h.v)) {
      fail("embedded edge " + std::to_string(j) + " does not join its clusters at weight 1/eps");
    }
  }
  if (!std::is_sorted(inst.pruned.begin(), inst.pruned.end()) ||
      std::adjacent_find(inst.pruned.begin(), inst.pruned.end()) != inst.pruned.end()) {
    fail("pruned set is not sorted and distinct");
  }
  for (EdgeId e : inst.pruned) {
    if (inst.is_sc_edge(e) || e >= inst.graph.edge_count()) fail("pruned edge is not embedded");
  }
}

}  // namespace

EmbeddedInstance read_instance(std::istream& graph_in, std::istream& layout_in) {
  EmbeddedInstance inst;
  inst.graph = read_graph(graph_in, ParallelEdges::allow);
  LayoutReader reader(layout_in);
  CycleLayout& layout = inst.layout;
  layout.k = reader.value<std::size_t>("k");
  try {
    layout.epsilon = Epsilon::parse(reader.value<std::string>("epsilon"));
  } catch (const ParameterError& e) {
    reader.fail(e.what());
  }
  layout.cycle_length = reader.value<std::uint64_t>("cycle_length");
  layout.cluster_size = reader.value<std::uint64_t>("cluster_size");
  layout.spacer_size = reader.value<std::uint64_t>("spacer_size");

  std::size_t n = 0;
  std::size_t m = 0;
  {
    auto fields = reader.expect("base");
    if (!(fields >> n >> m)) reader.fail("bad base sizes");
    reader.finish(fields);
  }
  std::vector<Edge> base_edges;
  for (std::size_t i = 0; i < m; ++i) {
    auto fields = reader.expect("base_edge");
    NodeId u = 0;
    NodeId v = 0;
    if (!(fields >> u >> v)) reader.fail("bad base edge");
    reader.finish(fields);
    base_edges.push_back(Edge{u, v, Weight{1}});
  }
  inst.base = WeightedGraph(n, std::move(base_edges), ParallelEdges::allow);
  {
    auto fields = reader.expect("assignment");
    std::uint32_t c = 0;
    while (fields >> c) layout.cluster_of_node.push_back(c);
    if (!fields.eof()) reader.fail("bad assignment entry");
  }
  for (std::size_t i = 0; i < m; ++i) {
    auto fields = reader.expect("embedded");
    EmbeddedEdge e;
    if (!(fields >> e.base_edge >> e.graph_edge)) reader.fail("bad embedded edge");
    reader.finish(fields);
    inst.embedded.push_back(e);
  }
  {
    auto fields = reader.expect("pruned");
    EdgeId e = 0;
    while (fields >> e) inst.pruned.push_back(e);
    if (!fields.eof()) reader.fail("bad pruned entry");
  }
  check_instance(inst);
  return inst;
}

void save_instance(const std::filesystem::path& graph_path,
                   const std::filesystem::path& layout_path, const EmbeddedInstance& inst) {
  save_graph(graph_path, inst.graph);
  std::ofstream out(layout_path, std::ios::binary);
  if (!out) throw Error("cannot open " + layout_path.string() + " for writing");
  write_layout(out, inst);
}

EmbeddedInstance load_instance(const std::filesystem::path& graph_path,
                               const std::filesystem::path& layout_path) {
  std::ifstream graph_in(graph_path, std::ios::binary);
  if (!graph_in) throw Error("cannot open " + graph_path.string());
  std::ifstream layout_in(layout_path, std::ios::binary);
  if (!layout_in) throw Error("cannot open " + layout_path.string());
  return read_instance(graph_in, layout_in);
}

}  // namespace lightspan
