#include <deque>
#include <fstream>

#include <json.hpp>

#include "lightspan/girth.hpp"
#include "lightspan/girth_graphs.hpp"
#include "lightspan/graph_io.hpp"

namespace lightspan {

std::optional<std::vector<std::uint8_t>> two_colouring(const WeightedGraph& g) {
  constexpr std::uint8_t kUnset = 2;
  std::vector<std::uint8_t> side(g.node_count(), kUnset);
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (side[root] != kUnset) continue;
    side[root] = 0;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (const Arc& arc : g.arcs(x)) {
        if (side[arc.to] == kUnset) {
          side[arc.to] = static_cast<std::uint8_t>(1 - side[x]);
          queue.push_back(arc.to);
        } else if (side[arc.to] == side[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

void validate(GirthGraph& g) {
  for (const Edge& e : g.graph.edges()) {
    if (e.weight != Weight{1}) throw GenerationError("girth graph edges must have unit weight");
  }
  if (g.girth_parameter == 0) throw GenerationError("girth parameter must be positive");
  if (g.degree_band) {
    for (NodeId v = 0; v < g.graph.node_count(); ++v) {
      const std::size_t d = g.graph.degree(v);
      if (d < g.degree_band->lo || d > g.degree_band->hi) {
        throw GenerationError("node " + std::to_string(v) + " has degree " + std::to_string(d) +
                              " outside [" + std::to_string(g.degree_band->lo) + ", " +
                              std::to_string(g.degree_band->hi) + "]");
      }
    }
  }
  if (g.bipartition) {
    const auto& side = *g.bipartition;
    if (side.size() != g.graph.node_count()) {
      throw GenerationError("bipartition size does not match node count");
    }
    for (const Edge& e : g.graph.edges()) {
      if (side[e.u] == side[e.v]) {
        throw GenerationError("bipartition is not proper at edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ")");
      }
    }
  }
  if (g.graph.node_count() <= kGirthCheckNodeLimit) {
    const auto girth = unweighted_girth(g.graph);
    if (girth && *girth <= 2 * g.girth_parameter) {
      throw GenerationError("girth " + std::to_string(*girth) + " does not exceed 2 * " +
                            std::to_string(g.girth_parameter));
    }
    g.provenance.certified_girth = girth;
  }
}

std::string provenance_json(const GirthGraph& g) {
  nlohmann::ordered_json doc;
  doc["generator"] = g.provenance.generator;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : g.provenance.params) params[key] = value;
  doc["params"] = params;
  doc["seed"] = g.provenance.seed;
  doc["girth_parameter"] = g.girth_parameter;
  if (g.provenance.certified_girth) {
    doc["certified_girth"] = *g.provenance.certified_girth;
  } else {
    doc["certified_girth"] = nullptr;
  }
  doc["nodes"] = g.graph.node_count();
  doc["edges"] = g.graph.edge_count();
  if (g.degree_band) doc["degree_band"] = {g.degree_band->lo, g.degree_band->hi};
  doc["bipartite"] = g.bipartition.has_value();
  nlohmann::ordered_json splits = nlohmann::ordered_json::array();
  for (auto [parent, child] : g.provenance.splits) splits.push_back({parent, child});
  doc["splits"] = splits;
  return doc.dump(2) + "\n";
}

void save_girth_graph(const std::filesystem::path& graph_path,
                      const std::filesystem::path& provenance_path, const GirthGraph& g) {
  save_graph(graph_path, g.graph);
  std::ofstream out(provenance_path, std::ios::binary);
  if (!out) throw Error("cannot open " + provenance_path.string() + " for writing");
  out << provenance_json(g);
}

}  // namespace lightspan
