#include <algorithm>
#include <cstdlib>

#include "lightspan/construction.hpp"

namespace lightspan {

Weight EmbeddedInstance::girth_threshold() const {
  return (Weight(1) + layout.epsilon.value()) * Weight(2 * static_cast<std::int64_t>(layout.k));
}

EdgeId EmbeddedInstance::image_of(EdgeId base_edge) const {
  if (base_edge >= embedded.size() || embedded[base_edge].base_edge != base_edge) {
    throw StructuralError("base edge " + std::to_string(base_edge) + " has no image");
  }
  return embedded[base_edge].graph_edge;
}

EmbeddedInstance::Materialized EmbeddedInstance::materialize() const {
  Materialized out;
  std::vector<Edge> kept;
  kept.reserve(graph.edge_count() - pruned.size());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (std::binary_search(pruned.begin(), pruned.end(), e)) continue;
    kept.push_back(graph.edge(e));
    out.source_edge.push_back(e);
  }
  out.graph = WeightedGraph(graph.node_count(), std::move(kept), ParallelEdges::allow);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> sample_embedding(const WeightedGraph& base,
                                                        const CycleLayout& layout, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(base.edge_count());
  for (const Edge& e : base.edges()) {
    const Interval xu = layout.cluster_of(e.u);
    const Interval xv = layout.cluster_of(e.v);
    const auto a = static_cast<NodeId>(xu.begin + rng.below(xu.length));
    const auto b = static_cast<NodeId>(xv.begin + rng.below(xv.length));
    out.emplace_back(a, b);
  }
  return out;
}

EmbeddedInstance embed_edges(const GirthGraph& base, const CycleLayout& layout,
                             std::uint64_t seed) {
  if (layout.cluster_count() != base.graph.node_count()) {
    throw ParameterError("layout was built for a different base graph");
  }
  EmbeddedInstance inst;
  inst.base = base.graph;
  inst.layout = layout;
  const std::uint64_t n = layout.cycle_length;
  std::vector<Edge> edges;
  edges.reserve(n + base.graph.edge_count());
  for (std::uint64_t i = 0; i < n; ++i) {
    edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), Weight{1}});
  }
  Rng rng(seed, streams::kEmbedding);
  const auto endpoints = sample_embedding(base.graph, layout, rng);
  const Weight heavy(layout.epsilon.inverse());
  for (EdgeId j = 0; j < endpoints.size(); ++j) {
    inst.embedded.push_back(EmbeddedEdge{j, static_cast<EdgeId>(edges.size())});
    edges.push_back(Edge{endpoints[j].first, endpoints[j].second, heavy});
  }
  inst.graph = WeightedGraph(n, std::move(edges), ParallelEdges::allow);
  return inst;
}

CorrespondingCycle corresponding_cycle(const EmbeddedInstance& inst, const Cycle& base_cycle) {
  // Rebuilding against inst.base rejects cycles of some other graph.
  const Cycle x(inst.base, std::vector<NodeId>(base_cycle.nodes().begin(), base_cycle.nodes().end()),
                std::vector<EdgeId>(base_cycle.edges().begin(), base_cycle.edges().end()));
  const std::size_t len = x.size();
  const auto endpoint_in = [&](EdgeId image, NodeId base_node) -> NodeId {
    const Edge& e = inst.graph.edge(image);
    return inst.layout.cluster_of(base_node).contains(e.u) ? e.u : e.v;
  };

  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  std::uint64_t sc_edges = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const NodeId v = x.nodes()[i];
    const EdgeId in_image = inst.image_of(x.edges()[(i + len - 1) % len]);
    const EdgeId out_image = inst.image_of(x.edges()[i]);
    NodeId at = endpoint_in(in_image, v);
    const NodeId leave = endpoint_in(out_image, v);
    // Clusters are contiguous, so the in-cluster arc never wraps around.
    while (at != leave) {
      const NodeId step = at < leave ? at + 1 : at - 1;
      nodes.push_back(at);
      edges.push_back(std::min(at, step));
      ++sc_edges;
      at = step;
    }
    nodes.push_back(leave);
    edges.push_back(out_image);
  }
  CorrespondingCycle out{Cycle(inst.graph, std::move(nodes), std::move(edges)), sc_edges,
                         Weight{0}};
  out.normalized_weight = normalized_weight(out.cycle);
  return out;
}

}  // namespace lightspan
