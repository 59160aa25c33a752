#pragma once

#include <optional>
#include <vector>

#include "lightspan/graph.hpp"

namespace lightspan {

struct PathQuery {
  /// Only edges of weight <= weight_cap participate.
  std::optional<Weight> weight_cap;
  std::optional<EdgeId> excluded_edge;
};

/// Exact s-t distance; std::nullopt when t is unreachable.
Distance shortest_path_distance(const WeightedGraph& g, NodeId s, NodeId t,
                                const PathQuery& query = {});

/// Edges of a minimum spanning forest, Kruskal order (weight, then id).
std::vector<EdgeId> minimum_spanning_forest(const WeightedGraph& g);

/// Throws ConnectivityError naming a node outside node 0's component.
Weight mst_weight(const WeightedGraph& g);

/// Multiset containment on (min endpoint, max endpoint, weight).
/// Returns, for each edge of `sub`, the matched edge id of `host`; throws
/// SubgraphError when `sub` has an edge the host lacks.
std::vector<EdgeId> match_subgraph(const WeightedGraph& sub, const WeightedGraph& host);

/// w(h) / w(mst(g)).
Weight lightness(const WeightedGraph& h, const WeightedGraph& g);

inline Weight lightness(const WeightedGraph& g) { return lightness(g, g); }

bool is_connected(const WeightedGraph& g);

}  // namespace lightspan
