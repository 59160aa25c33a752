#include "lightspan/paths.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "bounded_dijkstra.hpp"

namespace lightspan {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

using EdgeKey = std::tuple<NodeId, NodeId, Weight>;

EdgeKey key_of(const Edge& e) { return {std::min(e.u, e.v), std::max(e.u, e.v), e.weight}; }

}  // namespace

Distance shortest_path_distance(const WeightedGraph& g, NodeId s, NodeId t,
                                const PathQuery& query) {
  if (s >= g.node_count() || t >= g.node_count()) {
    throw StructuralError("shortest_path_distance: node id out of range");
  }
  detail::DijkstraSearch search(g.node_count());
  detail::SearchLimits limits;
  limits.weight_cap = query.weight_cap;
  limits.excluded_edge = query.excluded_edge;
  return search.run([&](NodeId v) { return g.arcs(v); }, s, t, limits);
}

std::vector<EdgeId> minimum_spanning_forest(const WeightedGraph& g) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });
  DisjointSets sets(g.node_count());
  std::vector<EdgeId> forest;
  for (EdgeId e : order) {
    if (sets.unite(g.edge(e).u, g.edge(e).v)) forest.push_back(e);
  }
  return forest;
}

bool is_connected(const WeightedGraph& g) {
  if (g.node_count() <= 1) return true;
  return minimum_spanning_forest(g).size() + 1 == g.node_count();
}

Weight mst_weight(const WeightedGraph& g) {
  const auto forest = minimum_spanning_forest(g);
  if (g.node_count() > 1 && forest.size() + 1 != g.node_count()) {
    DisjointSets sets(g.node_count());
    for (EdgeId e : forest) sets.unite(g.edge(e).u, g.edge(e).v);
    for (std::size_t v = 1; v < g.node_count(); ++v) {
      if (sets.find(v) != sets.find(0)) {
        throw ConnectivityError("graph is disconnected: node " + std::to_string(v) +
                                    " is not reachable from node 0",
                                v);
      }
    }
  }
  Weight total{0};
  for (EdgeId e : forest) total += g.edge(e).weight;
  return total;
}

std::vector<EdgeId> match_subgraph(const WeightedGraph& sub, const WeightedGraph& host) {
  if (sub.node_count() > host.node_count()) {
    throw SubgraphError("subgraph has more nodes than its host");
  }
  std::map<EdgeKey, std::vector<EdgeId>> available;
  for (EdgeId e = host.edge_count(); e-- > 0;) available[key_of(host.edge(e))].push_back(e);
  std::vector<EdgeId> matched;
  matched.reserve(sub.edge_count());
  for (EdgeId e = 0; e < sub.edge_count(); ++e) {
    auto it = available.find(key_of(sub.edge(e)));
    if (it == available.end() || it->second.empty()) {
      const Edge& bad = sub.edge(e);
      throw SubgraphError("edge " + std::to_string(e) + " (" + std::to_string(bad.u) + ", " +
                          std::to_string(bad.v) + ", " + format_weight(bad.weight) +
                          ") is absent from the host graph");
    }
    matched.push_back(it->second.back());
    it->second.pop_back();
  }
  return matched;
}

Weight lightness(const WeightedGraph& h, const WeightedGraph& g) {
  if (&h != &g) match_subgraph(h, g);
  const Weight mst = mst_weight(g);
  if (mst == Weight{0}) throw ParameterError("lightness is undefined for a graph with an empty MST");
  return h.total_weight() / mst;
}

}  // namespace lightspan
