#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/bounded_dijkstra.hpp"
#include "lightspan/paths.hpp"
#include "lightspan/spanner.hpp"

namespace lightspan {

std::vector<EdgeId> greedy_spanner_edges(const WeightedGraph& g, const Weight& t) {
  if (t < Weight{1}) throw ParameterError("stretch must be at least 1");
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });

  std::vector<std::vector<Arc>> adj(g.node_count());
  detail::DijkstraSearch search(g.node_count());
  const auto adjacency = [&](NodeId v) -> const std::vector<Arc>& { return adj[v]; };
  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    const Edge& edge = g.edge(e);
    detail::SearchLimits limits;
    limits.distance_bound = t * edge.weight;
    if (search.run(adjacency, edge.u, edge.v, limits)) continue;
    adj[edge.u].push_back(Arc{e, edge.v, edge.weight});
    adj[edge.v].push_back(Arc{e, edge.u, edge.weight});
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

namespace {

SpannerResult finish(const WeightedGraph& g, const Weight& t, std::vector<EdgeId> kept) {
  SpannerResult out;
  std::vector<Edge> edges;
  edges.reserve(kept.size());
  for (EdgeId e : kept) edges.push_back(g.edge(e));
  out.spanner = WeightedGraph(g.node_count(), std::move(edges), g.parallel_mode());
  out.stretch = t;
  out.kept = std::move(kept);
  out.lightness_value = out.spanner.total_weight() / mst_weight(g);
  out.girth_certificate = weighted_girth(out.spanner);
  return out;
}

}  // namespace

SpannerResult greedy_spanner(const WeightedGraph& g, const Weight& t) {
  return finish(g, t, greedy_spanner_edges(g, t));
}

StretchCheck verify_stretch(const WeightedGraph& g, const WeightedGraph& h, const Weight& t) {
  const std::vector<EdgeId> matched = match_subgraph(h, g);
  std::vector<char> in_h(g.edge_count(), 0);
  for (EdgeId e : matched) in_h[e] = 1;
  detail::DijkstraSearch search(h.node_count());
  const auto adjacency = [&](NodeId v) { return h.arcs(v); };
  StretchCheck out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_h[e]) continue;
    const Edge& edge = g.edge(e);
    detail::SearchLimits limits;
    limits.distance_bound = t * edge.weight;
    if (search.run(adjacency, edge.u, edge.v, limits)) continue;
    out.passed = false;
    out.violating_edge = e;
    out.detour = search.run(adjacency, edge.u, edge.v, {});
    break;
  }
  return out;
}

double moore_bound(std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  return std::pow(nn, 1.0 + 1.0 / static_cast<double>(k)) + nn;
}

SpannerResult unweighted_greedy_spanner(const WeightedGraph& g, std::size_t k) {
  if (k == 0) throw ParameterError("k must be positive");
  for (const Edge& e : g.edges()) {
    if (e.weight != Weight{1}) throw ParameterError("unweighted greedy needs unit weights");
  }
  const Weight t(2 * static_cast<std::int64_t>(k) - 1);
  SpannerResult out = finish(g, t, greedy_spanner_edges(g, t));
  out.moore_bound = moore_bound(g.node_count(), k);
  return out;
}

double upper_bound_lightness(std::size_t n, std::size_t k, double epsilon,
                             double gamma_estimate) {
  if (n == 0 || k == 0) throw ParameterError("n and k must be positive");
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (!(gamma_estimate > 0)) throw ParameterError("gamma estimate must be positive");
  return gamma_estimate / (epsilon * static_cast<double>(n));
}

}  // namespace lightspan
