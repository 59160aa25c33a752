#include "lightspan/girth.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "bounded_dijkstra.hpp"

namespace lightspan {

Weight normalized_weight(const Cycle& c) { return c.total_weight() / c.max_weight(); }

Weight normalized_weight(const WeightedGraph& g, std::vector<EdgeId> edge_ids) {
  return normalized_weight(Cycle::from_edges(g, std::move(edge_ids)));
}

namespace {

GirthCertificate scan_girth(const WeightedGraph& g, const std::optional<Weight>& stop_at) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight > g.edge(b).weight; });

  detail::DijkstraSearch search(g.node_count());
  const auto adjacency = [&](NodeId v) { return g.arcs(v); };
  const auto edge_of = [&](EdgeId e) -> const Edge& { return g.edge(e); };

  GirthCertificate cert;
  for (EdgeId e : order) {
    const Edge& edge = g.edge(e);
    detail::SearchLimits limits;
    limits.weight_cap = edge.weight;
    limits.excluded_edge = e;
    if (cert.value) {
      // Only a strictly shorter detour can improve the minimum.
      limits.distance_bound = (*cert.value - 1) * edge.weight;
      limits.inclusive_bound = false;
    }
    const Distance detour = search.run(adjacency, edge.u, edge.v, limits);
    if (!detour) continue;
    const Weight candidate = (*detour + edge.weight) / edge.weight;
    if (cert.value && !(candidate < *cert.value)) continue;

    std::vector<EdgeId> cycle_edges = search.path_to(edge.u, edge.v, edge_of);
    std::vector<NodeId> cycle_nodes;
    cycle_nodes.reserve(cycle_edges.size() + 1);
    NodeId at = edge.u;
    for (EdgeId p : cycle_edges) {
      cycle_nodes.push_back(at);
      at = g.edge(p).other(at);
    }
    cycle_nodes.push_back(at);
    cycle_edges.push_back(e);
    cert.value = candidate;
    cert.witness = Cycle(g, std::move(cycle_nodes), std::move(cycle_edges));
    if (stop_at && candidate <= *stop_at) break;
  }
  return cert;
}

}  // namespace

GirthCertificate weighted_girth(const WeightedGraph& g) { return scan_girth(g, std::nullopt); }

GirthCertificate weighted_girth_above(const WeightedGraph& g, const Weight& threshold) {
  return scan_girth(g, threshold);
}

std::optional<std::size_t> unweighted_girth(const WeightedGraph& g) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(g.node_count(), kUnseen);
  std::vector<EdgeId> parent_edge(g.node_count(), kNoEdge);
  std::vector<NodeId> visited;
  for (NodeId root = 0; root < g.node_count(); ++root) {
    for (NodeId v : visited) {
      dist[v] = kUnseen;
      parent_edge[v] = kNoEdge;
    }
    visited.clear();
    std::deque<NodeId> queue{root};
    dist[root] = 0;
    visited.push_back(root);
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop_front();
      if (best != kUnseen && 2 * dist[x] + 1 >= best) break;
      for (const Arc& arc : g.arcs(x)) {
        if (arc.edge == parent_edge[x]) continue;
        if (dist[arc.to] == kUnseen) {
          dist[arc.to] = dist[x] + 1;
          parent_edge[arc.to] = arc.edge;
          visited.push_back(arc.to);
          queue.push_back(arc.to);
        } else {
          best = std::min(best, dist[x] + dist[arc.to] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

namespace {

class CycleWalker {
 public:
  CycleWalker(const WeightedGraph& g, EdgeId through, std::size_t length)
      : g_(g), through_(through), length_(length), on_path_(g.node_count(), 0) {
    const Edge& e = g.edge(through);
    start_ = e.u;
    // Hop distance back to the start bounds how far a partial path may wander.
    hops_to_start_.assign(g.node_count(), std::numeric_limits<std::size_t>::max());
    std::deque<NodeId> queue{start_};
    hops_to_start_[start_] = 0;
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (const Arc& arc : g.arcs(x)) {
        if (hops_to_start_[arc.to] == std::numeric_limits<std::size_t>::max()) {
          hops_to_start_[arc.to] = hops_to_start_[x] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    nodes_ = {e.u, e.v};
    edges_ = {through};
    on_path_[e.u] = 1;
    on_path_[e.v] = 1;
  }

  std::vector<Cycle> run() {
    extend(g_.edge(through_).v);
    return std::move(found_);
  }

 private:
  void extend(NodeId at) {
    const std::size_t used = edges_.size();
    for (const Arc& arc : g_.arcs(at)) {
      if (arc.edge == through_) continue;
      if (used + 1 == length_) {
        if (arc.to != start_) continue;
        edges_.push_back(arc.edge);
        found_.push_back(Cycle(g_, nodes_, edges_).canonical());
        edges_.pop_back();
        continue;
      }
      if (on_path_[arc.to]) continue;
      if (hops_to_start_[arc.to] > length_ - used - 1) continue;
      on_path_[arc.to] = 1;
      nodes_.push_back(arc.to);
      edges_.push_back(arc.edge);
      extend(arc.to);
      edges_.pop_back();
      nodes_.pop_back();
      on_path_[arc.to] = 0;
    }
  }

  const WeightedGraph& g_;
  EdgeId through_;
  std::size_t length_;
  NodeId start_ = 0;
  std::vector<char> on_path_;
  std::vector<std::size_t> hops_to_start_;
  std::vector<NodeId> nodes_;
  std::vector<EdgeId> edges_;
  std::vector<Cycle> found_;
};

}  // namespace

std::vector<Cycle> enumerate_cycles_through_edge(const WeightedGraph& g, EdgeId e,
                                                 std::size_t length, std::size_t cap) {
  if (length > cap) {
    throw BudgetError("cycle length " + std::to_string(length) + " exceeds the enumeration cap " +
                      std::to_string(cap));
  }
  if (e >= g.edge_count()) throw StructuralError("edge id out of range");
  const std::size_t min_len = g.allows_parallel() ? 2 : 3;
  if (length < min_len) return {};
  std::vector<Cycle> cycles = CycleWalker(g, e, length).run();
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  return cycles;
}

std::vector<Cycle> enumerate_cycles(const WeightedGraph& g, std::size_t length, std::size_t cap) {
  std::vector<Cycle> all;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (Cycle& c : enumerate_cycles_through_edge(g, e, length, cap)) {
      if (*std::min_element(c.edges().begin(), c.edges().end()) == e) all.push_back(std::move(c));
    }
  }
  return all;
}

}  // namespace lightspan
