#pragma once

// Dijkstra with a reusable workspace, shared by the girth engine and the
// greedy spanner. Adjacency is any callable mapping a node to a range of Arc.

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "lightspan/graph.hpp"

namespace lightspan::detail {

struct SearchLimits {
  std::optional<Weight> weight_cap;
  std::optional<EdgeId> excluded_edge;
  /// Stop once the frontier distance passes this bound; with
  /// inclusive_bound == false a target at exactly the bound is not reported.
  std::optional<Weight> distance_bound;
  bool inclusive_bound = true;
};

class DijkstraSearch {
 public:
  explicit DijkstraSearch(std::size_t node_count)
      : dist_(node_count), pred_edge_(node_count, kNone), settled_(node_count, 0) {}

  void resize(std::size_t node_count) {
    if (node_count > dist_.size()) {
      dist_.resize(node_count);
      pred_edge_.resize(node_count, kNone);
      settled_.resize(node_count, 0);
    }
  }

  template <class Adjacency>
  Distance run(const Adjacency& adjacency, NodeId source, NodeId target,
               const SearchLimits& limits) {
    reset();
    using Entry = std::pair<Weight, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    touch(source, Weight{0}, kNone);
    heap.emplace(Weight{0}, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (settled_[v] || d != *dist_[v]) continue;
      if (limits.distance_bound) {
        if (limits.inclusive_bound ? d > *limits.distance_bound : d >= *limits.distance_bound) {
          return std::nullopt;
        }
      }
      settled_[v] = 1;
      if (v == target) return d;
      for (const Arc& arc : adjacency(v)) {
        if (limits.excluded_edge && arc.edge == *limits.excluded_edge) continue;
        if (limits.weight_cap && arc.weight > *limits.weight_cap) continue;
        if (settled_[arc.to]) continue;
        Weight nd = d + arc.weight;
        if (!dist_[arc.to] || nd < *dist_[arc.to]) {
          touch(arc.to, nd, arc.edge);
          heap.emplace(std::move(nd), arc.to);
        }
      }
    }
    return std::nullopt;
  }

  /// Edge ids from source to target of the last successful run.
  template <class EdgeLookup>
  std::vector<EdgeId> path_to(NodeId source, NodeId target, const EdgeLookup& edge_of) const {
    std::vector<EdgeId> path;
    for (NodeId v = target; v != source;) {
      const EdgeId e = pred_edge_[v];
      path.push_back(e);
      v = edge_of(e).other(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  static constexpr EdgeId kNone = std::numeric_limits<EdgeId>::max();

  void touch(NodeId v, Weight d, EdgeId via) {
    if (!dist_[v]) touched_.push_back(v);
    dist_[v] = std::move(d);
    pred_edge_[v] = via;
  }

  void reset() {
    for (NodeId v : touched_) {
      dist_[v].reset();
      pred_edge_[v] = kNone;
      settled_[v] = 0;
    }
    touched_.clear();
  }

  std::vector<std::optional<Weight>> dist_;
  std::vector<EdgeId> pred_edge_;
  std::vector<char> settled_;
  std::vector<NodeId> touched_;
};

}  // namespace lightspan::detail
