#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lightspan/errors.hpp"
#include "lightspan/weight.hpp"

namespace lightspan {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight weight{1};

  NodeId other(NodeId x) const { return x == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

/// One entry of a node's adjacency list.
struct Arc {
  EdgeId edge;
  NodeId to;
  Weight weight;
};

enum class ParallelEdges { forbid, allow };

/// Undirected graph with strictly positive exact weights. Immutable once
/// built; edge ids are positions in the edge list.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges,
                ParallelEdges parallel = ParallelEdges::forbid);

  /// All weights 1.
  static WeightedGraph unit(std::size_t node_count,
                            std::span<const std::pair<NodeId, NodeId>> pairs,
                            ParallelEdges parallel = ParallelEdges::forbid);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool allows_parallel() const { return parallel_ == ParallelEdges::allow; }
  ParallelEdges parallel_mode() const { return parallel_; }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> arcs(NodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  Weight total_weight() const;
  bool has_uniform_weights() const;

  bool operator==(const WeightedGraph& other) const {
    return node_count_ == other.node_count_ && edges_ == other.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  ParallelEdges parallel_ = ParallelEdges::forbid;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
};

/// A node-simple closed walk. edges()[i] joins nodes()[i] and
/// nodes()[(i + 1) % size()].
class Cycle {
 public:
  /// Validates against g; throws StructuralError.
  Cycle(const WeightedGraph& g, std::vector<NodeId> nodes, std::vector<EdgeId> edges);

  /// Infers the node sequence from consecutive edges.
  static Cycle from_edges(const WeightedGraph& g, std::vector<EdgeId> edges);

  std::span<const NodeId> nodes() const { return nodes_; }
  std::span<const EdgeId> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  const Weight& total_weight() const { return total_; }
  const Weight& max_weight() const { return max_; }

  /// Rotation/reflection with the lexicographically smallest (nodes, edges).
  Cycle canonical() const;

  bool operator==(const Cycle& o) const { return nodes_ == o.nodes_ && edges_ == o.edges_; }
  bool operator<(const Cycle& o) const {
    return nodes_ != o.nodes_ ? nodes_ < o.nodes_ : edges_ < o.edges_;
  }

 private:
  Cycle() = default;

  std::vector<NodeId> nodes_;
  std::vector<EdgeId> edges_;
  Weight total_{0};
  Weight max_{0};
};

}  // namespace lightspan
