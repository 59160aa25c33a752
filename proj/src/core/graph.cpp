#include "lightspan/graph.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lightspan {

std::string format_weight(const Weight& w) {
  if (w.denominator() == 1) return std::to_string(w.numerator());
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return out;
}

}  // namespace

Weight parse_weight(std::string_view text) {
  auto sep = text.find_first_of("/ ");
  while (sep != std::string_view::npos && sep == 0) {
    text.remove_prefix(1);
    sep = text.find_first_of("/ ");
  }
  if (sep == std::string_view::npos) return Weight(parse_int(text));
  const std::int64_t den = parse_int(text.substr(sep + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Weight(parse_int(text.substr(0, sep)), den);
}

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges,
                             ParallelEdges parallel)
    : node_count_(node_count), edges_(std::move(edges)), parallel_(parallel) {
  std::vector<std::size_t> degree(node_count_, 0);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw StructuralError("edge " + std::to_string(id) + " has an endpoint outside [0, " +
                            std::to_string(node_count_) + ")");
    }
    if (e.u == e.v) throw StructuralError("edge " + std::to_string(id) + " is a self-loop");
    if (e.weight <= Weight{0}) {
      throw StructuralError("edge " + std::to_string(id) + " has non-positive weight");
    }
    if (parallel_ == ParallelEdges::forbid &&
        !seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw StructuralError("edge " + std::to_string(id) + " duplicates an earlier edge (" +
                            std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(node_count_ + 1, 0);
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  arcs_.resize(offsets_.back(), Arc{0, 0, Weight{0}});
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    arcs_[fill[e.u]++] = Arc{static_cast<EdgeId>(id), e.v, e.weight};
    arcs_[fill[e.v]++] = Arc{static_cast<EdgeId>(id), e.u, e.weight};
  }
}

WeightedGraph WeightedGraph::unit(std::size_t node_count,
                                  std::span<const std::pair<NodeId, NodeId>> pairs,
                                  ParallelEdges parallel) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back(Edge{u, v, Weight{1}});
  return WeightedGraph(node_count, std::move(edges), parallel);
}

Weight WeightedGraph::total_weight() const {
  Weight total{0};
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

bool WeightedGraph::has_uniform_weights() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.weight == edges_.front().weight; });
}

Cycle::Cycle(const WeightedGraph& g, std::vector<NodeId> nodes, std::vector<EdgeId> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t len = edges_.size();
  if (nodes_.size() != len) throw StructuralError("cycle node and edge counts differ");
  const std::size_t min_len = g.allows_parallel() ? 2 : 3;
  if (len < min_len) {
    throw StructuralError("cycle of length " + std::to_string(len) + " is too short");
  }
  std::unordered_set<NodeId> node_set;
  std::unordered_set<EdgeId> edge_set;
  for (std::size_t i = 0; i < len; ++i) {
    if (edges_[i] >= g.edge_count()) throw StructuralError("cycle edge id out of range");
    if (!node_set.insert(nodes_[i]).second) {
      throw StructuralError("cycle visits node " + std::to_string(nodes_[i]) + " twice");
    }
    if (!edge_set.insert(edges_[i]).second) {
      throw StructuralError("cycle repeats edge " + std::to_string(edges_[i]));
    }
    const Edge& e = g.edge(edges_[i]);
    const NodeId a = nodes_[i];
    const NodeId b = nodes_[(i + 1) % len];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) {
      throw StructuralError("cycle edge " + std::to_string(edges_[i]) + " does not join nodes " +
                            std::to_string(a) + " and " + std::to_string(b));
    }
    total_ += e.weight;
    if (e.weight > max_) max_ = e.weight;
  }
}

Cycle Cycle::from_edges(const WeightedGraph& g, std::vector<EdgeId> edges) {
  const std::size_t len = edges.size();
  if (len < 2) throw StructuralError("cycle needs at least two edges");
  for (EdgeId e : edges) {
    if (e >= g.edge_count()) throw StructuralError("cycle edge id out of range");
  }
  const Edge& first = g.edge(edges[0]);
  const Edge& second = g.edge(edges[1]);
  // Start at the endpoint of the first edge that the second edge does not touch.
  NodeId start = first.u;
  if (len > 2 && (first.u == second.u || first.u == second.v)) start = first.v;
  std::vector<NodeId> nodes;
  nodes.reserve(len);
  NodeId at = start;
  for (std::size_t i = 0; i < len; ++i) {
    const Edge& e = g.edge(edges[i]);
    if (e.u != at && e.v != at) {
      throw StructuralError("cycle edges " + std::to_string(edges[i == 0 ? 0 : i - 1]) + " and " +
                            std::to_string(edges[i]) + " are not consecutive");
    }
    nodes.push_back(at);
    at = e.other(at);
  }
  if (at != start) throw StructuralError("edge sequence does not close into a cycle");
  return Cycle(g, std::move(nodes), std::move(edges));
}

Cycle Cycle::canonical() const {
  const std::size_t len = edges_.size();
  auto rotated = [&](bool reflect) {
    std::vector<NodeId> ns(len);
    std::vector<EdgeId> es(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (!reflect) {
        ns[i] = nodes_[i];
        es[i] = edges_[i];
      } else {
        ns[i] = nodes_[(len - i) % len];
        es[i] = edges_[(2 * len - i - 1) % len];
      }
    }
    const auto pivot = static_cast<std::size_t>(
        std::min_element(ns.begin(), ns.end()) - ns.begin());
    std::rotate(ns.begin(), ns.begin() + static_cast<std::ptrdiff_t>(pivot), ns.end());
    std::rotate(es.begin(), es.begin() + static_cast<std::ptrdiff_t>(pivot), es.end());
    Cycle c;
    c.nodes_ = std::move(ns);
    c.edges_ = std::move(es);
    c.total_ = total_;
    c.max_ = max_;
    return c;
  };
  Cycle forward = rotated(false);
  Cycle backward = rotated(true);
  return backward < forward ? backward : forward;
}

}  // namespace lightspan
