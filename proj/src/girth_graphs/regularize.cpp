#include <algorithm>
#include <numeric>
#include <sstream>

#include "lightspan/girth_graphs.hpp"
#include "lightspan/random.hpp"

namespace lightspan {

std::string RegularizeTrace::describe() const {
  std::ostringstream out;
  out << "edges_in=" << edges_in << " edges_after_bipartition=" << edges_after_bipartition
      << " edges_out=" << edges_out << " d=" << d_num << '/' << d_den
      << " deleted_nodes=" << deleted_nodes << " splits=" << split_count << " sweeps=" << sweeps
      << " bipartition_pass=" << (bipartition_pass_ran ? "yes" : "no");
  return out.str();
}

BipartitionResult random_bipartition(const WeightedGraph& g, std::uint64_t seed) {
  Rng rng(seed, streams::kBipartition);
  BipartitionResult out;
  out.sides.resize(g.node_count());
  for (auto& side : out.sides) side = rng.coin() ? 1 : 0;
  // Flip any node with more neighbours on its own side; every flip grows the
  // cut, and at the fixed point at least half of each node's edges cross.
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::size_t same = 0;
      std::size_t cross = 0;
      for (const Arc& a : g.arcs(v)) {
        if (a.to == v) continue;
        (out.sides[a.to] == out.sides[v] ? same : cross) += 1;
      }
      if (same > cross) {
        out.sides[v] ^= 1;
        changed = true;
      }
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (out.sides[e.u] != out.sides[e.v]) {
      kept.push_back(e);
    } else {
      ++out.deleted_edges;
    }
  }
  out.graph = WeightedGraph(g.node_count(), std::move(kept), g.parallel_mode());
  return out;
}

namespace {

/// Mutable multigraph used while nodes are deleted and split.
struct WorkGraph {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<char> edge_alive;
  std::vector<std::vector<EdgeId>> incident;  // alive edges only
  std::vector<char> node_alive;
  std::vector<NodeId> origin;
  std::vector<std::uint8_t> side;

  std::size_t degree(NodeId v) const { return incident[v].size(); }

  void detach(EdgeId e, NodeId from) {
    auto& list = incident[from];
    list.erase(std::find(list.begin(), list.end(), e));
  }

  void delete_node(NodeId v) {
    for (EdgeId e : incident[v]) {
      edge_alive[e] = 0;
      const auto [a, b] = edges[e];
      detach(e, a == v ? b : a);
    }
    incident[v].clear();
    node_alive[v] = 0;
  }

  /// Moves every second incident edge (adjacency order) to a fresh node.
  NodeId split_node(NodeId v) {
    const auto child = static_cast<NodeId>(incident.size());
    incident.emplace_back();
    node_alive.push_back(1);
    origin.push_back(origin[v]);
    side.push_back(side[v]);
    std::vector<EdgeId> stay;
    for (std::size_t i = 0; i < incident[v].size(); ++i) {
      const EdgeId e = incident[v][i];
      if (i % 2 == 0) {
        stay.push_back(e);
        continue;
      }
      auto& [a, b] = edges[e];
      (a == v ? a : b) = child;
      incident[child].push_back(e);
    }
    incident[v] = std::move(stay);
    return child;
  }
};

}  // namespace

RegularizeResult regularize(const GirthGraph& g, std::uint64_t seed,
                            const RegularizeOptions& options) {
  if (g.graph.edge_count() == 0) throw ParameterError("regularize needs at least one edge");
  RegularizeTrace trace;
  trace.edges_in = g.graph.edge_count();

  WeightedGraph bip = g.graph;
  std::vector<std::uint8_t> sides;
  if (g.bipartition) {
    sides = *g.bipartition;
  } else if (auto colouring = two_colouring(g.graph)) {
    sides = std::move(*colouring);
  } else {
    auto pass = random_bipartition(g.graph, seed);
    bip = std::move(pass.graph);
    sides = std::move(pass.sides);
    trace.bipartition_pass_ran = true;
  }
  trace.edges_after_bipartition = bip.edge_count();

  WorkGraph work;
  const std::size_t n = bip.node_count();
  work.incident.resize(n);
  work.node_alive.assign(n, 1);
  work.origin.resize(n);
  std::iota(work.origin.begin(), work.origin.end(), NodeId{0});
  work.side = sides;
  for (EdgeId e = 0; e < bip.edge_count(); ++e) {
    work.edges.emplace_back(bip.edge(e).u, bip.edge(e).v);
    work.edge_alive.push_back(1);
    work.incident[bip.edge(e).u].push_back(e);
    work.incident[bip.edge(e).v].push_back(e);
  }

  // d = 2 * average degree = 4|E| / |V|, kept as an exact fraction:
  //   deg <= d/4  <=>  deg * |V| <= |E|,   deg >= d  <=>  deg * |V| >= 4|E|.
  const std::uint64_t edges0 = bip.edge_count();
  const std::uint64_t nodes0 = n;
  trace.d_num = 4 * edges0;
  trace.d_den = nodes0;
  const auto too_small = [&](std::size_t deg) { return deg * nodes0 <= edges0; };
  const auto too_large = [&](std::size_t deg) { return deg * nodes0 >= 4 * edges0; };

  std::vector<std::pair<NodeId, NodeId>> work_splits;
  bool changed = true;
  while (changed) {
    changed = false;
    ++trace.sweeps;
    bool deleted = true;
    while (deleted) {
      deleted = false;
      for (NodeId v = 0; v < work.incident.size(); ++v) {
        if (work.node_alive[v] && too_small(work.degree(v))) {
          work.delete_node(v);
          ++trace.deleted_nodes;
          deleted = changed = true;
        }
      }
    }
    for (NodeId v = 0; v < work.incident.size(); ++v) {
      if (work.node_alive[v] && work.degree(v) >= 2 && too_large(work.degree(v))) {
        work_splits.emplace_back(v, work.split_node(v));
        ++trace.split_count;
        changed = true;
      }
    }
  }

  std::vector<NodeId> new_id(work.incident.size(), 0);
  RegularizeResult result;
  std::vector<std::uint8_t> out_sides;
  NodeId next = 0;
  for (NodeId v = 0; v < work.incident.size(); ++v) {
    if (!work.node_alive[v]) continue;
    new_id[v] = next++;
    result.origin.push_back(work.origin[v]);
    out_sides.push_back(work.side[v]);
  }
  std::vector<Edge> out_edges;
  for (EdgeId e = 0; e < work.edges.size(); ++e) {
    if (!work.edge_alive[e]) continue;
    out_edges.push_back(Edge{new_id[work.edges[e].first], new_id[work.edges[e].second], Weight{1}});
  }
  trace.edges_out = out_edges.size();

  if (static_cast<double>(trace.edges_out) <
      options.min_retention * static_cast<double>(trace.edges_in)) {
    throw RegularizationError("regularize kept " + std::to_string(trace.edges_out) + " of " +
                                  std::to_string(trace.edges_in) + " edges (" + trace.describe() +
                                  ")",
                              trace);
  }

  if (4 * edges0 <= nodes0) {
    // d <= 1: a degree-1 node can be neither deleted nor split.
    throw RegularizationError("average degree too small to regularize (" + trace.describe() + ")",
                              trace);
  }

  GirthGraph& out = result.graph;
  out.graph = WeightedGraph(next, std::move(out_edges), g.graph.parallel_mode());
  out.girth_parameter = g.girth_parameter;
  out.bipartition = std::move(out_sides);
  // Integer degrees strictly inside (d/4, d).
  const std::uint64_t lo = edges0 / nodes0 + 1;
  const std::uint64_t hi = (4 * edges0 + nodes0 - 1) / nodes0 - 1;
  out.degree_band = DegreeBand{lo, hi};
  out.provenance = g.provenance;
  out.provenance.seed = seed;
  out.provenance.params.emplace_back("regularized", "true");
  out.provenance.params.emplace_back("d", std::to_string(trace.d_num) + "/" +
                                              std::to_string(trace.d_den));
  for (auto [parent, child] : work_splits) {
    if (work.node_alive[parent] && work.node_alive[child]) {
      out.provenance.splits.emplace_back(new_id[parent], new_id[child]);
    }
  }
  validate(out);
  result.trace = trace;
  return result;
}

}  // namespace lightspan
