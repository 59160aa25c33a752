#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <set>

#include "lightspan/girth_graphs.hpp"
#include "lightspan/random.hpp"

namespace lightspan {

GirthGraph gen_complete_bipartite(std::size_t side) {
  if (side < 2) throw ParameterError("biclique side must be at least 2");
  std::vector<Edge> edges;
  edges.reserve(side * side);
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      edges.push_back(Edge{static_cast<NodeId>(a), static_cast<NodeId>(side + b), Weight{1}});
    }
  }
  GirthGraph out;
  out.graph = WeightedGraph(2 * side, std::move(edges));
  out.girth_parameter = 1;
  out.degree_band = DegreeBand{side, side};
  std::vector<std::uint8_t> sides(2 * side, 0);
  std::fill(sides.begin() + static_cast<std::ptrdiff_t>(side), sides.end(), 1);
  out.bipartition = std::move(sides);
  out.provenance.generator = "biclique";
  out.provenance.params = {{"side", std::to_string(side)}};
  validate(out);
  return out;
}

namespace {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

/// Representatives of the 1-dimensional subspaces of GF(q)^3: the first
/// nonzero coordinate is 1.
std::vector<std::array<std::uint64_t, 3>> projective_points(std::uint64_t q) {
  std::vector<std::array<std::uint64_t, 3>> points;
  points.push_back({0, 0, 1});
  for (std::uint64_t a = 0; a < q; ++a) points.push_back({0, 1, a});
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) points.push_back({1, a, b});
  }
  return points;
}

}  // namespace

GirthGraph gen_projective_plane_incidence(std::uint64_t q) {
  if (!is_prime(q)) {
    throw ParameterError("projective plane order " + std::to_string(q) + " is not prime");
  }
  if (q > 1000) throw ParameterError("projective plane order is too large");
  const auto points = projective_points(q);
  const std::size_t count = points.size();
  std::vector<Edge> edges;
  edges.reserve((q + 1) * count);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t l = 0; l < count; ++l) {
      std::uint64_t dot = 0;
      for (int i = 0; i < 3; ++i) dot += points[p][i] * points[l][i];
      if (dot % q == 0) {
        edges.push_back(Edge{static_cast<NodeId>(p), static_cast<NodeId>(count + l), Weight{1}});
      }
    }
  }
  GirthGraph out;
  out.graph = WeightedGraph(2 * count, std::move(edges));
  out.girth_parameter = 2;
  out.degree_band = DegreeBand{q + 1, q + 1};
  std::vector<std::uint8_t> sides(2 * count, 0);
  std::fill(sides.begin() + static_cast<std::ptrdiff_t>(count), sides.end(), 1);
  out.bipartition = std::move(sides);
  out.provenance.generator = "pg2";
  out.provenance.params = {{"q", std::to_string(q)}};
  if (out.graph.edge_count() != (q + 1) * count) {
    throw GenerationError("projective plane incidence count mismatch");
  }
  validate(out);
  return out;
}

namespace {

/// Hop distance from s to t up to `limit`; returns limit + 1 if farther.
std::size_t bounded_hops(const std::vector<std::vector<NodeId>>& adj, NodeId s, NodeId t,
                         std::size_t limit, std::vector<std::size_t>& dist,
                         std::vector<NodeId>& touched) {
  constexpr std::size_t kUnseen = ~std::size_t{0};
  for (NodeId v : touched) dist[v] = kUnseen;
  touched.clear();
  std::deque<NodeId> queue{s};
  dist[s] = 0;
  touched.push_back(s);
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    if (x == t) return dist[x];
    if (dist[x] == limit) continue;
    for (NodeId y : adj[x]) {
      if (dist[y] == kUnseen) {
        dist[y] = dist[x] + 1;
        touched.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return limit + 1;
}

}  // namespace

GirthGraph gen_random_high_girth(std::size_t n, std::size_t kappa,
                                 std::optional<double> density_exponent, std::uint64_t seed) {
  if (kappa < 1) throw ParameterError("kappa must be at least 1");
  if (n < 2) throw ParameterError("random high-girth graph needs at least 2 nodes");
  const double exponent = density_exponent.value_or(1.0 + 1.0 / (2.0 * kappa - 1.0));
  const std::size_t max_pairs = n * (n - 1) / 2;
  std::size_t target =
      static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), exponent)));
  target = std::clamp(target, n - 1, max_pairs);

  Rng rng(seed, streams::kRandomGraph);
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  rng.shuffle(std::span<NodeId>(order));

  std::set<std::pair<NodeId, NodeId>> sampled;
  std::vector<std::pair<NodeId, NodeId>> tree;
  for (std::size_t i = 1; i < n; ++i) {
    const NodeId a = order[i];
    const NodeId b = order[rng.below(i)];
    tree.emplace_back(std::min(a, b), std::max(a, b));
    sampled.insert(tree.back());
  }
  std::vector<std::pair<NodeId, NodeId>> extra;
  while (sampled.size() < target) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto b = static_cast<NodeId>(rng.below(n));
    if (a == b) continue;
    if (sampled.emplace(std::min(a, b), std::max(a, b)).second) {
      extra.emplace_back(std::min(a, b), std::max(a, b));
    }
  }

  std::vector<std::vector<NodeId>> adj(n);
  std::vector<std::pair<NodeId, NodeId>> kept = tree;
  for (auto [a, b] : tree) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> dist(n, ~std::size_t{0});
  std::vector<NodeId> touched;
  const std::size_t shortest_allowed_detour = 2 * kappa;  // closes a cycle of length > 2 kappa
  for (auto [a, b] : extra) {
    if (bounded_hops(adj, a, b, shortest_allowed_detour - 1, dist, touched) <
        shortest_allowed_detour) {
      continue;
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
    kept.emplace_back(a, b);
  }
  if (2 * kept.size() < target) {
    throw GenerationError("random alteration kept " + std::to_string(kept.size()) + " of " +
                          std::to_string(target) +
                          " sampled edges (below half); try a lower density exponent");
  }
  std::sort(kept.begin(), kept.end());

  GirthGraph out;
  out.graph = WeightedGraph::unit(n, kept);
  out.girth_parameter = kappa;
  out.provenance.generator = "random-alteration";
  out.provenance.params = {{"n", std::to_string(n)},
                           {"kappa", std::to_string(kappa)},
                           {"density_exponent", std::to_string(exponent)},
                           {"sampled_edges", std::to_string(target)}};
  out.provenance.seed = seed;
  if (auto colouring = two_colouring(out.graph)) out.bipartition = std::move(colouring);
  validate(out);
  return out;
}

}  // namespace lightspan
