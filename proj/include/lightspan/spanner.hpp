#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lightspan/girth.hpp"
#include "lightspan/graph.hpp"

namespace lightspan {

struct SpannerResult {
  WeightedGraph spanner;
  Weight stretch{1};
  /// Input edge id of every spanner edge, in spanner edge order.
  std::vector<EdgeId> kept;
  Weight lightness_value{1};
  GirthCertificate girth_certificate;
  /// n^(1+1/k) + n, set by the unweighted greedy only.
  std::optional<double> moore_bound;

  std::size_t edge_count() const { return spanner.edge_count(); }
};

/// Greedy t-spanner: edges in nondecreasing weight (ties by id), each added
/// iff the current spanner distance between its endpoints exceeds t * w(e).
/// The output has weighted girth > t + 1. Throws ConnectivityError if g is
/// disconnected (lightness is undefined) and ParameterError if t < 1.
SpannerResult greedy_spanner(const WeightedGraph& g, const Weight& t);

/// Keep/drop decision only, without the certificate and lightness work.
std::vector<EdgeId> greedy_spanner_edges(const WeightedGraph& g, const Weight& t);

struct StretchCheck {
  bool passed = true;
  /// Edge of g (not in h) whose endpoints are too far apart in h.
  std::optional<EdgeId> violating_edge;
  Distance detour;
};

/// dist_h(u, v) <= t * w(u, v) for every edge of g missing from h. This is
/// equivalent to the all-pairs condition because every shortest path of g
/// is a chain of edges. Throws SubgraphError if h is not a subgraph of g.
StretchCheck verify_stretch(const WeightedGraph& g, const WeightedGraph& h, const Weight& t);

/// Greedy with t = 2k - 1 on a unit-weight graph; ParameterError otherwise.
SpannerResult unweighted_greedy_spanner(const WeightedGraph& g, std::size_t k);

double moore_bound(std::size_t n, std::size_t k);

/// eps^-1 * gamma_estimate / n.
double upper_bound_lightness(std::size_t n, std::size_t k, double epsilon, double gamma_estimate);

/// Metrics sidecar: stretch, edge count, lightness and certificate as exact
/// fractions.
std::string spanner_metrics_json(const SpannerResult& result);
void save_spanner(const std::filesystem::path& graph_path,
                  const std::filesystem::path& metrics_path, const SpannerResult& result);

}  // namespace lightspan
