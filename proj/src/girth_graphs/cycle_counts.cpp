#include <cmath>
#include <numeric>

#include "lightspan/girth.hpp"
#include "lightspan/girth_graphs.hpp"
#include "lightspan/random.hpp"

namespace lightspan {

std::vector<CycleCountReport> count_cycles_per_edge(const GirthGraph& g, std::size_t c,
                                                    std::size_t sample_edges,
                                                    std::uint64_t seed, double constant) {
  if (sample_edges == 0) throw ParameterError("sample_edges must be positive");
  const std::size_t kappa = g.girth_parameter;
  const std::size_t length = 2 * (kappa + 1) + 2 * c;
  if (length > kDefaultCycleLengthCap) {
    throw BudgetError("cycle length " + std::to_string(length) + " exceeds the enumeration cap");
  }
  const double n = static_cast<double>(g.graph.node_count());
  const double exponent = static_cast<double>(kappa + 2 * c + 1) / static_cast<double>(kappa);
  const double bound = constant * std::pow(n, exponent);

  std::vector<EdgeId> edges(g.graph.edge_count());
  std::iota(edges.begin(), edges.end(), EdgeId{0});
  Rng rng(seed, streams::kEdgeSample);
  const std::size_t take = std::min(sample_edges, edges.size());
  // Partial Fisher-Yates: the first `take` entries are a uniform sample.
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(edges[i], edges[i + rng.below(edges.size() - i)]);
  }

  std::vector<CycleCountReport> reports;
  reports.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    CycleCountReport r;
    r.edge = edges[i];
    r.cycle_length = length;
    r.count = enumerate_cycles_through_edge(g.graph, edges[i], length).size();
    r.bound = bound;
    r.within_bound = static_cast<double>(r.count) <= bound;
    reports.push_back(r);
  }
  return reports;
}

}  // namespace lightspan
