#include <cassert>
#include <limits>
#include <numeric>

#include "lightspan/construction.hpp"

namespace lightspan {

std::optional<std::size_t> CycleLayout::cluster_at(std::uint64_t cycle_node) const {
  const std::uint64_t block = cluster_size + spacer_size;
  if (block == 0 || cycle_node >= cycle_length) return std::nullopt;
  if (cycle_node % block >= cluster_size) return std::nullopt;
  return static_cast<std::size_t>(cycle_node / block);
}

CycleLayout build_layout(const GirthGraph& base, std::size_t k, const Epsilon& eps,
                         std::uint64_t seed) {
  if (k < 2) throw ParameterError("k must be at least 2");
  const std::size_t n = base.graph.node_count();
  if (n == 0) throw ParameterError("base graph has no nodes");
  CycleLayout layout;
  layout.k = k;
  layout.epsilon = eps;
  const auto inverse = static_cast<std::uint64_t>(eps.inverse());
  layout.cluster_size = k * inverse;
  layout.spacer_size = 3 * k * inverse;
  if (inverse > std::numeric_limits<NodeId>::max() / (4 * k) / n) {
    throw ParameterError("spanning cycle would exceed the node id range");
  }
  layout.cycle_length = 4 * k * inverse * n;
  assert(layout.cycle_length == n * (layout.cluster_size + layout.spacer_size));

  std::vector<std::uint32_t> clusters(n);
  std::iota(clusters.begin(), clusters.end(), std::uint32_t{0});
  Rng rng(seed, streams::kLayout);
  rng.shuffle(std::span<std::uint32_t>(clusters));
  layout.cluster_of_node = std::move(clusters);
  return layout;
}

}  // namespace lightspan
