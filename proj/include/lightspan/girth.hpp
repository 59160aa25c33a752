#pragma once

#include <optional>
#include <vector>

#include "lightspan/graph.hpp"

namespace lightspan {

/// w(C) / max edge weight of C.
Weight normalized_weight(const Cycle& c);

/// Validates `edge_ids` as a cycle of g first; throws StructuralError.
Weight normalized_weight(const WeightedGraph& g, std::vector<EdgeId> edge_ids);

struct GirthCertificate {
  /// std::nullopt for forests (+infinity).
  std::optional<Weight> value;
  std::optional<Cycle> witness;

  bool exceeds(const Weight& threshold) const { return !value || *value > threshold; }
};

/// Exact weighted girth. For every edge e, a shortest detour between its
/// endpoints that avoids e and uses only edges no heavier than e closes the
/// lightest cycle in which e is a maximum-weight edge; the minimum over all
/// edges is the weighted girth. Edges are scanned heaviest first so that the
/// running minimum bounds the remaining searches early.
GirthCertificate weighted_girth(const WeightedGraph& g);

/// Like weighted_girth but stops at the first cycle whose normalized weight
/// is <= threshold; the returned certificate then holds that cycle (not
/// necessarily the minimum). When no such cycle exists the result is exact.
GirthCertificate weighted_girth_above(const WeightedGraph& g, const Weight& threshold);

/// Shortest cycle length ignoring weights; std::nullopt for forests.
std::optional<std::size_t> unweighted_girth(const WeightedGraph& g);

inline constexpr std::size_t kDefaultCycleLengthCap = 12;

/// Every node-simple cycle with exactly `length` edges through edge e, in
/// canonical form, sorted. Throws BudgetError when length > cap.
std::vector<Cycle> enumerate_cycles_through_edge(const WeightedGraph& g, EdgeId e,
                                                 std::size_t length,
                                                 std::size_t cap = kDefaultCycleLengthCap);

/// Every cycle of exactly `length` edges, each once.
std::vector<Cycle> enumerate_cycles(const WeightedGraph& g, std::size_t length,
                                    std::size_t cap = kDefaultCycleLengthCap);

}  // namespace lightspan
