#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightspan/girth.hpp"
#include "lightspan/girth_graphs.hpp"
#include "lightspan/graph.hpp"
#include "lightspan/random.hpp"

namespace lightspan {

/// Stretch slack epsilon in (0, 1) with an integral reciprocal.
class Epsilon {
 public:
  Epsilon() = default;
  static Epsilon from_inverse(std::int64_t inverse);
  /// "1/8" or "0.125"; the reciprocal must be an integer >= 2.
  static Epsilon parse(std::string_view text);

  std::int64_t inverse() const { return inverse_; }
  Weight value() const { return Weight(1, inverse_); }
  double as_double() const { return 1.0 / static_cast<double>(inverse_); }
  std::string to_string() const { return "1/" + std::to_string(inverse_); }

  bool operator==(const Epsilon&) const = default;

 private:
  explicit Epsilon(std::int64_t inverse) : inverse_(inverse) {}
  std::int64_t inverse_ = 2;
};

struct ConstructionKnobs {
  /// Implicit constant in the epsilon setting.
  double epsilon_constant = 1.0;
  /// Per-edge expected kill budget for c = 0; the budget for c is
  /// kill_budget^(c+1).
  double kill_budget = 0.25;
};

struct ConstructionParams {
  std::size_t k = 2;
  Epsilon epsilon;
  std::uint64_t seed = 0;
  ConstructionKnobs knobs;
};

/// Throws ParameterError unless k >= 2, the base is bipartite with unit
/// weights, and its certified girth exceeds 2(k - 1).
void check_construction_params(const GirthGraph& base, const ConstructionParams& params);

// --- parameter algebra ---------------------------------------------------

/// epsilon for a spanning cycle of n_target nodes, rounded so the reciprocal
/// is an integer (reciprocal rounded up). For c = 0 this is
/// constant * k * N^(-1/(2k-1)); for c >= 1 the general form
/// constant * k^((k-1)(2k+2c)/(2k^2+2kc-k)) * N^(-(k+2c)/(2k^2+2kc-k)).
Epsilon solve_epsilon(std::uint64_t n_target, std::size_t k, std::size_t c, double constant);

/// Self-consistent c = 0 setting when the base graph (n nodes) is fixed:
/// the smallest integer r >= 2 with 1/r <= constant * k * (4 k r n)^(-1/(2k-1)).
Epsilon solve_epsilon_for_base_size(std::size_t n, std::size_t k, double constant);

struct SizePlan {
  Epsilon epsilon;
  std::size_t base_nodes = 0;
  std::uint64_t cycle_length = 0;
};

/// epsilon from N_target, then n = floor(epsilon N / 4k), then N = 4k n / epsilon.
SizePlan plan_from_target(std::uint64_t n_target, std::size_t k, double constant);

/// floor(k * epsilon): the largest c whose (2k+2c)-cycles can still be light.
std::size_t max_light_excess(std::size_t k, const Epsilon& eps);

/// epsilon^(1/(k-1)) * N^(1/(k-1)) / k.
double predicted_lightness(double cycle_length, std::size_t k, double epsilon);

/// constant * n^((k+2c)/(k-1)) * (constant * epsilon)^(2k+2c) / (2k+2c)!.
double expected_kill_bound(std::size_t k, std::size_t c, double n, double epsilon,
                           double constant);

/// Sum over i = 0..floor(k epsilon) of 4^-(i+1).
double geometric_kill_sum(std::size_t k, const Epsilon& eps);

/// Per-cycle probability bound (8 epsilon)^L / L! for a base cycle of
/// length L = 2k + 2c, with the constants made explicit: at most
/// (4k)^L / L! splits of the in-cluster steps, each realised with
/// probability at most (2 / (k / epsilon))^L.
double light_cycle_probability_bound(std::size_t length, double epsilon);

// --- layout --------------------------------------------------------------

struct Interval {
  std::uint64_t begin = 0;
  std::uint64_t length = 0;

  std::uint64_t end() const { return begin + length; }
  bool contains(std::uint64_t x) const { return x >= begin && x < end(); }
  bool operator==(const Interval&) const = default;
};

/// Spanning cycle on N = 4 k n / epsilon nodes cut into n clusters of
/// k / epsilon nodes, each followed by a spacer of 3 k / epsilon nodes.
struct CycleLayout {
  std::size_t k = 2;
  Epsilon epsilon;
  std::uint64_t cycle_length = 0;
  std::uint64_t cluster_size = 0;
  std::uint64_t spacer_size = 0;
  /// Cluster index assigned to each base node (a bijection).
  std::vector<std::uint32_t> cluster_of_node;

  std::size_t cluster_count() const { return cluster_of_node.size(); }
  Interval cluster(std::size_t index) const {
    return {index * (cluster_size + spacer_size), cluster_size};
  }
  Interval spacer(std::size_t index) const {
    return {index * (cluster_size + spacer_size) + cluster_size, spacer_size};
  }
  Interval cluster_of(NodeId base_node) const { return cluster(cluster_of_node.at(base_node)); }
  /// Cluster containing a spanning-cycle node, or std::nullopt inside a spacer.
  std::optional<std::size_t> cluster_at(std::uint64_t cycle_node) const;

  bool operator==(const CycleLayout&) const = default;
};

CycleLayout build_layout(const GirthGraph& base, std::size_t k, const Epsilon& eps,
                         std::uint64_t seed);

// --- embedding -----------------------------------------------------------

struct EmbeddedEdge {
  EdgeId base_edge = 0;
  EdgeId graph_edge = 0;
  bool operator==(const EmbeddedEdge&) const = default;
};

/// H' (before pruning) or H (with `pruned` filled in). Spanning-cycle edges
/// are graph edges [0, N): edge i joins i and (i + 1) mod N. Embedded edges
/// follow, each of weight 1/epsilon.
struct EmbeddedInstance {
  WeightedGraph base;
  WeightedGraph graph;
  CycleLayout layout;
  std::vector<EmbeddedEdge> embedded;
  /// Deleted embedded edges (graph edge ids), sorted.
  std::vector<EdgeId> pruned;

  bool is_sc_edge(EdgeId e) const { return e < layout.cycle_length; }
  /// (1 + epsilon) * 2k.
  Weight girth_threshold() const;
  EdgeId image_of(EdgeId base_edge) const;

  struct Materialized {
    WeightedGraph graph;
    /// Instance graph edge id for every edge of `graph`.
    std::vector<EdgeId> source_edge;
  };
  /// H with the pruned edges removed; surviving edges keep their order.
  Materialized materialize() const;

  bool operator==(const EmbeddedInstance&) const = default;
};

/// Endpoint pair (node of X_u, node of X_v) for each base edge (u, v),
/// uniform and independent.
std::vector<std::pair<NodeId, NodeId>> sample_embedding(const WeightedGraph& base,
                                                        const CycleLayout& layout, Rng& rng);

EmbeddedInstance embed_edges(const GirthGraph& base, const CycleLayout& layout,
                             std::uint64_t seed);

struct CorrespondingCycle {
  Cycle cycle;
  /// Spanning-cycle edges used inside clusters.
  std::uint64_t sc_edge_count = 0;
  Weight normalized_weight{0};
};

/// Images of the base cycle's edges joined inside each cluster by the
/// in-cluster path. Throws StructuralError if `base_cycle` is not a cycle of
/// inst.base.
CorrespondingCycle corresponding_cycle(const EmbeddedInstance& inst, const Cycle& base_cycle);

// --- pruning -------------------------------------------------------------

class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, Cycle witness, Weight value)
      : Error(what), witness_(std::move(witness)), value_(value) {}
  /// In instance (H') edge ids.
  const Cycle& witness() const { return witness_; }
  const Weight& value() const { return value_; }

 private:
  Cycle witness_;
  Weight value_;
};

struct PruneReport {
  std::vector<std::size_t> lengths_examined;
  std::size_t base_cycles_examined = 0;
  std::size_t light_cycles = 0;
  /// Parallel embedded pairs removed by the certificate pass.
  std::size_t parallel_pairs_removed = 0;
  GirthCertificate certificate;
};

struct PruneResult {
  EmbeddedInstance instance;
  PruneReport report;
};

/// Deletes the embedded edges of every base cycle of length
/// 2k, 2k + 2, ..., 2k + 2 floor(k epsilon) whose corresponding cycle has
/// normalized weight <= (1 + epsilon) 2k, then certifies the weighted girth
/// of the result exceeds that threshold. A light two-cycle of parallel
/// embedded edges is removed by the certificate pass; any other light cycle
/// raises CertificationError.
PruneResult prune_light_cycles(const EmbeddedInstance& inst);

/// Fraction of embedded edges not pruned. Throws ParameterError if there are
/// no embedded edges.
double surviving_fraction(const EmbeddedInstance& inst);

struct ConstructionOutcome {
  EmbeddedInstance embedded;
  EmbeddedInstance pruned;
  PruneReport report;
};

/// Layout, embedding and pruning in one go.
ConstructionOutcome build_instance(const GirthGraph& base, const ConstructionParams& params);

struct LightCycle {
  Cycle cycle;
  Weight normalized_weight{0};
  std::size_t non_sc_edges = 0;
};

/// Exhaustive scan of the instance graph for cycles with normalized weight
/// <= threshold (pruned edges excluded). Exponential; small instances only.
std::vector<LightCycle> scan_light_cycles(const EmbeddedInstance& inst, const Weight& threshold);

// --- serialization -------------------------------------------------------

/// Line-oriented layout sidecar; see README for the format.
void write_layout(std::ostream& out, const EmbeddedInstance& inst);
std::string layout_text(const EmbeddedInstance& inst);
EmbeddedInstance read_instance(std::istream& graph_in, std::istream& layout_in);

void save_instance(const std::filesystem::path& graph_path,
                   const std::filesystem::path& layout_path, const EmbeddedInstance& inst);
EmbeddedInstance load_instance(const std::filesystem::path& graph_path,
                               const std::filesystem::path& layout_path);

}  // namespace lightspan
