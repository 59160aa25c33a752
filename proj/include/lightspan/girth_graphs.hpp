#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightspan/graph.hpp"

namespace lightspan {

/// Node counts at or below this are girth-checked exactly on construction.
inline constexpr std::size_t kGirthCheckNodeLimit = 200;

struct DegreeBand {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  /// Exact unweighted girth when it was computed; std::nullopt when trusted
  /// from the algebraic construction or the graph is acyclic.
  std::optional<std::size_t> certified_girth;
  /// (parent, child) pairs from node splitting, in output node ids.
  std::vector<std::pair<NodeId, NodeId>> splits;
};

/// Unit-weight base graph with a certified girth lower bound:
/// unweighted girth > 2 * girth_parameter.
struct GirthGraph {
  WeightedGraph graph;
  std::size_t girth_parameter = 1;
  std::optional<DegreeBand> degree_band;
  /// Side (0 or 1) per node; a proper 2-colouring when present.
  std::optional<std::vector<std::uint8_t>> bipartition;
  Provenance provenance;
};

/// Checks the GirthGraph invariants; throws GenerationError. Runs the exact
/// girth check only for graphs of at most kGirthCheckNodeLimit nodes.
void validate(GirthGraph& g);

/// Two-colouring by BFS, or std::nullopt when an odd cycle exists.
std::optional<std::vector<std::uint8_t>> two_colouring(const WeightedGraph& g);

GirthGraph gen_complete_bipartite(std::size_t side);

/// Incidence graph of PG(2, q) for prime q: points are nodes
/// [0, q^2+q+1), lines follow.
GirthGraph gen_projective_plane_incidence(std::uint64_t q);

/// Random alteration. Samples about n^density_exponent edges (a random
/// spanning tree plus uniform extra pairs), then drops every sampled non-tree
/// edge that would close a cycle of length <= 2 * kappa with the edges kept
/// before it. Tree edges are never dropped, so the output stays connected.
/// density_exponent defaults to 1 + 1/(2 kappa - 1).
GirthGraph gen_random_high_girth(std::size_t n, std::size_t kappa,
                                 std::optional<double> density_exponent, std::uint64_t seed);

struct BipartitionResult {
  WeightedGraph graph;
  std::vector<std::uint8_t> sides;
  std::size_t deleted_edges = 0;
};

/// Uniform random sides improved by single-node flips until every node has at
/// least half of its edges crossing; edges inside a side are dropped. Keeps
/// at least half of the edges.
BipartitionResult random_bipartition(const WeightedGraph& g, std::uint64_t seed);

struct RegularizeOptions {
  /// Minimum fraction of input edges that must survive.
  double min_retention = 0.25;
};

struct RegularizeTrace {
  std::size_t edges_in = 0;
  std::size_t edges_after_bipartition = 0;
  std::size_t edges_out = 0;
  bool bipartition_pass_ran = false;
  /// Degree threshold d, fixed at loop entry as twice the average degree
  /// (as the fraction d_num / d_den).
  std::uint64_t d_num = 0;
  std::uint64_t d_den = 1;
  std::size_t deleted_nodes = 0;
  std::size_t split_count = 0;
  std::size_t sweeps = 0;

  double d() const { return static_cast<double>(d_num) / static_cast<double>(d_den); }
  std::string describe() const;
};

struct RegularizeResult {
  GirthGraph graph;
  RegularizeTrace trace;
  /// Input node each output node descends from.
  std::vector<NodeId> origin;
};

class RegularizationError : public Error {
 public:
  RegularizationError(const std::string& what, RegularizeTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const RegularizeTrace& trace() const { return trace_; }

 private:
  RegularizeTrace trace_;
};

/// Bipartite, approximately regular version of g: a random bipartition pass
/// (skipped when g is already bipartite), then, with d fixed, nodes of
/// degree <= d/4 are deleted and nodes of degree >= d are split into two
/// nodes taking alternate incident edges, until neither rule applies. New
/// nodes are appended after the surviving originals.
RegularizeResult regularize(const GirthGraph& g, std::uint64_t seed,
                            const RegularizeOptions& options = {});

struct CycleCountReport {
  EdgeId edge = 0;
  std::size_t cycle_length = 0;
  std::size_t count = 0;
  double bound = 0;
  bool within_bound = true;
};

/// Exact number of (2(kappa+1) + 2c)-cycles through each of `sample_edges`
/// uniformly sampled edges, against constant * n^((kappa + 2c + 1) / kappa).
std::vector<CycleCountReport> count_cycles_per_edge(const GirthGraph& g, std::size_t c,
                                                    std::size_t sample_edges,
                                                    std::uint64_t seed, double constant = 1.0);

/// Provenance sidecar as JSON.
std::string provenance_json(const GirthGraph& g);
void save_girth_graph(const std::filesystem::path& graph_path,
                      const std::filesystem::path& provenance_path, const GirthGraph& g);

}  // namespace lightspan
