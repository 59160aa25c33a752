#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include "lightspan/construction.hpp"
#include "lightspan/harness/config.hpp"
#include "lightspan/harness/montecarlo.hpp"
#include "lightspan/harness/report.hpp"

namespace lightspan::harness {

/// A certified instance lost an edge to the greedy spanner, or some other
/// cross-check disagreed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitGeneration = 4;

int exit_code_for(const std::exception& e);

/// Epsilon for one grid entry: explicit, solved from a size target, or (when
/// neither is given) the fixed point for the base's node count.
Epsilon resolve_epsilon(const ExperimentConfig& cfg, const GirthGraph& base,
                        std::optional<Epsilon> explicit_eps,
                        std::optional<std::uint64_t> n_target);

struct GenerateResult {
  std::filesystem::path out_dir;
  ConstructionOutcome outcome;
  double lightness = 0;
};

/// Writes into out_dir:
///   base.graph, base.json     base graph and provenance
///   instance.graph            H' (all edges)
///   embedded.layout           layout sidecar for H' (nothing pruned)
///   pruned.layout             layout sidecar for H (same graph file)
///   pruned.graph              H with the pruned edges removed
///   summary.json
/// On a certification failure, witness.json is written before rethrowing.
GenerateResult cmd_generate(const ExperimentConfig& cfg);

struct VerifyResult {
  bool passed = false;
  Weight threshold{0};
  GirthCertificate certificate;
  std::string report_json;
};

/// Recomputes the weighted girth of cfg.instance and compares it with
/// (1 + epsilon) 2k. Needs exactly one epsilon.
VerifyResult cmd_verify(const ExperimentConfig& cfg);

struct SweepResult {
  Table rows;
  Json aggregate;
  std::string csv;
  std::string json;
};

/// bases x epsilon grid x seeds; failures are recorded as rows.
SweepResult cmd_sweep(const ExperimentConfig& cfg);

struct MonteCarloResult {
  MonteCarloReport report;
  std::string csv;
  std::string json;
};

MonteCarloResult cmd_montecarlo(const ExperimentConfig& cfg);

struct CompareResult {
  Table rows;
  std::string csv;
  std::string json;
};

/// Greedy at t = (1 + eps)(2k - 1) on each pruned instance (must keep every
/// edge) and at t = 2k - 1 on the base, next to the lightness figures.
CompareResult cmd_compare(const ExperimentConfig& cfg);

}  // namespace lightspan::harness
