#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lightspan/construction.hpp"

namespace lightspan::harness {

struct MonteCarloPoint {
  Epsilon epsilon;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double probability = 0;
  double wilson_lo = 0;
  double wilson_hi = 0;
  /// epsilon^L / L!, the bound without its constant.
  double shape = 0;
  /// probability / shape.
  double scaled = 0;
  /// light_cycle_probability_bound(L, epsilon).
  double derived_bound = 0;
};

struct MonteCarloReport {
  std::size_t k = 2;
  std::size_t c = 0;
  std::size_t length = 4;
  std::vector<MonteCarloPoint> points;
  /// Log-log slope of probability against epsilon (points with hits only).
  std::optional<double> slope;
  /// Smallest constant C with probability <= C * epsilon^L / L! everywhere.
  double fitted_constant = 0;
  /// 8^L: the constant of light_cycle_probability_bound.
  double derivation_constant = 0;
};

/// Whether the corresponding cycle of one fixed base cycle of length
/// 2k + 2c is light, over `trials` independent embeddings.
MonteCarloPoint estimate_light_probability(std::size_t k, std::size_t c, const Epsilon& eps,
                                           std::uint64_t trials, std::uint64_t seed);

MonteCarloReport run_montecarlo(std::size_t k, std::size_t c, const std::vector<Epsilon>& grid,
                                std::uint64_t trials, std::uint64_t seed, std::size_t threads);

}  // namespace lightspan::harness
