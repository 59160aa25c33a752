#include "lightspan/harness/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "lightspan/harness/base_spec.hpp"
#include "lightspan/harness/report.hpp"

namespace lightspan::harness {

MonteCarloPoint estimate_light_probability(std::size_t k, std::size_t c, const Epsilon& eps,
                                           std::uint64_t trials, std::uint64_t seed) {
  const std::size_t length = 2 * k + 2 * c;
  const GirthGraph base = gen_cycle(length);
  const CycleLayout layout = build_layout(base, k, eps, seed);
  const auto r = static_cast<std::uint64_t>(eps.inverse());
  // w* = L + sigma / r <= (1 + 1/r) 2k  <=>  L r + sigma <= 2k (r + 1).
  const std::uint64_t budget = 2 * k * (r + 1);
  const std::uint64_t fixed = length * r;

  Rng rng(seed, (r << 8) | streams::kMonteCarlo);
  MonteCarloPoint out;
  out.epsilon = eps;
  out.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto ends = sample_embedding(base.graph, layout, rng);
    // Base edge i runs from node i to node i + 1 (mod L).
    std::uint64_t sigma = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const NodeId leave = ends[i].first;
      const NodeId arrive = ends[(i + length - 1) % length].second;
      sigma += leave > arrive ? leave - arrive : arrive - leave;
    }
    if (fixed + sigma <= budget) ++out.hits;
  }
  const double l = static_cast<double>(length);
  out.probability = trials ? static_cast<double>(out.hits) / static_cast<double>(trials) : 0.0;
  const auto wilson = wilson_interval(out.hits, trials);
  out.wilson_lo = wilson.lo;
  out.wilson_hi = wilson.hi;
  out.shape = std::exp(l * std::log(eps.as_double()) - std::lgamma(l + 1));
  out.scaled = out.probability / out.shape;
  out.derived_bound = light_cycle_probability_bound(length, eps.as_double());
  return out;
}

MonteCarloReport run_montecarlo(std::size_t k, std::size_t c, const std::vector<Epsilon>& grid,
                                std::uint64_t trials, std::uint64_t seed, std::size_t threads) {
  MonteCarloReport report;
  report.k = k;
  report.c = c;
  report.length = 2 * k + 2 * c;
  report.points.resize(grid.size());
  std::vector<std::thread> pool;
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, grid.size()));
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < grid.size(); i += workers) {
          report.points[i] = estimate_light_probability(k, c, grid[i], trials, seed);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : report.points) {
    report.fitted_constant = std::max(report.fitted_constant, p.scaled);
    if (p.hits > 0) {
      xs.push_back(p.epsilon.as_double());
      ys.push_back(p.probability);
    }
  }
  report.slope = log_log_slope(xs, ys);
  report.derivation_constant = std::pow(8.0, static_cast<double>(report.length));
  return report;
}

}  // namespace lightspan::harness
