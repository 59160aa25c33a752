#include "lightspan/harness/commands.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "lightspan/graph_io.hpp"
#include "lightspan/harness/base_spec.hpp"
#include "lightspan/paths.hpp"
#include "lightspan/spanner.hpp"

namespace lightspan::harness {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const CertificationError*>(&e)) return kExitCertification;
  if (dynamic_cast<const InvariantError*>(&e)) return kExitCertification;
  if (dynamic_cast<const GenerationError*>(&e)) return kExitGeneration;
  if (dynamic_cast<const ParameterError*>(&e)) return kExitConfig;
  return kExitFailure;
}

Epsilon resolve_epsilon(const ExperimentConfig& cfg, const GirthGraph& base,
                        std::optional<Epsilon> explicit_eps,
                        std::optional<std::uint64_t> n_target) {
  if (explicit_eps) return *explicit_eps;
  if (n_target) return solve_epsilon(*n_target, cfg.k, 0, cfg.knobs.epsilon_constant);
  return solve_epsilon_for_base_size(base.graph.node_count(), cfg.k, cfg.knobs.epsilon_constant);
}

namespace {

std::filesystem::path out_dir_of(const ExperimentConfig& cfg) {
  return cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
}

struct GridPoint {
  std::string base;
  std::optional<Epsilon> eps;
  std::optional<std::uint64_t> n_target;
};

std::vector<GridPoint> grid_of(const ExperimentConfig& cfg) {
  if (cfg.bases.empty()) throw ConfigError("config key 'base' is required");
  for (const auto& b : cfg.bases) parse_base_spec(b);
  std::vector<GridPoint> grid;
  for (const auto& b : cfg.bases) {
    if (!cfg.epsilons.empty()) {
      for (const auto& e : cfg.epsilons) grid.push_back({b, e, std::nullopt});
    } else if (!cfg.n_targets.empty()) {
      for (auto n : cfg.n_targets) grid.push_back({b, std::nullopt, n});
    } else {
      grid.push_back({b, std::nullopt, std::nullopt});
    }
  }
  return grid;
}

/// Runs task(i) for i in [0, count) on `threads` workers; results land by
/// index so output order never depends on scheduling.
template <class Result, class Task>
std::vector<Result> run_pool(std::size_t count, std::size_t threads, const Task& task) {
  std::vector<Result> results(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) results[i] = task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

Json cycle_json(const WeightedGraph& g, const Cycle& c) {
  Json edges = Json::array();
  for (EdgeId e : c.edges()) {
    const Edge& edge = g.edge(e);
    edges.push_back({{"id", e}, {"u", edge.u}, {"v", edge.v}, {"weight", format_weight(edge.weight)}});
  }
  return edges;
}

struct Built {
  GirthGraph base;
  ConstructionOutcome outcome;
  EmbeddedInstance::Materialized h;
  Weight lightness{0};
};

Built build(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed) {
  Built out;
  out.base = make_base(parse_base_spec(point.base), seed);
  ConstructionParams params;
  params.k = cfg.k;
  params.seed = seed;
  params.knobs = cfg.knobs;
  params.epsilon = resolve_epsilon(cfg, out.base, point.eps, point.n_target);
  out.outcome = build_instance(out.base, params);
  out.h = out.outcome.pruned.materialize();
  out.lightness = lightness(out.h.graph);
  return out;
}

double predicted_for(const EmbeddedInstance& inst) {
  return predicted_lightness(static_cast<double>(inst.layout.cycle_length), inst.layout.k,
                             inst.layout.epsilon.as_double());
}

double upper_for(const EmbeddedInstance& inst) {
  const std::size_t n = inst.graph.node_count();
  return upper_bound_lightness(n, inst.layout.k, inst.layout.epsilon.as_double(),
                               moore_bound(n, inst.layout.k));
}

std::string error_code(const std::exception& e) {
  if (dynamic_cast<const CertificationError*>(&e)) return "certification";
  if (dynamic_cast<const GenerationError*>(&e)) return "generation";
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e)) {
    return "parameter";
  }
  return "error";
}

void write_outputs(const ExperimentConfig& cfg, const std::string& stem, const std::string& csv,
                   const std::string& json) {
  const auto dir = out_dir_of(cfg);
  std::filesystem::create_directories(dir);
  if (cfg.wants_csv()) write_file(dir / (stem + ".csv"), csv);
  if (cfg.wants_json()) write_file(dir / (stem + ".json"), json);
}

}  // namespace

GenerateResult cmd_generate(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto grid = grid_of(cfg);
  if (grid.size() != 1) {
    throw ConfigError("generate needs exactly one base and at most one epsilon or n_target");
  }
  if (cfg.seeds.size() != 1) throw ConfigError("generate needs exactly one seed");
  const std::uint64_t seed = cfg.seeds.front();
  const auto dir = out_dir_of(cfg);

  GirthGraph base = make_base(parse_base_spec(grid[0].base), seed);
  ConstructionParams params;
  params.k = cfg.k;
  params.seed = seed;
  params.knobs = cfg.knobs;
  params.epsilon = resolve_epsilon(cfg, base, grid[0].eps, grid[0].n_target);
  check_construction_params(base, params);
  const CycleLayout layout = build_layout(base, params.k, params.epsilon, seed);
  EmbeddedInstance embedded = embed_edges(base, layout, seed);

  GenerateResult result;
  result.out_dir = dir;
  try {
    PruneResult pruned = prune_light_cycles(embedded);
    result.outcome = {std::move(embedded), std::move(pruned.instance), std::move(pruned.report)};
  } catch (const CertificationError& e) {
    std::filesystem::create_directories(dir);
    Json doc;
    doc["error"] = e.what();
    doc["normalized_weight"] = format_weight(e.value());
    doc["witness"] = cycle_json(embedded.graph, e.witness());
    write_file(dir / "witness.json", doc.dump(2) + "\n");
    throw;
  }
  const EmbeddedInstance& h = result.outcome.pruned;
  const auto mat = h.materialize();
  const Weight light = lightness(mat.graph);
  result.lightness = to_double(light);

  std::filesystem::create_directories(dir);
  save_girth_graph(dir / "base.graph", dir / "base.json", base);
  save_graph(dir / "instance.graph", h.graph);
  write_file(dir / "embedded.layout", layout_text(result.outcome.embedded));
  write_file(dir / "pruned.layout", layout_text(h));
  save_graph(dir / "pruned.graph", mat.graph);

  const PruneReport& rep = result.outcome.report;
  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["command"] = "generate";
  summary["base"] = grid[0].base;
  summary["seed"] = seed;
  summary["k"] = cfg.k;
  summary["epsilon"] = params.epsilon.to_string();
  summary["base_nodes"] = base.graph.node_count();
  summary["base_edges"] = base.graph.edge_count();
  summary["cycle_length"] = h.layout.cycle_length;
  summary["pruned_edges"] = h.pruned.size();
  summary["surviving_fraction"] =
      h.embedded.empty() ? Json(nullptr) : Json(surviving_fraction(h));
  summary["lengths_examined"] = rep.lengths_examined;
  summary["base_cycles_examined"] = rep.base_cycles_examined;
  summary["light_cycles"] = rep.light_cycles;
  summary["parallel_pairs_removed"] = rep.parallel_pairs_removed;
  summary["girth_threshold"] = format_weight(h.girth_threshold());
  summary["weighted_girth"] =
      rep.certificate.value ? Json(format_weight(*rep.certificate.value)) : Json(nullptr);
  summary["lightness"] = format_weight(light);
  summary["lightness_approx"] = result.lightness;
  summary["predicted_lightness"] = predicted_for(h);
  summary["upper_bound_lightness"] = upper_for(h);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return result;
}

VerifyResult cmd_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.instance.empty()) throw ConfigError("config key 'instance' is required for verify");
  if (cfg.epsilons.size() != 1) throw ConfigError("verify needs exactly one epsilon");
  WeightedGraph g;
  try {
    g = load_graph(cfg.instance);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
  VerifyResult out;
  out.threshold =
      (Weight(1) + cfg.epsilons[0].value()) * Weight(2 * static_cast<std::int64_t>(cfg.k));
  out.certificate = weighted_girth(g);
  out.passed = out.certificate.exceeds(out.threshold);
  Json doc;
  doc["instance"] = cfg.instance;
  doc["nodes"] = g.node_count();
  doc["edges"] = g.edge_count();
  doc["threshold"] = format_weight(out.threshold);
  doc["weighted_girth"] =
      out.certificate.value ? Json(format_weight(*out.certificate.value)) : Json(nullptr);
  doc["passed"] = out.passed;
  doc["witness"] =
      out.certificate.witness ? cycle_json(g, *out.certificate.witness) : Json(nullptr);
  out.report_json = doc.dump(2) + "\n";
  return out;
}

SweepResult cmd_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto grid = grid_of(cfg);
  const std::size_t seeds = cfg.seeds.size();

  struct RowOut {
    Json row;
    double wall_ms = 0;
  };
  auto rows = run_pool<RowOut>(grid.size() * seeds, cfg.threads, [&](std::size_t i) {
    const std::size_t gi = i / seeds;
    const std::uint64_t seed = cfg.seeds[i % seeds];
    const auto start = std::chrono::steady_clock::now();
    Json row;
    row["grid_index"] = gi;
    row["seed"] = seed;
    row["base"] = grid[gi].base;
    row["k"] = cfg.k;
    try {
      const Built b = build(cfg, grid[gi], seed);
      const EmbeddedInstance& h = b.outcome.pruned;
      const std::size_t n = h.graph.node_count();
      row["n"] = b.base.graph.node_count();
      row["N"] = h.layout.cycle_length;
      row["epsilon"] = h.layout.epsilon.to_string();
      row["epsilon_value"] = h.layout.epsilon.as_double();
      row["base_edges"] = h.embedded.size();
      row["pruned_edges"] = h.pruned.size();
      row["surviving_fraction"] =
          h.embedded.empty() ? Json(nullptr) : Json(surviving_fraction(h));
      row["light_cycles"] = b.outcome.report.light_cycles;
      row["lightness"] = to_double(b.lightness);
      row["predicted_lightness"] = predicted_for(h);
      row["gamma_estimate"] = moore_bound(n, cfg.k);
      row["upper_bound_lightness"] = upper_for(h);
      const auto& cert = b.outcome.report.certificate;
      row["weighted_girth"] = cert.value ? Json(format_weight(*cert.value)) : Json(nullptr);
      row["certificate_ok"] = cert.exceeds(h.girth_threshold());
      row["collapse"] = !h.embedded.empty() && surviving_fraction(h) < 0.5;
      row["status"] = "ok";
    } catch (const std::exception& e) {
      row["status"] = error_code(e);
      row["error"] = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return RowOut{std::move(row), ms};
  });

  SweepResult out;
  out.rows.columns = {"grid_index", "seed", "base", "k", "n", "N", "epsilon", "epsilon_value",
                      "base_edges", "pruned_edges", "surviving_fraction", "light_cycles",
                      "lightness", "predicted_lightness", "gamma_estimate",
                      "upper_bound_lightness", "weighted_girth", "certificate_ok", "collapse",
                      "status", "error"};
  std::string timing = "grid_index,seed,wall_ms\n";
  for (auto& r : rows) {
    timing += std::to_string(r.row["grid_index"].get<std::size_t>()) + "," +
              std::to_string(r.row["seed"].get<std::uint64_t>()) + "," +
              format_double(r.wall_ms) + "\n";
    out.rows.rows.push_back(std::move(r.row));
  }

  Json points = Json::array();
  std::vector<double> mean_n;
  std::vector<double> mean_light;
  std::vector<double> mean_eps;
  std::vector<double> mean_surv;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double sn = 0, sl = 0, se = 0, ss = 0, sp = 0;
    std::size_t ok = 0;
    std::size_t with_surv = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const Json& row = out.rows.rows[gi * seeds + s];
      if (row["status"] != "ok") continue;
      ++ok;
      sn += row["N"].get<double>();
      sl += row["lightness"].get<double>();
      se += row["epsilon_value"].get<double>();
      sp += row["predicted_lightness"].get<double>();
      if (!row["surviving_fraction"].is_null()) {
        ss += row["surviving_fraction"].get<double>();
        ++with_surv;
      }
    }
    Json p;
    p["grid_index"] = gi;
    p["base"] = grid[gi].base;
    p["ok_rows"] = ok;
    p["failed_rows"] = seeds - ok;
    if (ok > 0) {
      const double d = static_cast<double>(ok);
      p["mean_N"] = sn / d;
      p["mean_epsilon"] = se / d;
      p["mean_lightness"] = sl / d;
      p["mean_predicted_lightness"] = sp / d;
      mean_n.push_back(sn / d);
      mean_light.push_back(sl / d);
      mean_eps.push_back(se / d);
      if (with_surv > 0) {
        p["mean_surviving_fraction"] = ss / static_cast<double>(with_surv);
        mean_surv.push_back(ss / static_cast<double>(with_surv));
      } else {
        p["mean_surviving_fraction"] = nullptr;
      }
    }
    points.push_back(std::move(p));
  }
  const auto opt = [](std::optional<double> v) { return v ? Json(*v) : Json(nullptr); };
  out.aggregate["points"] = points;
  out.aggregate["slope_lightness_vs_N"] = opt(log_log_slope(mean_n, mean_light));
  out.aggregate["slope_lightness_vs_epsilon"] = opt(log_log_slope(mean_eps, mean_light));
  out.aggregate["spearman_surviving_vs_epsilon"] =
      mean_surv.size() == mean_eps.size() ? opt(spearman(mean_eps, mean_surv)) : Json(nullptr);

  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "sweep";
  doc["config"] = cfg.echo();
  doc["rows"] = out.rows.to_json();
  doc["aggregate"] = out.aggregate;
  out.csv = out.rows.to_csv();
  out.json = doc.dump(2) + "\n";
  write_outputs(cfg, "sweep", out.csv, out.json);
  write_file(out_dir_of(cfg) / "timing.csv", timing);
  return out;
}

MonteCarloResult cmd_montecarlo(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.epsilons.empty()) throw ConfigError("montecarlo needs an epsilon grid");
  if (cfg.trials < 1000) throw ConfigError("config key 'trials': at least 1000 required");
  if (cfg.seeds.empty()) throw ConfigError("montecarlo needs a seed");
  MonteCarloResult out;
  out.report =
      run_montecarlo(cfg.k, cfg.c, cfg.epsilons, cfg.trials, cfg.seeds.front(), cfg.threads);
  Table table;
  table.columns = {"epsilon", "epsilon_value", "trials", "hits", "probability", "wilson_lo",
                   "wilson_hi", "shape", "scaled", "derived_bound"};
  for (const auto& p : out.report.points) {
    Json row;
    row["epsilon"] = p.epsilon.to_string();
    row["epsilon_value"] = p.epsilon.as_double();
    row["trials"] = p.trials;
    row["hits"] = p.hits;
    row["probability"] = p.probability;
    row["wilson_lo"] = p.wilson_lo;
    row["wilson_hi"] = p.wilson_hi;
    row["shape"] = p.shape;
    row["scaled"] = p.scaled;
    row["derived_bound"] = p.derived_bound;
    table.rows.push_back(std::move(row));
  }
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "montecarlo";
  doc["config"] = cfg.echo();
  doc["k"] = out.report.k;
  doc["c"] = out.report.c;
  doc["cycle_length"] = out.report.length;
  doc["points"] = table.to_json();
  doc["slope"] = out.report.slope ? Json(*out.report.slope) : Json(nullptr);
  doc["fitted_constant"] = out.report.fitted_constant;
  doc["derivation_constant"] = out.report.derivation_constant;
  out.csv = table.to_csv();
  out.json = doc.dump(2) + "\n";
  write_outputs(cfg, "montecarlo", out.csv, out.json);
  return out;
}

CompareResult cmd_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto grid = grid_of(cfg);
  const std::size_t seeds = cfg.seeds.size();
  auto rows = run_pool<Json>(grid.size() * seeds, cfg.threads, [&](std::size_t i) {
    const std::size_t gi = i / seeds;
    const std::uint64_t seed = cfg.seeds[i % seeds];
    const Built b = build(cfg, grid[gi], seed);
    const EmbeddedInstance& h = b.outcome.pruned;
    const auto two_k_minus_1 = static_cast<std::int64_t>(2 * cfg.k - 1);
    const Weight t = (Weight(1) + h.layout.epsilon.value()) * Weight(two_k_minus_1);
    const auto kept_h = greedy_spanner_edges(b.h.graph, t);
    if (kept_h.size() != b.h.graph.edge_count()) {
      throw InvariantError("greedy at t = " + format_weight(t) + " dropped " +
                           std::to_string(b.h.graph.edge_count() - kept_h.size()) +
                           " edges of a certified instance (base " + grid[gi].base + ", seed " +
                           std::to_string(seed) + ")");
    }
    const auto kept_base = greedy_spanner_edges(b.base.graph, Weight(two_k_minus_1));
    const auto frac = [](std::size_t a, std::size_t b) {
      return b ? Json(static_cast<double>(a) / static_cast<double>(b)) : Json(nullptr);
    };
    Json row;
    row["grid_index"] = gi;
    row["seed"] = seed;
    row["base"] = grid[gi].base;
    row["k"] = cfg.k;
    row["epsilon"] = h.layout.epsilon.to_string();
    row["N"] = h.layout.cycle_length;
    row["stretch"] = format_weight(t);
    row["h_edges"] = b.h.graph.edge_count();
    row["greedy_kept_h"] = kept_h.size();
    row["kept_fraction_h"] = frac(kept_h.size(), b.h.graph.edge_count());
    row["base_edges"] = b.base.graph.edge_count();
    row["greedy_kept_base"] = kept_base.size();
    row["kept_fraction_base"] = frac(kept_base.size(), b.base.graph.edge_count());
    row["lightness"] = to_double(b.lightness);
    row["predicted_lightness"] = predicted_for(h);
    row["upper_bound_lightness"] = upper_for(h);
    return row;
  });
  CompareResult out;
  out.rows.columns = {"grid_index", "seed", "base", "k", "epsilon", "N", "stretch", "h_edges",
                      "greedy_kept_h", "kept_fraction_h", "base_edges", "greedy_kept_base",
                      "kept_fraction_base", "lightness", "predicted_lightness",
                      "upper_bound_lightness"};
  out.rows.rows = std::move(rows);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "compare";
  doc["config"] = cfg.echo();
  doc["rows"] = out.rows.to_json();
  out.csv = out.rows.to_csv();
  out.json = doc.dump(2) + "\n";
  write_outputs(cfg, "compare", out.csv, out.json);
  return out;
}

}  // namespace lightspan::harness
