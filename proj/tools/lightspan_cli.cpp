// Command-line front end: generate, verify, sweep, montecarlo, compare.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lightspan/harness/commands.hpp"

namespace {

using lightspan::harness::ConfigError;
using lightspan::harness::ExperimentConfig;

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  std::vector<std::string> constants;
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "key = value config file");
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"--k", "k"},
      {"--epsilon", "epsilon"},
      {"--n-target", "n_target"},
      {"--base", "base"},
      {"--seeds", "seeds"},
      {"--out", "out"},
      {"--format", "format"},
      {"--c", "c"},
      {"--trials", "trials"},
      {"--threads", "threads"},
      {"--instance", "instance"},
  };
  for (const auto& [flag, key] : keys) {
    cmd->add_option_function<std::string>(
        flag, [&flags, key = key](const std::string& v) { flags.values[key] = v; },
        "sets '" + key + "'");
  }
  cmd->add_option("--constant", flags.constants, "name=value (epsilon_constant, kill_budget)");
}

ExperimentConfig build_config(const Flags& flags) {
  ExperimentConfig cfg;
  if (!flags.config.empty()) cfg.load_file(flags.config);
  for (const auto& [key, value] : flags.values) cfg.set(key, value);
  for (const auto& item : flags.constants) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--constant expects name=value, got " + item);
    const std::string name = item.substr(0, eq);
    if (name != "epsilon_constant" && name != "kill_budget") {
      throw ConfigError("unknown constant '" + name + "'");
    }
    cfg.set(name, item.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = lightspan::harness;
  CLI::App app{"lightspan: weighted lower-bound instances for light spanners"};
  app.require_subcommand(1);
  Flags flags;
  auto* generate = app.add_subcommand("generate", "build, prune and certify one instance");
  auto* verify = app.add_subcommand("verify", "recompute the weighted girth of a graph file");
  auto* sweep = app.add_subcommand("sweep", "run the pipeline over a grid of settings");
  auto* montecarlo = app.add_subcommand("montecarlo", "light corresponding-cycle probability");
  auto* compare = app.add_subcommand("compare", "greedy spanner against pruned instances");
  for (auto* cmd : {generate, verify, sweep, montecarlo, compare}) add_common(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kExitConfig;
  }

  try {
    const ExperimentConfig cfg = build_config(flags);
    if (generate->parsed()) {
      const auto r = h::cmd_generate(cfg);
      std::cout << "wrote " << r.out_dir.string() << " (N=" << r.outcome.pruned.layout.cycle_length
                << ", pruned " << r.outcome.pruned.pruned.size() << " of "
                << r.outcome.pruned.embedded.size() << " embedded edges, lightness "
                << r.lightness << ")\n";
    } else if (verify->parsed()) {
      const auto r = h::cmd_verify(cfg);
      std::cout << r.report_json;
      return r.passed ? h::kExitOk : h::kExitCertification;
    } else if (sweep->parsed()) {
      const auto r = h::cmd_sweep(cfg);
      std::cout << r.rows.rows.size() << " rows\n" << r.aggregate.dump(2) << "\n";
    } else if (montecarlo->parsed()) {
      const auto r = h::cmd_montecarlo(cfg);
      std::cout << r.csv;
    } else if (compare->parsed()) {
      const auto r = h::cmd_compare(cfg);
      std::cout << r.csv;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::exit_code_for(e);
  }
  return h::kExitOk;
}
