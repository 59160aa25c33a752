#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lightspan/construction.hpp"

namespace lightspan::harness {

/// Unknown key, malformed value, or inconsistent combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

/// Everything a subcommand needs. Built from a `key = value` file and/or
/// flags; flags are applied after the file and win.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::size_t k = 2;
  /// Explicit epsilon values (a grid for sweeps).
  std::vector<Epsilon> epsilons;
  /// Spanning-cycle size targets; epsilon is solved from each.
  std::vector<std::uint64_t> n_targets;
  /// Base graph specs such as "pg2:5"; see parse_base_spec.
  std::vector<std::string> bases;
  std::vector<std::uint64_t> seeds{1};
  ConstructionKnobs knobs;
  /// Monte Carlo: base cycle length is 2k + 2c.
  std::size_t c = 0;
  std::uint64_t trials = 10000;
  std::size_t threads = 1;
  /// Graph file for verify.
  std::string instance;
  std::filesystem::path out_dir;
  /// csv, json or both.
  std::string format = "both";

  /// Sets one key; throws ConfigError naming the key on failure.
  void set(const std::string& key, const std::string& value);

  /// "key = value" lines; '#' starts a comment.
  void load(std::istream& in, const std::string& source = "config");
  void load_file(const std::filesystem::path& path);

  /// Cross-field checks; call once all sources are applied.
  void validate() const;

  bool wants_csv() const { return format == "csv" || format == "both"; }
  bool wants_json() const { return format == "json" || format == "both"; }

  /// Canonical `key = value` text; stable across runs.
  std::string echo() const;
};

/// Default output directory: $LIGHTSPAN_OUT_DIR, else "lightspan-out".
std::filesystem::path default_out_dir();

/// "1,2,5" and inclusive ranges "1..20" (mixable).
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace lightspan::harness
