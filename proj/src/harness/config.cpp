#include "lightspan/harness/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lightspan::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(text)) {
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const auto lo = parse_number<std::uint64_t>("seeds", trim(item.substr(0, dots)));
      const auto hi = parse_number<std::uint64_t>("seeds", trim(item.substr(dots + 2)));
      if (hi < lo) throw ConfigError("config key 'seeds': empty range '" + item + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(parse_number<std::uint64_t>("seeds", item));
    }
  }
  return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  try {
    if (key == "schema_version") {
      schema_version = parse_number<int>(key, value);
    } else if (key == "k") {
      k = parse_number<std::size_t>(key, value);
    } else if (key == "epsilon") {
      epsilons.clear();
      for (const auto& item : split_list(value)) epsilons.push_back(Epsilon::parse(item));
    } else if (key == "n_target") {
      n_targets.clear();
      for (const auto& item : split_list(value)) {
        n_targets.push_back(parse_number<std::uint64_t>(key, item));
      }
    } else if (key == "base") {
      // Base specs carry their own commas ("random-alteration:60,2"); an item
      // without a ':' continues the previous spec.
      bases.clear();
      for (const auto& item : split_list(value)) {
        if (item.find(':') == std::string::npos && !bases.empty()) {
          bases.back() += "," + item;
        } else {
          bases.push_back(item);
        }
      }
    } else if (key == "seeds") {
      seeds = parse_seed_list(value);
    } else if (key == "epsilon_constant") {
      knobs.epsilon_constant = parse_number<double>(key, value);
    } else if (key == "kill_budget") {
      knobs.kill_budget = parse_number<double>(key, value);
    } else if (key == "c") {
      c = parse_number<std::size_t>(key, value);
    } else if (key == "trials") {
      trials = parse_number<std::uint64_t>(key, value);
    } else if (key == "threads") {
      threads = parse_number<std::size_t>(key, value);
    } else if (key == "instance") {
      instance = value;
    } else if (key == "out") {
      out_dir = value;
    } else if (key == "format") {
      if (value != "csv" && value != "json" && value != "both") {
        throw ConfigError("config key 'format': expected csv, json or both, got '" + value + "'");
      }
      format = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const ParameterError& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

void ExperimentConfig::load(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void ExperimentConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  load(in, path.string());
}

void ExperimentConfig::validate() const {
  if (schema_version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
  }
  if (k < 2) throw ConfigError("config key 'k': must be at least 2");
  if (!epsilons.empty() && !n_targets.empty()) {
    throw ConfigError("config keys 'epsilon' and 'n_target' are mutually exclusive");
  }
  if (!(knobs.epsilon_constant > 0)) {
    throw ConfigError("config key 'epsilon_constant': must be positive");
  }
  if (!(knobs.kill_budget > 0)) throw ConfigError("config key 'kill_budget': must be positive");
  if (threads == 0) throw ConfigError("config key 'threads': must be positive");
}

std::string ExperimentConfig::echo() const {
  const auto join = [](const auto& items, auto fmt) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += ",";
      out += fmt(item);
    }
    return out;
  };
  std::ostringstream out;
  out << "schema_version = " << schema_version << '\n';
  out << "k = " << k << '\n';
  out << "epsilon = " << join(epsilons, [](const Epsilon& e) { return e.to_string(); }) << '\n';
  out << "n_target = " << join(n_targets, [](std::uint64_t n) { return std::to_string(n); })
      << '\n';
  out << "base = " << join(bases, [](const std::string& s) { return s; }) << '\n';
  out << "seeds = " << join(seeds, [](std::uint64_t s) { return std::to_string(s); }) << '\n';
  out << "epsilon_constant = " << knobs.epsilon_constant << '\n';
  out << "kill_budget = " << knobs.kill_budget << '\n';
  out << "c = " << c << '\n';
  out << "trials = " << trials << '\n';
  return out.str();
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("LIGHTSPAN_OUT_DIR"); env && *env) return env;
  return "lightspan-out";
}

}  // namespace lightspan::harness
