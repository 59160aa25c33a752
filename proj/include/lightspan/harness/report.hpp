#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lightspan::harness {

using Json = nlohmann::ordered_json;

/// Rows are JSON objects sharing one fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;

  /// Header plus one line per row; strings unquoted unless they contain a
  /// comma or quote, doubles with 10 significant digits, null as empty.
  std::string to_csv() const;
  Json to_json() const;
};

std::string format_double(double x);

/// Least-squares slope of log(y) against log(x) over points with x, y > 0.
/// std::nullopt with fewer than two distinct x.
std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman rank correlation (average ranks for ties); std::nullopt when
/// either side is constant or there are fewer than two points.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
};

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.96);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lightspan::harness
