#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace lightspan {

/// Exact edge weight. Every weight the lower-bound construction produces is
/// 1 or an integral reciprocal of epsilon, so comparisons never need a
/// floating-point tolerance.
using Weight = boost::rational<std::int64_t>;

/// A shortest-path distance; std::nullopt stands for +infinity.
using Distance = std::optional<Weight>;

inline double to_double(const Weight& w) {
  return static_cast<double>(w.numerator()) / static_cast<double>(w.denominator());
}

/// "num/den", or just "num" when the denominator is 1.
std::string format_weight(const Weight& w);

/// Accepts "num/den", "num" or "num den". Throws std::invalid_argument.
Weight parse_weight(std::string_view text);

}  // namespace lightspan
