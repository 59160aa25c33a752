#include <charconv>
#include <cmath>
#include <limits>

#include "lightspan/construction.hpp"

namespace lightspan {

namespace {

constexpr double kRoundingSlack = 1e-9;
constexpr double kMaxInverse = 1e15;

std::int64_t round_inverse_up(double inverse) {
  if (!std::isfinite(inverse) || inverse > kMaxInverse) {
    throw ParameterError("epsilon reciprocal overflows");
  }
  // Absorb floating-point noise so that exact reciprocals are not bumped up.
  const double nearest = std::round(inverse);
  if (std::abs(inverse - nearest) <= kRoundingSlack * std::max(1.0, inverse)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(inverse));
}

}  // namespace

Epsilon Epsilon::from_inverse(std::int64_t inverse) {
  if (inverse < 2) {
    throw ParameterError("epsilon must be below 1 with an integral reciprocal >= 2, got 1/" +
                         std::to_string(inverse));
  }
  return Epsilon(inverse);
}

Epsilon Epsilon::parse(std::string_view text) {
  const auto fail = [&]() -> Epsilon {
    throw ParameterError("cannot parse epsilon '" + std::string(text) +
                         "'; expected 1/r or a decimal with integral reciprocal");
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    const auto a = text.substr(0, slash);
    const auto b = text.substr(slash + 1);
    if (std::from_chars(a.data(), a.data() + a.size(), num).ptr != a.data() + a.size() ||
        std::from_chars(b.data(), b.data() + b.size(), den).ptr != b.data() + b.size() ||
        a.empty() || b.empty() || num <= 0 || den <= 0 || den % num != 0) {
      return fail();
    }
    return from_inverse(den / num);
  }
  double value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ptr != text.data() + text.size() || !(value > 0) || !(value < 1)) {
    return fail();
  }
  const double inverse = 1.0 / value;
  const double nearest = std::round(inverse);
  if (std::abs(inverse - nearest) > kRoundingSlack * inverse) return fail();
  return from_inverse(static_cast<std::int64_t>(nearest));
}

void check_construction_params(const GirthGraph& base, const ConstructionParams& params) {
  if (params.k < 2) throw ParameterError("k must be at least 2");
  if (base.graph.node_count() == 0) throw ParameterError("base graph has no nodes");
  for (const Edge& e : base.graph.edges()) {
    if (e.weight != Weight{1}) throw ParameterError("base graph must have unit weights");
  }
  if (!base.bipartition && !two_colouring(base.graph)) {
    throw ParameterError("base graph must be bipartite");
  }
  if (base.girth_parameter + 1 < params.k) {
    throw ParameterError("base girth parameter " + std::to_string(base.girth_parameter) +
                         " is below k - 1 = " + std::to_string(params.k - 1));
  }
  if (base.provenance.certified_girth &&
      *base.provenance.certified_girth <= 2 * (params.k - 1)) {
    throw ParameterError("base girth " + std::to_string(*base.provenance.certified_girth) +
                         " does not exceed 2(k - 1)");
  }
  if (!(params.knobs.epsilon_constant > 0)) {
    throw ParameterError("epsilon_constant must be positive");
  }
  if (!(params.knobs.kill_budget > 0)) throw ParameterError("kill_budget must be positive");
}

Epsilon solve_epsilon(std::uint64_t n_target, std::size_t k, std::size_t c, double constant) {
  if (k < 2) throw ParameterError("k must be at least 2");
  if (n_target == 0) throw ParameterError("target size must be positive");
  if (!(constant > 0)) throw ParameterError("epsilon constant must be positive");
  const double kk = static_cast<double>(k);
  const double n = static_cast<double>(n_target);
  double eps = 0;
  if (c == 0) {
    eps = constant * kk * std::pow(n, -1.0 / (2.0 * kk - 1.0));
  } else {
    const double cc = static_cast<double>(c);
    const double denom = 2.0 * kk * kk + 2.0 * kk * cc - kk;
    eps = constant * std::pow(kk, (kk - 1.0) * (2.0 * kk + 2.0 * cc) / denom) *
          std::pow(n, -(kk + 2.0 * cc) / denom);
  }
  if (!(eps < 1)) {
    throw ParameterError("solved epsilon " + std::to_string(eps) + " is not below 1");
  }
  const std::int64_t inverse = round_inverse_up(1.0 / eps);
  if (inverse < 2) throw ParameterError("solved epsilon rounds to 1");
  return Epsilon::from_inverse(inverse);
}

Epsilon solve_epsilon_for_base_size(std::size_t n, std::size_t k, double constant) {
  if (k < 2) throw ParameterError("k must be at least 2");
  if (n == 0) throw ParameterError("base size must be positive");
  if (!(constant > 0)) throw ParameterError("epsilon constant must be positive");
  const double kk = static_cast<double>(k);
  const auto satisfied = [&](std::int64_t r) {
    const double rr = static_cast<double>(r);
    const double eps = constant * kk * std::pow(4.0 * kk * rr * static_cast<double>(n),
                                                -1.0 / (2.0 * kk - 1.0));
    return 1.0 / rr <= eps * (1.0 + kRoundingSlack);
  };
  // Closed form r = (4kn)^(1/(2k-2)) / (ck)^((2k-1)/(2k-2)), then fixed up.
  const double closed = std::pow(4.0 * kk * static_cast<double>(n), 1.0 / (2.0 * kk - 2.0)) /
                        std::pow(constant * kk, (2.0 * kk - 1.0) / (2.0 * kk - 2.0));
  std::int64_t r = std::max<std::int64_t>(2, round_inverse_up(closed));
  while (r > 2 && satisfied(r - 1)) --r;
  while (!satisfied(r)) {
    if (static_cast<double>(r) > kMaxInverse) throw ParameterError("epsilon reciprocal overflows");
    ++r;
  }
  return Epsilon::from_inverse(r);
}

SizePlan plan_from_target(std::uint64_t n_target, std::size_t k, double constant) {
  SizePlan plan;
  plan.epsilon = solve_epsilon(n_target, k, 0, constant);
  const std::uint64_t block = 4 * k * static_cast<std::uint64_t>(plan.epsilon.inverse());
  plan.base_nodes = n_target / block;
  if (plan.base_nodes == 0) {
    throw ParameterError("target size " + std::to_string(n_target) +
                         " is smaller than one cluster plus spacer (" + std::to_string(block) +
                         ")");
  }
  plan.cycle_length = block * plan.base_nodes;
  return plan;
}

std::size_t max_light_excess(std::size_t k, const Epsilon& eps) {
  return k / static_cast<std::size_t>(eps.inverse());
}

double predicted_lightness(double cycle_length, std::size_t k, double epsilon) {
  if (k < 2) throw ParameterError("k must be at least 2");
  const double e = 1.0 / (static_cast<double>(k) - 1.0);
  return std::pow(epsilon, e) * std::pow(cycle_length, e) / static_cast<double>(k);
}

double expected_kill_bound(std::size_t k, std::size_t c, double n, double epsilon,
                           double constant) {
  if (k < 2) throw ParameterError("k must be at least 2");
  const double length = 2.0 * static_cast<double>(k + c);
  const double exponent =
      static_cast<double>(k + 2 * c) / (static_cast<double>(k) - 1.0);
  return constant * std::pow(n, exponent) *
         std::exp(length * std::log(constant * epsilon) - std::lgamma(length + 1.0));
}

double geometric_kill_sum(std::size_t k, const Epsilon& eps) {
  double sum = 0;
  double term = 0.25;
  for (std::size_t i = 0; i <= max_light_excess(k, eps); ++i) {
    sum += term;
    term /= 4.0;
  }
  return sum;
}

double light_cycle_probability_bound(std::size_t length, double epsilon) {
  const double l = static_cast<double>(length);
  return std::exp(l * std::log(8.0 * epsilon) - std::lgamma(l + 1.0));
}

}  // namespace lightspan
