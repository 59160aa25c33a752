#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace lightspan {

/// Seeded engine with portable draws: the standard distributions are
/// implementation-defined, so bounded integers and shuffles are done here to
/// keep outputs identical across standard libraries.
class Rng {
 public:
  /// `stream` separates independent uses of one user-facing seed.
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Stream tags, one per randomized step.
namespace streams {
inline constexpr std::uint64_t kLayout = 1;
inline constexpr std::uint64_t kEmbedding = 2;
inline constexpr std::uint64_t kBipartition = 3;
inline constexpr std::uint64_t kRandomGraph = 4;
inline constexpr std::uint64_t kEdgeSample = 5;
inline constexpr std::uint64_t kMonteCarlo = 6;
}  // namespace streams

}  // namespace lightspan
