#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace concord {

/// Identifier recorded next to every seeded result.
inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the `stream`-th independent substream of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// mt19937_64 seeded through SplitMix64. Every draw is built from raw 64-bit
/// outputs, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double probability) noexcept { return uniform() < probability; }

  /// Inverse-CDF draw from `cumulative` (non-decreasing, last entry 1).
  std::size_t categorical(std::span<const double> cumulative) noexcept;

 private:
  std::mt19937_64 engine_;
};

}  // namespace concord
