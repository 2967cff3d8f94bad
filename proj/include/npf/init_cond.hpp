#pragma once

#include <cstdint>
#include <string_view>

#include "npf/grid.hpp"

namespace npf {

enum class InitialKind { Bubbles2D, SharpColoredNoise, WhiteNoise, Sine1D, Star3D };

std::string_view to_string(InitialKind kind) noexcept;
InitialKind parse_initial_kind(std::string_view name);

struct InitialConditionSpec {
  InitialKind kind = InitialKind::Bubbles2D;
  std::uint64_t seed = 0;
  double amplitude = 0.95;         ///< WhiteNoise
  double correlation_length = 0.1; ///< SharpColoredNoise
  double star_radius = 0.5;        ///< Star3D
  double star_amplitude = 0.2;
  int star_arms = 6;
  double star_width = 0.05;
};

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so fields do not depend on evaluation order.
///
///   key = seed xor (stream * 0xD1B54A32D192ED03)
///   x   = splitmix64_mix(key + (counter + 1) * 0x9E3779B97F4A7C15)
///   uniform = (x >> 11) * 2^-53
///
/// Streams: 1 = white noise, 2 = Gaussian noise for colored fields.
class CounterRng {
 public:
  static constexpr std::uint64_t kWhiteNoiseStream = 1;
  static constexpr std::uint64_t kGaussianStream = 2;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on [0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal from the uniform pair at counters 2k, 2k + 1 (Box-Muller).
  double normal(std::uint64_t k) const noexcept;

 private:
  std::uint64_t key_;
};

/// Initial field on `grid`; every kind returns values in [-1, 1].
/// Throws DimensionMismatch when the kind does not fit the grid dimension.
Field generate(const InitialConditionSpec& spec, const PeriodicGrid& grid);

}  // namespace npf
