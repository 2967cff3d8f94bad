#include "npf/init_cond.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "npf/error.hpp"
#include "npf/spectral.hpp"

namespace npf {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_dim(const PeriodicGrid& grid, bool ok, std::string_view what) {
  if (!ok) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " not defined for d = " + std::to_string(grid.dim()));
  }
}

Field bubbles(const PeriodicGrid& grid) {
  Field u(grid, -1.0);
  constexpr double r2 = 0.35 * 0.35;
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    const double x = grid.coordinate(0, i);
    for (std::size_t j = 0; j < grid.size(1); ++j) {
      const double y = grid.coordinate(1, j);
      const bool right = (x - 0.4) * (x - 0.4) + y * y <= r2;
      const bool left = (x + 0.4) * (x + 0.4) + y * y <= r2;
      if (right || left) u[grid.flat(i, j)] = 1.0;
    }
  }
  return u;
}

Field white_noise(const InitialConditionSpec& spec, const PeriodicGrid& grid) {
  const CounterRng rng(spec.seed, CounterRng::kWhiteNoiseStream);
  const double a = std::clamp(spec.amplitude, 0.0, 1.0);
  Field u(grid);
  for (std::size_t s = 0; s < u.size(); ++s) u[s] = a * (2.0 * rng.uniform(s) - 1.0);
  return u;
}

// Gaussian random field with covariance exp(-r^2 / l^2): white noise filtered
// by the square root of its spectral density, exp(-|kappa|^2 l^2 / 8).
Field sharp_colored_noise(const InitialConditionSpec& spec, const PeriodicGrid& grid) {
  if (!(spec.correlation_length > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "correlation length must be positive");
  }
  const CounterRng rng(spec.seed, CounterRng::kGaussianStream);
  Field noise(grid);
  for (std::size_t s = 0; s < noise.size(); ++s) noise[s] = rng.normal(s);

  const RealFft fft(grid);
  auto spec_noise = fft.forward(noise.values());
  const auto k2 = fft.wavenumber_squared();
  const double l2 = spec.correlation_length * spec.correlation_length;
  for (std::size_t s = 0; s < spec_noise.size(); ++s) spec_noise[s] *= std::exp(-k2[s] * l2 / 8.0);
  Field smooth(grid);
  fft.backward(spec_noise, smooth.values());

  Field u(grid);
  for (std::size_t s = 0; s < u.size(); ++s) u[s] = smooth[s] >= 0.0 ? 1.0 : -1.0;
  return u;
}

Field sine(const PeriodicGrid& grid) {
  Field u(grid);
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    u[i] = 0.1 * std::sin(2.0 * std::numbers::pi * grid.coordinate(0, i));
  }
  return u;
}

// tanh profile around the surface r = r0 (1 + a cos(k phi) sin(theta)).
Field star(const InitialConditionSpec& spec, const PeriodicGrid& grid) {
  Field u(grid);
  for (std::size_t s = 0; s < u.size(); ++s) {
    const auto idx = grid.unflat(s);
    const double x = grid.coordinate(0, idx[0]);
    const double y = grid.coordinate(1, idx[1]);
    const double z = grid.coordinate(2, idx[2]);
    const double rho = std::hypot(x, y);
    const double r = std::hypot(rho, z);
    const double phi = std::atan2(y, x);
    const double sin_theta = r > 0.0 ? rho / r : 0.0;
    const double radius =
        spec.star_radius * (1.0 + spec.star_amplitude * std::cos(spec.star_arms * phi) * sin_theta);
    u[s] = std::clamp(std::tanh((radius - r) / spec.star_width), -1.0, 1.0);
  }
  return u;
}

}  // namespace

std::string_view to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::Bubbles2D: return "bubbles";
    case InitialKind::SharpColoredNoise: return "colored-noise";
    case InitialKind::WhiteNoise: return "white-noise";
    case InitialKind::Sine1D: return "sine";
    case InitialKind::Star3D: return "star";
  }
  return "unknown";
}

InitialKind parse_initial_kind(std::string_view name) {
  if (name == "bubbles") return InitialKind::Bubbles2D;
  if (name == "colored-noise") return InitialKind::SharpColoredNoise;
  if (name == "white-noise") return InitialKind::WhiteNoise;
  if (name == "sine") return InitialKind::Sine1D;
  if (name == "star") return InitialKind::Star3D;
  throw Error(ErrorCode::ConfigError, "unknown initial condition '" + std::string(name) + "'");
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(seed ^ (stream * kStreamMul)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return splitmix64_mix(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t k) const noexcept {
  const double u1 = uniform(2 * k);
  const double u2 = uniform(2 * k + 1);
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Field generate(const InitialConditionSpec& spec, const PeriodicGrid& grid) {
  switch (spec.kind) {
    case InitialKind::Bubbles2D:
      require_dim(grid, grid.dim() == 2, "bubbles");
      return bubbles(grid);
    case InitialKind::SharpColoredNoise:
      require_dim(grid, grid.dim() >= 2, "colored-noise");
      return sharp_colored_noise(spec, grid);
    case InitialKind::WhiteNoise:
      require_dim(grid, grid.dim() >= 2, "white-noise");
      return white_noise(spec, grid);
    case InitialKind::Sine1D:
      require_dim(grid, grid.dim() == 1, "sine");
      return sine(grid);
    case InitialKind::Star3D:
      require_dim(grid, grid.dim() == 3, "star");
      return star(spec, grid);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown initial condition kind");
}

}  // namespace npf
