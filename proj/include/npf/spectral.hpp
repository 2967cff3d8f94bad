#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "npf/grid.hpp"

namespace npf {

/// Real-to-complex FFT pair for one grid shape, backed by FFTW.
///
/// The half spectrum has the standard r2c layout: the last active axis keeps
/// N/2 + 1 slots, all others keep N. Transforms are unnormalized and use the
/// origin-at-index-0 convention (no coordinate phase). Plans are shared
/// process-wide; execution is reentrant.
class RealFft {
 public:
  explicit RealFft(const PeriodicGrid& grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t half_size() const noexcept { return half_size_; }
  /// Shape of the half spectrum (unused axes are 1).
  const std::array<std::size_t, PeriodicGrid::kMaxDim>& half_shape() const noexcept {
    return half_shape_;
  }

  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// Unnormalized inverse; `in` is consumed as scratch.
  void backward(std::span<std::complex<double>> in, std::span<double> out) const;

  std::vector<std::complex<double>> forward(std::span<const double> in) const;

  /// Squared angular wavenumber |kappa|^2 = sum_a (pi l_a / X_a)^2 for each
  /// half-spectrum slot.
  std::vector<double> wavenumber_squared() const;

 private:
  PeriodicGrid grid_;
  std::array<std::size_t, PeriodicGrid::kMaxDim> half_shape_{1, 1, 1};
  std::size_t half_size_ = 0;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// DFT over the collocation coordinates x_i = -X + i h:
///   U^ (l,m) = sum_{i,j} U(i,j) exp(-i pi (l x_i / X + m y_j / Y)).
SpectralField dft(const Field& u);

/// Inverse of dft, normalized by 1 / prod N. Throws NonNegligibleImaginaryPart
/// if the result carries an imaginary residue above 1e-10 relative.
Field idft(const SpectralField& s);

/// (U o V)(i) = h_x h_y sum_p U(i - p) V(p), periodic indices, via FFT.
Field circular_convolve(const Field& u, const Field& v);

/// Same sum evaluated directly in O(N^2). Intended for small grids.
Field circular_convolve_direct(const Field& u, const Field& v);

double inner(const Field& u, const Field& v);
double norm(const Field& u);
/// (<U,V>_h, ||U||_h) in one call.
std::pair<double, double> inner_and_norm(const Field& u, const Field& v);

/// ||U - Uref||_h / ||Uref||_h; throws ZeroReference when ||Uref|| = 0.
double rel_l2_error(const Field& u, const Field& reference);

double max_abs_difference(const Field& a, const Field& b);

enum class SpectralOperatorKind {
  A,  ///< I - beta * Laplacian
  G,  ///< -(I - beta * Laplacian)^{-1}
};

/// Applies A or G through the exact Fourier symbol a = 1 + beta |kappa|^2.
Field apply_spectral_operator(const Field& u, SpectralOperatorKind kind, double beta);

/// Pointwise multiplier cached for repeated application of a Fourier symbol.
class SpectralMultiplier {
 public:
  SpectralMultiplier(const PeriodicGrid& grid, std::vector<double> half_symbol);

  /// Multiplier for A (or G) with the given beta on `grid`.
  static SpectralMultiplier operator_a(const PeriodicGrid& grid, double beta);
  static SpectralMultiplier operator_g(const PeriodicGrid& grid, double beta);

  Field apply(const Field& u) const;
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  RealFft fft_;
  std::vector<double> symbol_;  // already divided by the number of points
};

}  // namespace npf
