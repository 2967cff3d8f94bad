#pragma once

#include <complex>
#include <vector>

#include "npf/grid.hpp"
#include "npf/spectral.hpp"

namespace npf {

/// Gaussian interaction kernel
///   gamma(x) = 4 eps^2 / (pi^(d/2) delta^(d+2)) * exp(-|x|^2 / delta^2),
/// normalized so that its integral is 4 eps^2 / delta^2 in every dimension.
struct KernelParams {
  double delta = 0.1;    ///< horizon
  double epsilon = 0.05; ///< local interface parameter
  int dim = 2;

  void validate() const;
  double analytic_mass() const noexcept { return 4.0 * epsilon * epsilon / (delta * delta); }
};

double eval_gamma(std::span<const double> x, const KernelParams& params);

/// Kernel sampled on the periodic grid with the origin at index 0 (minimal
/// image per axis), plus its cached spectrum for O(N log N) convolution.
class DiscreteKernel {
 public:
  DiscreteKernel(const KernelParams& params, const PeriodicGrid& grid);

  const KernelParams& params() const noexcept { return params_; }
  const PeriodicGrid& grid() const noexcept { return samples_.grid(); }
  const Field& samples() const noexcept { return samples_; }
  /// dft of the samples (coordinate-phase convention of `dft`).
  const SpectralField& spectral() const noexcept { return spectral_; }

  /// c_gamma^N = h_x h_y sum of samples.
  double c_gamma() const noexcept { return c_gamma_; }
  /// xi_N = c_gamma^N - c_F.
  double xi(double c_f) const noexcept { return c_gamma_ - c_f; }

  /// gamma o U by FFT.
  Field convolve(const Field& u) const;
  void convolve(std::span<const double> in, std::span<double> out) const;

 private:
  KernelParams params_;
  Field samples_;
  SpectralField spectral_;
  RealFft fft_;
  std::vector<std::complex<double>> half_spectrum_;  // scaled by h^d / N
  double c_gamma_ = 0.0;
};

/// Validates and builds; throws HorizonTooLarge when delta > min X_a / 2.
DiscreteKernel discretize(const KernelParams& params, const PeriodicGrid& grid);

}  // namespace npf
