#include "npf/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "npf/error.hpp"

namespace npf {

void KernelParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "kernel horizon delta must be positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "kernel epsilon must be positive");
  }
  if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidArgument, "kernel dimension must be 1..3");
}

double eval_gamma(std::span<const double> x, const KernelParams& params) {
  const double d = params.dim;
  const double amplitude = 4.0 * params.epsilon * params.epsilon /
                           (std::pow(std::numbers::pi, d / 2.0) * std::pow(params.delta, d + 2.0));
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  return amplitude * std::exp(-r2 / (params.delta * params.delta));
}

DiscreteKernel::DiscreteKernel(const KernelParams& params, const PeriodicGrid& grid)
    : params_(params), samples_(grid), fft_(grid) {
  params_.validate();
  if (params_.dim != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel and grid dimensions differ");
  }
  for (int a = 0; a < grid.dim(); ++a) {
    if (params_.delta > grid.half_extent(a) / 2.0) {
      throw Error(ErrorCode::HorizonTooLarge,
                  "delta = " + std::to_string(params_.delta) + " exceeds X/2 on axis " +
                      std::to_string(a));
    }
  }

  // Offsets are folded into [-X_a, X_a): slot k maps to k h for k < N/2 and
  // to (k - N) h otherwise, so the sample field is exactly symmetric.
  double sum = 0.0;
  for (std::size_t s = 0; s < grid.num_points(); ++s) {
    const auto idx = grid.unflat(s);
    double offset[PeriodicGrid::kMaxDim] = {0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) {
      const long n = static_cast<long>(grid.size(a));
      const long k = static_cast<long>(idx[a]);
      const long folded = k < n / 2 ? k : k - n;
      // k = N/2 folds to -N/2; its mirror is itself, so symmetry is preserved.
      offset[a] = static_cast<double>(folded) * grid.spacing(a);
    }
    samples_[s] = eval_gamma(std::span<const double>(offset, grid.dim()), params_);
    sum += samples_[s];
  }
  c_gamma_ = grid.cell_volume() * sum;

  spectral_ = dft(samples_);
  half_spectrum_ = fft_.forward(samples_.values());
  const double scale = grid.cell_volume() / static_cast<double>(grid.num_points());
  for (auto& c : half_spectrum_) c *= scale;
}

void DiscreteKernel::convolve(std::span<const double> in, std::span<double> out) const {
  std::vector<std::complex<double>> spec(fft_.half_size());
  fft_.forward(in, spec);
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= half_spectrum_[s];
  fft_.backward(spec, out);
}

Field DiscreteKernel::convolve(const Field& u) const {
  if (!(u.grid() == grid())) throw Error(ErrorCode::GridMismatch, "kernel grid differs from field");
  Field out(u.grid());
  convolve(u.values(), out.values());
  return out;
}

DiscreteKernel discretize(const KernelParams& params, const PeriodicGrid& grid) {
  return DiscreteKernel(params, grid);
}

}  // namespace npf
