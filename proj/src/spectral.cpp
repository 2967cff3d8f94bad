#include "npf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "npf/error.hpp"

namespace npf {
namespace {

enum class PlanKind { R2C, C2R, C2CForward, C2CBackward };

using PlanKey = std::tuple<PlanKind, int, std::size_t, std::size_t, std::size_t>;

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, const PeriodicGrid& grid) {
    const PlanKey key{kind, grid.dim(), grid.size(0), grid.size(1), grid.size(2)};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    int n[PeriodicGrid::kMaxDim];
    for (int a = 0; a < grid.dim(); ++a) n[a] = static_cast<int>(grid.size(a));
    const std::size_t total = grid.num_points();
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    double* real = fftw_alloc_real(total);
    fftw_complex* cplx = fftw_alloc_complex(total);
    fftw_complex* cplx2 = fftw_alloc_complex(total);
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::R2C: plan = fftw_plan_dft_r2c(grid.dim(), n, real, cplx, flags); break;
      case PlanKind::C2R: plan = fftw_plan_dft_c2r(grid.dim(), n, cplx, real, flags); break;
      case PlanKind::C2CForward:
        plan = fftw_plan_dft(grid.dim(), n, cplx, cplx2, FFTW_FORWARD, flags);
        break;
      case PlanKind::C2CBackward:
        plan = fftw_plan_dft(grid.dim(), n, cplx, cplx2, FFTW_BACKWARD, flags);
        break;
    }
    fftw_free(real);
    fftw_free(cplx);
    fftw_free(cplx2);
    if (plan == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW could not create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// (-1)^(l + m + n) for the signed frequency of a full-spectrum slot: the phase
// that moves the origin from index 0 to the coordinate -X.
double coordinate_phase(const PeriodicGrid& grid, std::size_t slot) {
  const auto idx = grid.unflat(slot);
  long total = 0;
  for (int a = 0; a < grid.dim(); ++a) total += PeriodicGrid::frequency(idx[a], grid.size(a));
  return (total % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

RealFft::RealFft(const PeriodicGrid& grid) : grid_(grid) {
  const int last = grid.dim() - 1;
  for (int a = 0; a < grid.dim(); ++a) half_shape_[a] = grid.size(a);
  half_shape_[last] = grid.size(last) / 2 + 1;
  half_size_ = half_shape_[0] * half_shape_[1] * half_shape_[2];
  forward_plan_ = PlanCache::instance().get(PlanKind::R2C, grid);
  backward_plan_ = PlanCache::instance().get(PlanKind::C2R, grid);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  // r2c never writes its input.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       as_fftw(out.data()));
}

void RealFft::backward(std::span<std::complex<double>> in, std::span<double> out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_), as_fftw(in.data()), out.data());
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) const {
  std::vector<std::complex<double>> out(half_size_);
  forward(in, out);
  return out;
}

std::vector<double> RealFft::wavenumber_squared() const {
  std::vector<double> k2(half_size_, 0.0);
  std::size_t s = 0;
  for (std::size_t i = 0; i < half_shape_[0]; ++i) {
    for (std::size_t j = 0; j < half_shape_[1]; ++j) {
      for (std::size_t k = 0; k < half_shape_[2]; ++k, ++s) {
        const std::array<std::size_t, 3> idx{i, j, k};
        double sum = 0.0;
        for (int a = 0; a < grid_.dim(); ++a) {
          const double kappa = std::numbers::pi *
                               static_cast<double>(PeriodicGrid::frequency(idx[a], grid_.size(a))) /
                               grid_.half_extent(a);
          sum += kappa * kappa;
        }
        k2[s] = sum;
      }
    }
  }
  return k2;
}

SpectralField dft(const Field& u) {
  const PeriodicGrid& grid = u.grid();
  SpectralField out(grid);
  std::vector<std::complex<double>> in(u.data().begin(), u.data().end());
  fftw_execute_dft(PlanCache::instance().get(PlanKind::C2CForward, grid), as_fftw(in.data()),
                   as_fftw(out.coefficients().data()));
  for (std::size_t s = 0; s < out.size(); ++s) out[s] *= coordinate_phase(grid, s);
  return out;
}

Field idft(const SpectralField& spec) {
  const PeriodicGrid& grid = spec.grid();
  std::vector<std::complex<double>> in(spec.size());
  for (std::size_t s = 0; s < spec.size(); ++s) in[s] = spec[s] * coordinate_phase(grid, s);
  std::vector<std::complex<double>> out(spec.size());
  fftw_execute_dft(PlanCache::instance().get(PlanKind::C2CBackward, grid), as_fftw(in.data()),
                   as_fftw(out.data()));

  const double scale = 1.0 / static_cast<double>(grid.num_points());
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (const auto& c : out) {
    max_abs = std::max(max_abs, std::abs(c));
    max_imag = std::max(max_imag, std::abs(c.imag()));
  }
  if (max_imag > 1e-10 * max_abs) {
    throw Error(ErrorCode::NonNegligibleImaginaryPart,
                "inverse transform has imaginary residue " + std::to_string(max_imag * scale));
  }
  Field result(grid);
  for (std::size_t i = 0; i < out.size(); ++i) result[i] = out[i].real() * scale;
  return result;
}

Field circular_convolve(const Field& u, const Field& v) {
  require_same_grid(u, v);
  const PeriodicGrid& grid = u.grid();
  const RealFft fft(grid);
  auto hu = fft.forward(u.values());
  const auto hv = fft.forward(v.values());
  const double scale = grid.cell_volume() / static_cast<double>(grid.num_points());
  for (std::size_t s = 0; s < hu.size(); ++s) hu[s] *= hv[s] * scale;
  Field out(grid);
  fft.backward(hu, out.values());
  return out;
}

Field circular_convolve_direct(const Field& u, const Field& v) {
  require_same_grid(u, v);
  const PeriodicGrid& grid = u.grid();
  const auto& n = grid.sizes();
  Field out(grid);
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    const auto xi = grid.unflat(i);
    double sum = 0.0;
    for (std::size_t p = 0; p < grid.num_points(); ++p) {
      const auto xp = grid.unflat(p);
      std::array<std::size_t, 3> d{};
      for (int a = 0; a < 3; ++a) d[a] = (xi[a] + n[a] - xp[a]) % n[a];
      sum += u[grid.flat(d[0], d[1], d[2])] * v[p];
    }
    out[i] = grid.cell_volume() * sum;
  }
  return out;
}

double inner(const Field& u, const Field& v) {
  require_same_grid(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return u.grid().cell_volume() * sum;
}

double norm(const Field& u) { return std::sqrt(inner(u, u)); }

std::pair<double, double> inner_and_norm(const Field& u, const Field& v) {
  return {inner(u, v), norm(u)};
}

double rel_l2_error(const Field& u, const Field& reference) {
  require_same_grid(u, reference);
  const double ref = norm(reference);
  if (ref == 0.0) throw Error(ErrorCode::ZeroReference, "reference field has zero norm");
  return norm(u - reference) / ref;
}

double max_abs_difference(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

SpectralMultiplier::SpectralMultiplier(const PeriodicGrid& grid, std::vector<double> half_symbol)
    : fft_(grid), symbol_(std::move(half_symbol)) {
  if (symbol_.size() != fft_.half_size()) {
    throw Error(ErrorCode::InvalidArgument, "symbol size does not match the half spectrum");
  }
  const double inv_n = 1.0 / static_cast<double>(grid.num_points());
  for (double& s : symbol_) s *= inv_n;
}

SpectralMultiplier SpectralMultiplier::operator_a(const PeriodicGrid& grid, double beta) {
  auto k2 = RealFft(grid).wavenumber_squared();
  for (double& s : k2) s = 1.0 + beta * s;
  return SpectralMultiplier(grid, std::move(k2));
}

SpectralMultiplier SpectralMultiplier::operator_g(const PeriodicGrid& grid, double beta) {
  auto k2 = RealFft(grid).wavenumber_squared();
  for (double& s : k2) s = -1.0 / (1.0 + beta * s);
  return SpectralMultiplier(grid, std::move(k2));
}

void SpectralMultiplier::apply(std::span<const double> in, std::span<double> out) const {
  std::vector<std::complex<double>> spec(fft_.half_size());
  fft_.forward(in, spec);
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= symbol_[s];
  fft_.backward(spec, out);
}

Field SpectralMultiplier::apply(const Field& u) const {
  if (!(u.grid() == fft_.grid())) throw Error(ErrorCode::GridMismatch, "multiplier grid differs");
  Field out(u.grid());
  apply(u.values(), out.values());
  return out;
}

Field apply_spectral_operator(const Field& u, SpectralOperatorKind kind, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  const auto op = kind == SpectralOperatorKind::A ? SpectralMultiplier::operator_a(u.grid(), beta)
                                                  : SpectralMultiplier::operator_g(u.grid(), beta);
  return op.apply(u);
}

}  // namespace npf
