#include "npf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "npf/error.hpp"

namespace npf {

PeriodicGrid::PeriodicGrid(int dim, std::array<std::size_t, kMaxDim> sizes,
                           std::array<double, kMaxDim> half_extents)
    : dim_(dim), sizes_(sizes), half_extents_(half_extents) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::InvalidArgument, "grid dimension must be 1, 2 or 3");
  }
  cell_volume_ = 1.0;
  for (int a = 0; a < kMaxDim; ++a) {
    if (a < dim) {
      if (sizes_[a] < 4 || sizes_[a] % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "axis " + std::to_string(a) + ": N must be even and >= 4");
      }
      if (!(half_extents_[a] > 0.0) || !std::isfinite(half_extents_[a])) {
        throw Error(ErrorCode::InvalidArgument,
                    "axis " + std::to_string(a) + ": half-extent must be positive");
      }
      spacing_[a] = 2.0 * half_extents_[a] / static_cast<double>(sizes_[a]);
      cell_volume_ *= spacing_[a];
    } else {
      sizes_[a] = 1;
      half_extents_[a] = 1.0;
      spacing_[a] = 1.0;
    }
  }
}

PeriodicGrid PeriodicGrid::cube(int dim, std::size_t n, double half_extent) {
  return PeriodicGrid(dim, {n, n, n}, {half_extent, half_extent, half_extent});
}

double PeriodicGrid::domain_measure() const noexcept {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= 2.0 * half_extents_[a];
  return m;
}

std::array<std::size_t, PeriodicGrid::kMaxDim> PeriodicGrid::unflat(std::size_t idx) const noexcept {
  std::array<std::size_t, kMaxDim> out{};
  out[2] = idx % sizes_[2];
  idx /= sizes_[2];
  out[1] = idx % sizes_[1];
  out[0] = idx / sizes_[1];
  return out;
}

Field::Field(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.num_points()) {
    throw Error(ErrorCode::InvalidArgument, "field length does not match grid size");
  }
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double Field::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

std::size_t SpectralField::slot(long l, long m, long n) const {
  const std::array<long, 3> freq{l, m, n};
  std::array<std::size_t, 3> s{0, 0, 0};
  for (int a = 0; a < PeriodicGrid::kMaxDim; ++a) {
    const long len = static_cast<long>(grid_.size(a));
    if (a >= grid_.dim()) {
      if (freq[a] != 0) throw Error(ErrorCode::InvalidArgument, "frequency on unused axis");
      continue;
    }
    if (freq[a] <= -len / 2 || freq[a] > len / 2) {
      throw Error(ErrorCode::InvalidArgument, "frequency outside (-N/2, N/2]");
    }
    s[a] = static_cast<std::size_t>(freq[a] < 0 ? freq[a] + len : freq[a]);
  }
  return grid_.flat(s[0], s[1], s[2]);
}

std::complex<double>& SpectralField::at(long l, long m, long n) { return coeffs_[slot(l, m, n)]; }

const std::complex<double>& SpectralField::at(long l, long m, long n) const {
  return coeffs_[slot(l, m, n)];
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

}  // namespace npf
