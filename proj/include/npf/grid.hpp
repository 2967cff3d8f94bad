#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace npf {

/// Uniform periodic collocation grid on prod_a [-X_a, X_a).
///
/// Point (i_1, ..., i_d) sits at x_a = -X_a + i_a h_a with h_a = 2 X_a / N_a.
/// Unused trailing axes have N = 1 and are ignored by every operation.
class PeriodicGrid {
 public:
  static constexpr int kMaxDim = 3;

  PeriodicGrid() = default;
  PeriodicGrid(int dim, std::array<std::size_t, kMaxDim> sizes,
               std::array<double, kMaxDim> half_extents);

  /// d-dimensional grid with the same size and half-extent on every axis.
  static PeriodicGrid cube(int dim, std::size_t n, double half_extent = 1.0);

  int dim() const noexcept { return dim_; }
  std::size_t size(int axis) const noexcept { return sizes_[axis]; }
  double half_extent(int axis) const noexcept { return half_extents_[axis]; }
  double spacing(int axis) const noexcept { return spacing_[axis]; }
  const std::array<std::size_t, kMaxDim>& sizes() const noexcept { return sizes_; }
  const std::array<double, kMaxDim>& half_extents() const noexcept { return half_extents_; }

  std::size_t num_points() const noexcept { return sizes_[0] * sizes_[1] * sizes_[2]; }
  /// h_x h_y (h_z): the quadrature weight of one collocation point.
  double cell_volume() const noexcept { return cell_volume_; }
  /// Measure of the periodic box, prod 2 X_a.
  double domain_measure() const noexcept;

  /// Collocation coordinate along `axis` for index i.
  double coordinate(int axis, std::size_t i) const noexcept {
    return -half_extents_[axis] + static_cast<double>(i) * spacing_[axis];
  }

  /// Row-major flat index (last axis fastest).
  std::size_t flat(std::size_t i, std::size_t j = 0, std::size_t k = 0) const noexcept {
    return (i * sizes_[1] + j) * sizes_[2] + k;
  }
  std::array<std::size_t, kMaxDim> unflat(std::size_t idx) const noexcept;

  /// Signed frequency of FFT-order slot k on an axis of length n, in (-n/2, n/2].
  static long frequency(std::size_t k, std::size_t n) noexcept {
    return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
  }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.sizes_ == b.sizes_ && a.half_extents_ == b.half_extents_;
  }

 private:
  int dim_ = 0;
  std::array<std::size_t, kMaxDim> sizes_{1, 1, 1};
  std::array<double, kMaxDim> half_extents_{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> spacing_{1.0, 1.0, 1.0};
  double cell_volume_ = 1.0;
};

/// Real grid function U with U[flat(i,j,k)] = u(x_i, y_j, z_k).
class Field {
 public:
  Field() = default;
  explicit Field(const PeriodicGrid& grid, double fill = 0.0)
      : grid_(grid), values_(grid.num_points(), fill) {}
  Field(const PeriodicGrid& grid, std::vector<double> values);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& data() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  bool all_finite() const noexcept;
  double min() const noexcept;
  double max() const noexcept;
  double mean() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s) noexcept;

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

/// Complex coefficients over the full frequency set, stored in FFT slot order.
/// `at(l, m, n)` addresses the signed frequency with -N/2 < l <= N/2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const PeriodicGrid& grid)
      : grid_(grid), coeffs_(grid.num_points(), {0.0, 0.0}) {}

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::complex<double>& operator[](std::size_t slot) noexcept { return coeffs_[slot]; }
  const std::complex<double>& operator[](std::size_t slot) const noexcept { return coeffs_[slot]; }

  std::complex<double>& at(long l, long m = 0, long n = 0);
  const std::complex<double>& at(long l, long m = 0, long n = 0) const;

  std::span<std::complex<double>> coefficients() noexcept { return coeffs_; }
  std::span<const std::complex<double>> coefficients() const noexcept { return coeffs_; }

 private:
  std::size_t slot(long l, long m, long n) const;

  PeriodicGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Throws GridMismatch unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b);

}  // namespace npf
