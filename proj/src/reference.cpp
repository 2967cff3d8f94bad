#include "npf/reference.hpp"

#include <cmath>
#include <numbers>

namespace npf::reference {

SpectralField direct_dft(const Field& u) {
  const PeriodicGrid& g = u.grid();
  SpectralField out(g);
  for (std::size_t s = 0; s < g.num_points(); ++s) {
    const auto k = g.unflat(s);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t p = 0; p < g.num_points(); ++p) {
      const auto i = g.unflat(p);
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        const double l = static_cast<double>(PeriodicGrid::frequency(k[a], g.size(a)));
        phase += l * g.coordinate(a, i[a]) / g.half_extent(a);
      }
      sum += u[p] * std::polar(1.0, -std::numbers::pi * phase);
    }
    out[s] = sum;
  }
  return out;
}

std::vector<std::complex<double>> direct_idft(const SpectralField& spec) {
  const PeriodicGrid& g = spec.grid();
  std::vector<std::complex<double>> out(g.num_points());
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto i = g.unflat(p);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t s = 0; s < g.num_points(); ++s) {
      const auto k = g.unflat(s);
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        const double l = static_cast<double>(PeriodicGrid::frequency(k[a], g.size(a)));
        phase += l * g.coordinate(a, i[a]) / g.half_extent(a);
      }
      sum += spec[s] * std::polar(1.0, std::numbers::pi * phase);
    }
    out[p] = sum / static_cast<double>(g.num_points());
  }
  return out;
}

double bisect_prox(double z, double eta, const PotentialSpec& spec, int iterations) {
  if (spec.kind == PotentialKind::Obstacle) return z < -1.0 ? -1.0 : (z > 1.0 ? 1.0 : z);
  double lo = 0.0;
  double hi = 0.0;
  auto residual = [&](double u) {
    if (spec.kind == PotentialKind::Regular) return u + eta * spec.c_f * u * u * u - z;
    return u + eta * 0.5 * spec.theta_c * std::log((1.0 + u) / (1.0 - u)) - z;
  };
  if (spec.kind == PotentialKind::Regular) {
    // |u| <= |z| because u and psi'(u) share a sign.
    lo = -std::abs(z) - 1.0;
    hi = std::abs(z) + 1.0;
  } else {
    lo = -kLogGuard;
    hi = kLogGuard;
    if (residual(hi) <= 0.0) return hi;
    if (residual(lo) >= 0.0) return lo;
  }
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double double_sum_energy(const Field& u, const DiscreteKernel& kernel, const PotentialSpec& spec) {
  const PeriodicGrid& g = u.grid();
  const double h = g.cell_volume();
  double pair_sum = 0.0;
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto i = g.unflat(p);
    for (std::size_t q = 0; q < g.num_points(); ++q) {
      const auto j = g.unflat(q);
      // Periodic offset index of x_i - x_j.
      std::array<std::size_t, 3> d{};
      for (int a = 0; a < 3; ++a) d[a] = (i[a] + g.size(a) - j[a]) % g.size(a);
      const double diff = u[p] - u[q];
      pair_sum += diff * diff * kernel.samples()[g.flat(d[0], d[1], d[2])];
    }
  }
  double bulk = 0.0;
  for (double v : u.values()) bulk += F_value(v, spec);
  return 0.25 * h * h * pair_sum + h * bulk;
}

}  // namespace npf::reference
