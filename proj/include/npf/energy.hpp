#pragma once

#include <cstdint>
#include <utility>

#include "npf/grid.hpp"
#include "npf/kernel.hpp"
#include "npf/potential.hpp"

namespace npf {

struct EnergyReport {
  std::int64_t step = 0;
  double time = 0.0;
  double energy = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Discrete nonlocal Ginzburg-Landau energy
///   E_h(U) = 1/2 <U, c_gamma^N U - gamma o U>_h + <F(U), 1>_h,
/// equal to the collocation double sum 1/4 sum_ij (U_i - U_j)^2 gamma_{i-j} h^2d
/// plus the bulk term. Throws InadmissibleState when F(U) is infinite.
double nonlocal_energy(const Field& u, const DiscreteKernel& kernel, const PotentialSpec& spec);

EnergyReport energy_report(const Field& u, const DiscreteKernel& kernel,
                           const PotentialSpec& spec, std::int64_t step, double time);

/// (all values in [lo, hi], largest distance outside the interval).
std::pair<bool, double> mbp_check(const Field& u, double lo, double hi);

}  // namespace npf
