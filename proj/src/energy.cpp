#include "npf/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "npf/error.hpp"
#include "npf/spectral.hpp"

namespace npf {

double nonlocal_energy(const Field& u, const DiscreteKernel& kernel, const PotentialSpec& spec) {
  const Field conv = kernel.convolve(u);
  const double c = kernel.c_gamma();
  double interaction = 0.0;
  double bulk = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    interaction += u[i] * (c * u[i] - conv[i]);
    const double f = F_value(u[i], spec);
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::InadmissibleState,
                  "value " + std::to_string(u[i]) + " outside the potential's domain");
    }
    bulk += f;
  }
  return u.grid().cell_volume() * (0.5 * interaction + bulk);
}

EnergyReport energy_report(const Field& u, const DiscreteKernel& kernel,
                           const PotentialSpec& spec, std::int64_t step, double time) {
  return {step, time, nonlocal_energy(u, kernel, spec), u.min(), u.max()};
}

std::pair<bool, double> mbp_check(const Field& u, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "mbp_check needs lo < hi");
  double worst = 0.0;
  for (double v : u.values()) {
    if (std::isnan(v)) return {false, std::numeric_limits<double>::infinity()};
    worst = std::max({worst, lo - v, v - hi});
  }
  return {worst == 0.0, worst};
}

}  // namespace npf
