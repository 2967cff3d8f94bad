#include <algorithm>
#include <cmath>
#include <string>

#include "npf/error.hpp"
#include "npf/stepper.hpp"

namespace npf {
namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// psi' with logarithmic iterates pulled inside the guard band first.
double guarded_dpsi(double u, const PotentialSpec& spec) {
  if (spec.kind == PotentialKind::Logarithmic) u = std::clamp(u, -kLogGuard, kLogGuard);
  return dpsi(u, spec);
}

void require_kernel_grid(const Field& u, const DiscreteKernel& kernel) {
  if (!(u.grid() == kernel.grid())) {
    throw Error(ErrorCode::GridMismatch, "state grid differs from kernel grid");
  }
}

}  // namespace

double ACConfig::lambda() const { return (order == 2 ? 0.5 * xi() : xi()) + 1.0 / dt; }

void ACConfig::validate() const {
  if (!kernel) throw Error(ErrorCode::InvalidArgument, "ACConfig has no kernel");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (order != 1 && order != 2) throw Error(ErrorCode::InvalidArgument, "AC order must be 1 or 2");
  if (!(picard_tol > 0.0) || picard_max < 1) {
    throw Error(ErrorCode::InvalidArgument, "Picard tolerance and cap must be positive");
  }
  potential.validate();
  if (!(lambda() > 0.0)) {
    throw Error(ErrorCode::InvalidLambda, "lambda = " + std::to_string(lambda()) + " <= 0");
  }
}

Field step_ac_order1(const Field& u_n, const ACConfig& cfg) {
  ACConfig c1 = cfg;
  c1.order = 1;
  c1.validate();
  require_kernel_grid(u_n, *cfg.kernel);
  const double lambda = c1.lambda();
  const double inv_dt = 1.0 / cfg.dt;

  Field out = cfg.kernel->convolve(u_n);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = prox_psi((out[i] + inv_dt * u_n[i]) / lambda, 1.0 / lambda, cfg.potential);
  }
  return out;
}

Field step_ac_order2(const Field& u_n, const ACConfig& cfg, IterationLog* log) {
  ACConfig c2 = cfg;
  c2.order = 2;
  c2.validate();
  require_kernel_grid(u_n, *cfg.kernel);
  const double xi = c2.xi();
  const double lambda = c2.lambda();
  const double eta = 1.0 / (2.0 * lambda);
  const std::size_t n = u_n.size();

  // Sweep-invariant part of the prox argument, times lambda.
  std::vector<double> fixed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double explicit_psi =
        cfg.potential.kind == PotentialKind::Obstacle ? 0.0 : guarded_dpsi(u_n[i], cfg.potential);
    fixed[i] = (lambda - xi) * u_n[i] - 0.5 * explicit_psi;
  }

  Field current = u_n;
  Field next(u_n.grid());
  std::vector<double> mid(n);
  std::vector<double> conv(n);
  double increment = 0.0;
  for (int sweep = 0; sweep < cfg.picard_max; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (current[i] + u_n[i]);
    cfg.kernel->convolve(mid, conv);
    increment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = prox_psi((fixed[i] + conv[i]) / lambda, eta, cfg.potential);
      increment = std::max(increment, std::abs(next[i] - current[i]));
    }
    if (log) log->increments.push_back(increment);
    if (!std::isfinite(increment)) break;
    std::swap(current, next);
    if (increment <= std::max(cfg.picard_tol * max_abs(current.values()), 1e-13)) return current;
  }
  throw Error(ErrorCode::PicardDiverged,
              "no convergence after " + std::to_string(cfg.picard_max) +
                  " sweeps, last increment " + std::to_string(increment));
}

Field step_ac(const Field& u_n, const ACConfig& cfg, IterationLog* log) {
  return cfg.order == 2 ? step_ac_order2(u_n, cfg, log) : step_ac_order1(u_n, cfg);
}

double residual_ac(const Field& u_n, const Field& u_next, const ACConfig& cfg) {
  require_same_grid(u_n, u_next);
  require_kernel_grid(u_n, *cfg.kernel);
  const double xi = cfg.xi();
  const double dt = cfg.dt;
  const std::size_t n = u_n.size();

  Field mid(u_n.grid());
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (u_n[i] + u_next[i]);
  const Field conv = cfg.kernel->convolve(mid);

  double sum = 0.0;
  if (cfg.potential.kind == PotentialKind::Obstacle) {
    const double scale = 1.0 / (1.0 / dt + 0.5 * xi);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = u_next[i] - project(scale * ((1.0 / dt - 0.5 * xi) * u_n[i] + conv[i]));
      sum += r * r;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double psi_avg =
          0.5 * (guarded_dpsi(u_n[i], cfg.potential) + guarded_dpsi(u_next[i], cfg.potential));
      const double r = u_next[i] - u_n[i] + dt * (xi * mid[i] - conv[i] + psi_avg);
      sum += r * r;
    }
  }
  return sum / static_cast<double>(n);
}

}  // namespace npf
