#include <algorithm>
#include <cmath>
#include <string>

#include "anderson.hpp"
#include "npf/error.hpp"
#include "npf/stepper.hpp"

namespace npf {
namespace {

double guarded_dpsi(double u, const PotentialSpec& spec) {
  if (spec.kind == PotentialKind::Logarithmic) u = std::clamp(u, -kLogGuard, kLogGuard);
  return dpsi(u, spec);
}

CHConfig validated(CHConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

double CHConfig::resolved_stabilization() const {
  return stabilization > 0.0 ? stabilization : 2.0 * std::max(1.0, xi());
}

double CHConfig::lambda() const { return xi() + resolved_stabilization() / dt; }

void CHConfig::validate() const {
  if (!kernel) throw Error(ErrorCode::InvalidArgument, "CHConfig has no kernel");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "CH needs beta > 0");
  if (anderson_depth < 0) throw Error(ErrorCode::InvalidArgument, "anderson_depth must be >= 0");
  if (!(tol > 0.0) || max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "fixed-point tolerance and cap must be positive");
  }
  potential.validate();
  if (!(lambda() > 0.0)) {
    throw Error(ErrorCode::InvalidLambda, "lambda = " + std::to_string(lambda()) + " <= 0");
  }
}

CahnHilliardStepper::CahnHilliardStepper(CHConfig cfg)
    : cfg_(validated(std::move(cfg))),
      c_(cfg_.resolved_stabilization()),
      lambda_(cfg_.lambda()),
      op_a_(SpectralMultiplier::operator_a(cfg_.kernel->grid(), cfg_.beta)),
      op_g_(SpectralMultiplier::operator_g(cfg_.kernel->grid(), cfg_.beta)) {}

Field CahnHilliardStepper::step(const Field& u_n, IterationLog* log) const {
  if (!(u_n.grid() == cfg_.kernel->grid())) {
    throw Error(ErrorCode::GridMismatch, "state grid differs from kernel grid");
  }
  const double dt = cfg_.dt;
  const double eta = 1.0 / lambda_;
  const std::size_t n = u_n.size();

  // gamma o U_n + (c / dt) U_n is fixed across iterations.
  std::vector<double> fixed(n);
  cfg_.kernel->convolve(u_n.values(), fixed);
  for (std::size_t i = 0; i < n; ++i) fixed[i] += (c_ / dt) * u_n[i];

  Field current = u_n;
  Field next(u_n.grid());
  std::vector<double> diff(n);
  std::vector<double> g_diff(n);
  detail::AndersonMixer mixer(n, cfg_.anderson_depth);
  double increment = 0.0;
  for (int it = 0; it < cfg_.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) diff[i] = current[i] - u_n[i];
    op_g_.apply(diff, g_diff);
    increment = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = ((g_diff[i] + c_ * diff[i]) / dt + fixed[i]) * eta;
      next[i] = prox_psi(arg, eta, cfg_.potential);
      increment = std::max(increment, std::abs(next[i] - current[i]));
      scale = std::max(scale, std::abs(next[i]));
    }
    if (log) log->increments.push_back(increment);
    if (!std::isfinite(increment)) break;
    // The accepted state is always a prox output, never a mixed iterate.
    if (increment <= std::max(cfg_.tol * scale, 1e-13)) return next;
    mixer.next(current.values(), next.values(), current.values());
  }
  throw Error(ErrorCode::FixedPointDiverged,
              "no convergence after " + std::to_string(cfg_.max_iter) +
                  " iterations, last increment " + std::to_string(increment));
}

double CahnHilliardStepper::residual(const Field& u_n, const Field& u_next) const {
  require_same_grid(u_n, u_next);
  if (!(u_n.grid() == cfg_.kernel->grid())) {
    throw Error(ErrorCode::GridMismatch, "state grid differs from kernel grid");
  }
  const double dt = cfg_.dt;
  const double xi = cfg_.xi();
  const std::size_t n = u_n.size();
  const Field conv = cfg_.kernel->convolve(u_n);

  double sum = 0.0;
  if (cfg_.potential.kind == PotentialKind::Obstacle) {
    Field diff = u_next - u_n;
    const Field g_diff = op_g_.apply(diff);
    const double scale = 1.0 / (c_ / dt + xi);
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = (g_diff[i] + c_ * diff[i]) / dt + conv[i] + (c_ / dt) * u_n[i];
      const double r = u_next[i] - project(scale * arg);
      sum += r * r;
    }
  } else {
    Field mu(u_n.grid());
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = xi * u_next[i] - conv[i] + guarded_dpsi(u_next[i], cfg_.potential);
    }
    const Field a_mu = op_a_.apply(mu);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = u_next[i] - u_n[i] + dt * a_mu[i];
      sum += r * r;
    }
  }
  return sum / static_cast<double>(n);
}

Field step_ch_order1(const Field& u_n, const CHConfig& cfg, IterationLog* log) {
  return CahnHilliardStepper(cfg).step(u_n, log);
}

double residual_ch(const Field& u_n, const Field& u_next, const CHConfig& cfg) {
  return CahnHilliardStepper(cfg).residual(u_n, u_next);
}

}  // namespace npf
