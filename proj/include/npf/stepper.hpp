#pragma once

#include <memory>
#include <vector>

#include "npf/grid.hpp"
#include "npf/kernel.hpp"
#include "npf/potential.hpp"
#include "npf/spectral.hpp"

namespace npf {

/// Per-step record of an implicit solve. `increments` holds the max-norm
/// change of every sweep.
struct IterationLog {
  std::vector<double> increments;
  int iterations() const noexcept { return static_cast<int>(increments.size()); }
};

// ---------------------------------------------------------------------------
// Allen-Cahn
// ---------------------------------------------------------------------------

struct ACConfig {
  double dt = 0.1;
  int order = 1;
  std::shared_ptr<const DiscreteKernel> kernel;
  PotentialSpec potential;
  double picard_tol = 1e-10;
  int picard_max = 500;

  double xi() const { return kernel->xi(potential.c_f); }
  /// xi + 1/dt for order 1, xi/2 + 1/dt for order 2.
  double lambda() const;
  void validate() const;
};

/// U_{n+1} = prox_{psi/lambda}((gamma o U_n + U_n / dt) / lambda), lambda = xi + 1/dt.
Field step_ac_order1(const Field& u_n, const ACConfig& cfg);

/// Crank-Nicolson-type step resolved by Picard sweeps started at U_n:
///   U <- prox_{psi/(2 lambda)}(((lambda - xi) U_n + gamma o (U + U_n)/2 - psi*(U_n)/2) / lambda)
/// with psi* = psi' (Regular, Logarithmic) or 0 (Obstacle), lambda = xi/2 + 1/dt.
Field step_ac_order2(const Field& u_n, const ACConfig& cfg, IterationLog* log = nullptr);

/// Dispatches on cfg.order.
Field step_ac(const Field& u_n, const ACConfig& cfg, IterationLog* log = nullptr);

/// Mean squared violation of the second-order scheme by the pair (U_n, U_next).
double residual_ac(const Field& u_n, const Field& u_next, const ACConfig& cfg);

// ---------------------------------------------------------------------------
// Cahn-Hilliard
// ---------------------------------------------------------------------------

struct CHConfig {
  double dt = 0.01;
  double beta = 0.0025;
  /// Stabilization constant c; values <= 0 select 2 max(1, xi_N).
  double stabilization = 0.0;
  std::shared_ptr<const DiscreteKernel> kernel;
  PotentialSpec potential;
  double tol = 1e-10;
  int max_iter = 500;
  /// Anderson mixing depth applied to the fixed-point map (0 = plain sweeps).
  int anderson_depth = 5;

  double xi() const { return kernel->xi(potential.c_f); }
  double resolved_stabilization() const;
  /// xi + c/dt.
  double lambda() const;
  void validate() const;
};

/// First-order stabilized CH stepper. Holds the spectral operators for one
/// configuration; `step` is const and reentrant.
///
/// Solves U = prox_{psi/lambda}(((G + cI)(U - U_n) / dt + gamma o U_n + c U_n / dt) / lambda)
/// with lambda = xi + c/dt. Plain sweeps contract only like 1 - 1/(c max|A|),
/// so the map is Anderson-mixed; the stopping test is on ||T(U) - U||_inf.
class CahnHilliardStepper {
 public:
  explicit CahnHilliardStepper(CHConfig cfg);

  const CHConfig& config() const noexcept { return cfg_; }
  Field step(const Field& u_n, IterationLog* log = nullptr) const;
  double residual(const Field& u_n, const Field& u_next) const;

 private:
  CHConfig cfg_;
  double c_;
  double lambda_;
  SpectralMultiplier op_a_;
  SpectralMultiplier op_g_;
};

Field step_ch_order1(const Field& u_n, const CHConfig& cfg, IterationLog* log = nullptr);
double residual_ch(const Field& u_n, const Field& u_next, const CHConfig& cfg);

}  // namespace npf
