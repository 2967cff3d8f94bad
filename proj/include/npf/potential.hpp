#pragma once

#include <limits>
#include <string_view>

namespace npf {

enum class PotentialKind { Regular, Logarithmic, Obstacle };

std::string_view to_string(PotentialKind kind) noexcept;
PotentialKind parse_potential_kind(std::string_view name);

/// Largest |u| at which logarithmic terms are evaluated.
inline constexpr double kLogGuard = 1.0 - 1e-12;

/// Double-well F(u) = (c_F / 2)(1 - u^2) + psi(u) with psi one of
///   Regular:     (c_F / 4)(u^4 - 1)
///   Logarithmic: (theta_c / 2)((1 + u) ln(1 + u) + (1 - u) ln(1 - u)) on [-1, 1]
///   Obstacle:    indicator of [-1, 1]
struct PotentialSpec {
  PotentialKind kind = PotentialKind::Regular;
  double c_f = 1.0;
  double theta_c = 0.0;  ///< Logarithmic only, 0 < theta_c < c_F

  static PotentialSpec regular(double c_f = 1.0) { return {PotentialKind::Regular, c_f, 0.0}; }
  static PotentialSpec obstacle(double c_f = 1.0) { return {PotentialKind::Obstacle, c_f, 0.0}; }
  static PotentialSpec logarithmic(double theta_c, double c_f = 1.0) {
    return {PotentialKind::Logarithmic, c_f, theta_c};
  }

  void validate() const;
  /// Pure-phase bound rho_1 of the logarithmic potential (see binodal_log).
  double rho1() const;
  /// Whether u lies in dom(psi).
  bool admissible(double u) const noexcept;
};

/// F(u); +infinity outside [-1, 1] for Logarithmic and Obstacle.
double F_value(double u, const PotentialSpec& spec) noexcept;

/// psi'(u). Obstacle returns the interior selection 0. Logarithmic throws
/// DomainViolation for |u| > kLogGuard.
double dpsi(double u, const PotentialSpec& spec);

/// prox_{eta psi}(z) = (I + eta d psi)^{-1}(z), eta > 0.
double prox_psi(double z, double eta, const PotentialSpec& spec);

/// Projection onto [-1, 1].
constexpr double project(double z) noexcept { return z < -1.0 ? -1.0 : (z > 1.0 ? 1.0 : z); }

/// Positive root of (theta_c / 2) ln((1 + u) / (1 - u)) = c_F u. Throws NoRoot
/// unless 0 < theta_c < c_F.
double binodal_log(double theta_c, double c_f);

}  // namespace npf
