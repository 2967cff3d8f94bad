#include "npf/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "npf/error.hpp"

namespace npf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) noexcept { return x == 0.0 ? 0.0 : x * std::log(x); }

// Real root of eta c_F u^3 + u = a for a > 0, via Cardano. The two cube roots
// multiply to -p/3, so the second is recovered from the first without the
// cancellation in zeta - s.
double cardano_positive(double a, double eta, double c_f) {
  const double k = eta * c_f;
  const double p = 1.0 / k;
  const double zeta = a / (2.0 * k);
  const double q = p / 3.0;
  const double s = std::hypot(zeta, q * std::sqrt(q));
  const double t = std::cbrt(zeta + s);
  double u = t - q / t;
  // One Newton step on the cubic absorbs the rounding of the closed form.
  u -= (k * u * u * u + u - a) / (3.0 * k * u * u + 1.0);
  return u;
}

// Root of u + eta theta_c atanh(u) = a for a > 0 on [0, kLogGuard].
double log_prox_positive(double a, double eta, double theta_c) {
  const double w = eta * theta_c;
  auto g = [&](double u) { return u + w * std::atanh(u) - a; };
  double lo = 0.0;
  double hi = kLogGuard;
  if (g(hi) <= 0.0) return hi;

  double u = std::min(a / (1.0 + w), hi);
  for (int it = 0; it < 200; ++it) {
    const double gu = g(u);
    if (gu == 0.0) return u;
    if (gu > 0.0) hi = u; else lo = u;
    double next = u - gu / (1.0 + w / (1.0 - u * u));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step <= 1e-14 * std::max(1.0, std::abs(u)) || hi - lo <= 1e-16) break;
  }
  return u;
}

}  // namespace

std::string_view to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::Regular: return "regular";
    case PotentialKind::Logarithmic: return "logarithmic";
    case PotentialKind::Obstacle: return "obstacle";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
  if (name == "regular") return PotentialKind::Regular;
  if (name == "logarithmic" || name == "log") return PotentialKind::Logarithmic;
  if (name == "obstacle") return PotentialKind::Obstacle;
  throw Error(ErrorCode::ConfigError, "unknown potential '" + std::string(name) + "'");
}

void PotentialSpec::validate() const {
  if (!(c_f > 0.0) || !std::isfinite(c_f)) {
    throw Error(ErrorCode::InvalidArgument, "c_F must be positive");
  }
  if (kind == PotentialKind::Logarithmic && !(theta_c > 0.0 && theta_c < c_f)) {
    throw Error(ErrorCode::InvalidArgument, "logarithmic potential needs 0 < theta_c < c_F");
  }
}

double PotentialSpec::rho1() const {
  if (kind != PotentialKind::Logarithmic) return 1.0;
  return binodal_log(theta_c, c_f);
}

bool PotentialSpec::admissible(double u) const noexcept {
  if (!std::isfinite(u)) return false;
  return kind == PotentialKind::Regular || std::abs(u) <= 1.0;
}

double F_value(double u, const PotentialSpec& spec) noexcept {
  switch (spec.kind) {
    case PotentialKind::Regular: {
      const double w = u * u - 1.0;
      return 0.25 * spec.c_f * w * w;
    }
    case PotentialKind::Logarithmic:
      if (!(std::abs(u) <= 1.0)) return kInf;
      return 0.5 * spec.c_f * (1.0 - u * u) + 0.5 * spec.theta_c * (xlogx(1.0 + u) + xlogx(1.0 - u));
    case PotentialKind::Obstacle:
      if (!(std::abs(u) <= 1.0)) return kInf;
      return 0.5 * spec.c_f * (1.0 - u * u);
  }
  return kInf;
}

double dpsi(double u, const PotentialSpec& spec) {
  switch (spec.kind) {
    case PotentialKind::Regular: return spec.c_f * u * u * u;
    case PotentialKind::Logarithmic:
      if (!(std::abs(u) <= kLogGuard)) {
        throw Error(ErrorCode::DomainViolation,
                    "logarithmic psi' evaluated at u = " + std::to_string(u));
      }
      // (theta_c / 2) ln((1 + u) / (1 - u))
      return spec.theta_c * std::atanh(u);
    case PotentialKind::Obstacle: return 0.0;
  }
  return 0.0;
}

double prox_psi(double z, double eta, const PotentialSpec& spec) {
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "prox step eta must be positive");
  if (spec.kind == PotentialKind::Obstacle) return project(z);
  if (z == 0.0) return 0.0;
  const double a = std::abs(z);
  const double u = spec.kind == PotentialKind::Regular ? cardano_positive(a, eta, spec.c_f)
                                                       : log_prox_positive(a, eta, spec.theta_c);
  return std::copysign(u, z);
}

double binodal_log(double theta_c, double c_f) {
  if (!(theta_c > 0.0 && theta_c < c_f)) {
    throw Error(ErrorCode::NoRoot, "binodal needs 0 < theta_c < c_F; the only root is 0");
  }
  auto h = [&](double u) { return theta_c * std::atanh(u) - c_f * u; };
  double lo = 0.0;
  double hi = std::nextafter(1.0, 0.0);
  if (h(hi) <= 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace npf
