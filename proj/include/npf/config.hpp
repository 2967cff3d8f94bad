#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "npf/grid.hpp"
#include "npf/init_cond.hpp"
#include "npf/kernel.hpp"
#include "npf/potential.hpp"
#include "npf/stepper.hpp"

namespace npf {

enum class ModelKind { AC, CH };

std::string_view to_string(ModelKind kind) noexcept;

/// Run-level configuration. Persisted as flat `key = value` text, one key per
/// line, `#` starting a comment. Keys (defaults in parentheses):
///
///   model (ac)  dim (2)  n (64; one value or one per axis)  extent (1; X per axis)
///   delta (0.1)  epsilon (0.05)  potential (regular)  c_f (1)  theta_c (0.5)
///   dt (0.1)  order (1)  beta (0 = epsilon^2)  stab_c (0 = 2 max(1, xi_N))
///   picard_tol (1e-10)  picard_max (500)  anderson_depth (5)  t_end (1)  stride (1)
///   ic (bubbles)  ic_amplitude (0.95)  ic_corr_length (0.1)  star_radius (0.5)
///   star_amplitude (0.2)  star_arms (6)  star_width (0.05)  seed (0)  output ()
struct SimConfig {
  ModelKind model = ModelKind::AC;
  int dim = 2;
  std::vector<std::size_t> n{64};
  std::vector<double> extent{1.0};
  double delta = 0.1;
  double epsilon = 0.05;
  PotentialKind potential = PotentialKind::Regular;
  double c_f = 1.0;
  double theta_c = 0.5;
  double dt = 0.1;
  int order = 1;
  double beta = 0.0;
  double stab_c = 0.0;
  double picard_tol = 1e-10;
  int picard_max = 500;
  int anderson_depth = 5;
  double t_end = 1.0;
  std::int64_t stride = 1;
  InitialKind ic = InitialKind::Bubbles2D;
  double ic_amplitude = 0.95;
  double ic_corr_length = 0.1;
  double star_radius = 0.5;
  double star_amplitude = 0.2;
  int star_arms = 6;
  double star_width = 0.05;
  std::uint64_t seed = 0;
  std::string output;

  /// Sets one key from its text form; throws ConfigError on unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);
  static const std::vector<std::string>& keys();

  PeriodicGrid grid() const;
  KernelParams kernel_params() const;
  PotentialSpec potential_spec() const;
  InitialConditionSpec ic_spec() const;
  double resolved_beta() const { return beta > 0.0 ? beta : epsilon * epsilon; }

  /// Number of steps to reach t_end; throws ConfigError unless dt divides t_end.
  std::int64_t num_steps() const;
  /// Checks every module precondition (builds the kernel to do so).
  void validate() const;

  ACConfig ac_config(std::shared_ptr<const DiscreteKernel> kernel) const;
  CHConfig ch_config(std::shared_ptr<const DiscreteKernel> kernel) const;

  /// Text form with every key; CH runs record the resolved beta and c.
  std::string serialize() const;
};

SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace npf
