#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "npf/config.hpp"
#include "npf/energy.hpp"
#include "npf/snapshot.hpp"
#include "npf/stepper.hpp"

namespace npf {

/// One-step solution operator selected by a SimConfig (AC order 1/2 or CH).
class PhaseFieldStepper {
 public:
  explicit PhaseFieldStepper(const SimConfig& cfg);

  Field step(const Field& u, IterationLog* log = nullptr) const;
  /// Residual of the scheme the stepper solves (AC order 2 form, or CH).
  double residual(const Field& u_n, const Field& u_next) const;

  const DiscreteKernel& kernel() const noexcept { return *kernel_; }
  std::shared_ptr<const DiscreteKernel> kernel_ptr() const noexcept { return kernel_; }
  const PotentialSpec& potential() const noexcept { return potential_; }
  double dt() const noexcept { return dt_; }

 private:
  std::shared_ptr<const DiscreteKernel> kernel_;
  PotentialSpec potential_;
  double dt_;
  std::optional<ACConfig> ac_;
  std::optional<CahnHilliardStepper> ch_;
};

struct RunOptions {
  /// Start from this state instead of the generated initial condition.
  std::optional<Field> initial;
  std::int64_t start_step = 0;
  /// Keep every snapshot-stride state in RunResult::snapshots.
  bool keep_snapshots = false;
};

struct RunResult {
  Field final_state;
  std::int64_t final_step = 0;
  std::vector<EnergyReport> energy;  ///< one row per step, including the start
  std::vector<double> step_seconds;
  std::vector<int> iterations;
  std::vector<std::pair<std::int64_t, Snapshot>> snapshots;
};

/// Advances from the initial condition to t_end. When cfg.output is set, the
/// directory receives config.txt, snap_<step>.npfs every `stride` steps (plus
/// the first and last), energy.csv and timing.csv. A failing step aborts the
/// run after the last good state is written.
RunResult run_simulation(const SimConfig& cfg, const RunOptions& options = {});

std::string snapshot_name(std::int64_t step);

struct SteadyResult {
  Field state;
  std::int64_t steps = 0;
  double rate = 0.0;  ///< last ||U_{n+1} - U_n||_inf / dt
  bool converged = false;
};

/// Steps an AC configuration until ||U_{n+1} - U_n||_inf / dt < stop_tol or
/// max_steps. Not converging is reported through the flag.
SteadyResult steady_state(const SimConfig& cfg, double stop_tol, std::int64_t max_steps);

struct ConvergenceRow {
  double dt = 0.0;
  double error = 0.0;
  double order = 0.0;  ///< log2(error(previous dt) / error(dt)); NaN for the first row
};

struct ConvergenceTable {
  double reference_dt = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// Self-convergence in time: runs each dt of the descending list and a
/// reference at min(dt_list) / 16, comparing final states in relative L2.
/// Runs execute on NPF_THREADS worker threads (default 1).
ConvergenceTable convergence_study(const SimConfig& cfg, const std::vector<double>& dt_list);

struct ComparisonRow {
  double time = 0.0;
  double error = 0.0;
};

/// Relative L2 error of A against B at every snapshot time the two directories
/// share. Throws GridMismatch or TimeMismatch.
std::vector<ComparisonRow> compare_trajectories(const std::filesystem::path& dir_a,
                                                const std::filesystem::path& dir_b);

/// Snapshots in a trajectory directory, ordered by step.
std::vector<std::pair<std::int64_t, std::filesystem::path>> list_snapshots(
    const std::filesystem::path& dir);

std::string energy_csv(const std::vector<EnergyReport>& rows);

/// Recomputes energy rows from the snapshots of a run directory.
std::vector<EnergyReport> recompute_energy(const std::filesystem::path& dir);

}  // namespace npf
