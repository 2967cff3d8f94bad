#include "npf/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <limits>
#include <map>
#include <regex>
#include <sstream>

#include "npf/error.hpp"
#include "npf/init_cond.hpp"

namespace npf {
namespace fs = std::filesystem;

PhaseFieldStepper::PhaseFieldStepper(const SimConfig& cfg)
    : kernel_(std::make_shared<const DiscreteKernel>(cfg.kernel_params(), cfg.grid())),
      potential_(cfg.potential_spec()),
      dt_(cfg.dt) {
  if (cfg.model == ModelKind::AC) {
    ac_ = cfg.ac_config(kernel_);
    ac_->validate();
  } else {
    ch_.emplace(cfg.ch_config(kernel_));
  }
}

Field PhaseFieldStepper::step(const Field& u, IterationLog* log) const {
  return ac_ ? step_ac(u, *ac_, log) : ch_->step(u, log);
}

double PhaseFieldStepper::residual(const Field& u_n, const Field& u_next) const {
  return ac_ ? residual_ac(u_n, u_next, *ac_) : ch_->residual(u_n, u_next);
}

std::string snapshot_name(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%08lld.npfs", static_cast<long long>(step));
  return buf;
}

std::string energy_csv(const std::vector<EnergyReport>& rows) {
  std::ostringstream out;
  out << "step,time,energy,min,max\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.step), r.time, r.energy, r.min, r.max);
    out << buf;
  }
  return out.str();
}

namespace {

std::string timing_csv(std::int64_t first_step, const std::vector<double>& seconds,
                       const std::vector<int>& iterations) {
  std::ostringstream out;
  out << "step,seconds,iterations\n";
  char buf[96];
  for (std::size_t i = 0; i < seconds.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.9g,%d\n",
                  static_cast<long long>(first_step + static_cast<std::int64_t>(i) + 1),
                  seconds[i], iterations[i]);
    out << buf;
  }
  return out.str();
}

int worker_threads() {
  if (const char* env = std::getenv("NPF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

RunResult run_simulation(const SimConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const PhaseFieldStepper stepper(cfg);
  const std::int64_t last_step = cfg.num_steps();
  const bool write = !cfg.output.empty();
  const fs::path dir = cfg.output;
  if (write) {
    fs::create_directories(dir);
    write_text_atomic(dir / "config.txt", cfg.serialize());
  }

  RunResult result;
  std::int64_t step = options.start_step;
  Field u = options.initial ? *options.initial : generate(cfg.ic_spec(), cfg.grid());
  if (!(u.grid() == cfg.grid())) throw Error(ErrorCode::GridMismatch, "initial state grid differs");

  std::int64_t last_saved = -1;
  auto record_snapshot = [&](std::int64_t s, const Field& state) {
    Snapshot snap{state, static_cast<double>(s) * cfg.dt};
    if (write) write_snapshot(dir / snapshot_name(s), snap);
    if (options.keep_snapshots) result.snapshots.emplace_back(s, std::move(snap));
    last_saved = s;
  };
  auto flush_logs = [&] {
    if (!write) return;
    write_text_atomic(dir / "energy.csv", energy_csv(result.energy));
    write_text_atomic(dir / "timing.csv",
                      timing_csv(options.start_step, result.step_seconds, result.iterations));
  };

  result.energy.push_back(
      energy_report(u, stepper.kernel(), stepper.potential(), step, step * cfg.dt));
  record_snapshot(step, u);

  while (step < last_step) {
    IterationLog log;
    const auto t0 = std::chrono::steady_clock::now();
    Field next;
    try {
      next = stepper.step(u, &log);
    } catch (...) {
      if (last_saved != step) record_snapshot(step, u);
      flush_logs();
      throw;
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.step_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    result.iterations.push_back(std::max(1, log.iterations()));
    ++step;
    u = std::move(next);
    result.energy.push_back(
        energy_report(u, stepper.kernel(), stepper.potential(), step, step * cfg.dt));
    if (step % cfg.stride == 0 || step == last_step) record_snapshot(step, u);
  }
  flush_logs();
  result.final_state = std::move(u);
  result.final_step = step;
  return result;
}

SteadyResult steady_state(const SimConfig& cfg, double stop_tol, std::int64_t max_steps) {
  if (cfg.model != ModelKind::AC) {
    throw Error(ErrorCode::InvalidArgument, "steady-state solve is defined for the AC model");
  }
  cfg.validate();
  const PhaseFieldStepper stepper(cfg);
  SteadyResult result;
  result.state = generate(cfg.ic_spec(), cfg.grid());
  result.rate = std::numeric_limits<double>::infinity();
  while (result.steps < max_steps) {
    Field next = stepper.step(result.state);
    result.rate = max_abs_difference(next, result.state) / cfg.dt;
    result.state = std::move(next);
    ++result.steps;
    if (result.rate < stop_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

ConvergenceTable convergence_study(const SimConfig& cfg, const std::vector<double>& dt_list) {
  if (dt_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty dt list");
  for (std::size_t i = 1; i < dt_list.size(); ++i) {
    if (!(dt_list[i] < dt_list[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "dt list must be strictly descending");
    }
  }
  ConvergenceTable table;
  table.reference_dt = dt_list.back() / 16.0;

  std::vector<double> all = dt_list;
  all.push_back(table.reference_dt);
  auto final_state = [&](double dt) {
    SimConfig c = cfg;
    c.dt = dt;
    c.output.clear();
    c.stride = std::numeric_limits<std::int64_t>::max();
    return run_simulation(c).final_state;
  };

  std::vector<Field> finals(all.size());
  const int threads = worker_threads();
  for (std::size_t begin = 0; begin < all.size(); begin += threads) {
    const std::size_t end = std::min(all.size(), begin + static_cast<std::size_t>(threads));
    std::vector<std::future<Field>> jobs;
    for (std::size_t i = begin; i < end; ++i) {
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                final_state, all[i]));
    }
    for (std::size_t i = begin; i < end; ++i) finals[i] = jobs[i - begin].get();
  }

  const Field& reference = finals.back();
  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    ConvergenceRow row{dt_list[i], rel_l2_error(finals[i], reference),
                       std::numeric_limits<double>::quiet_NaN()};
    if (i > 0) {
      row.order = std::log2(table.rows.back().error / row.error) /
                  std::log2(dt_list[i - 1] / dt_list[i]);
    }
    table.rows.push_back(row);
  }
  return table;
}

std::vector<std::pair<std::int64_t, fs::path>> list_snapshots(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  static const std::regex pattern(R"(snap_(\d+)\.npfs)");
  std::vector<std::pair<std::int64_t, fs::path>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) out.emplace_back(std::stoll(m[1].str()), entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ComparisonRow> compare_trajectories(const fs::path& dir_a, const fs::path& dir_b) {
  std::vector<Snapshot> a;
  std::vector<Snapshot> b;
  for (const auto& [step, path] : list_snapshots(dir_a)) a.push_back(read_snapshot(path));
  for (const auto& [step, path] : list_snapshots(dir_b)) b.push_back(read_snapshot(path));
  if (a.empty() || b.empty()) throw Error(ErrorCode::TimeMismatch, "a directory has no snapshots");
  if (!(a.front().field.grid() == b.front().field.grid())) {
    throw Error(ErrorCode::GridMismatch, "trajectories use different grids");
  }

  std::vector<ComparisonRow> rows;
  for (const auto& sa : a) {
    for (const auto& sb : b) {
      if (std::abs(sa.time - sb.time) <= 1e-9 * std::max(1.0, std::abs(sa.time))) {
        rows.push_back({sa.time, rel_l2_error(sa.field, sb.field)});
        break;
      }
    }
  }
  if (rows.empty()) throw Error(ErrorCode::TimeMismatch, "trajectories share no snapshot time");
  return rows;
}

std::vector<EnergyReport> recompute_energy(const fs::path& dir) {
  const SimConfig cfg = load_config(dir / "config.txt");
  const DiscreteKernel kernel(cfg.kernel_params(), cfg.grid());
  const PotentialSpec spec = cfg.potential_spec();
  std::vector<EnergyReport> rows;
  for (const auto& [step, path] : list_snapshots(dir)) {
    const Snapshot snap = read_snapshot(path);
    rows.push_back(energy_report(snap.field, kernel, spec, step, snap.time));
  }
  return rows;
}

}  // namespace npf
