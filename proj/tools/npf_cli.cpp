// npf: command-line front end for the nonlocal phase-field toolkit.
//
// Every subcommand that builds a simulation accepts --config FILE plus one
// --<key> VALUE flag per configuration key; flags override the file.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "npf/config.hpp"
#include "npf/error.hpp"
#include "npf/reference.hpp"
#include "npf/simulation.hpp"

namespace fs = std::filesystem;
using namespace npf;

namespace {

struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "flat key = value configuration file")->check(CLI::ExistingFile);
    for (const auto& key : SimConfig::keys()) {
      app->add_option("--" + key, overrides[key], "configuration key '" + key + "'");
    }
  }

  SimConfig build() const {
    SimConfig cfg = file.empty() ? SimConfig{} : load_config(file);
    for (const auto& [key, value] : overrides) {
      if (!value.empty()) cfg.set(key, value);
    }
    return cfg;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_atomic(out_path, text);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_run(const ConfigFlags& flags, const std::string& resume) {
  SimConfig cfg = flags.build();
  RunOptions options;
  if (!resume.empty()) {
    Snapshot snap = read_snapshot(resume);
    options.start_step = static_cast<std::int64_t>(std::llround(snap.time / cfg.dt));
    options.initial = std::move(snap.field);
  }
  const RunResult r = run_simulation(cfg, options);
  const auto& last = r.energy.back();
  std::printf("steps %lld  t %.6g  energy %.12g  min %.6g  max %.6g\n",
              static_cast<long long>(r.final_step), last.time, last.energy, last.min, last.max);
  if (!cfg.output.empty()) std::printf("wrote %s\n", cfg.output.c_str());
  return 0;
}

int cmd_steady(const ConfigFlags& flags, double stop_tol, std::int64_t max_steps,
               const std::string& out) {
  const SimConfig cfg = flags.build();
  const SteadyResult r = steady_state(cfg, stop_tol, max_steps);
  if (!out.empty()) write_snapshot(out, {r.state, static_cast<double>(r.steps) * cfg.dt});
  std::printf("steps %lld  rate %.3e  min %.17g  max %.17g\n", static_cast<long long>(r.steps),
              r.rate, r.state.min(), r.state.max());
  if (!r.converged) {
    std::fprintf(stderr, "npf: %s: stop tolerance not reached in %lld steps\n",
                 std::string(to_string(ErrorCode::NotConverged)).c_str(),
                 static_cast<long long>(max_steps));
    return 3;
  }
  return 0;
}

int cmd_convergence(const ConfigFlags& flags, const std::string& dts, const std::string& out) {
  const SimConfig cfg = flags.build();
  const ConvergenceTable table = convergence_study(cfg, parse_list(dts));
  std::ostringstream csv;
  csv << "dt,error,order\n";
  for (const auto& row : table.rows) {
    csv << fmt(row.dt) << "," << fmt(row.error) << "," << (std::isnan(row.order) ? "" : fmt(row.order))
        << "\n";
  }
  emit(out, csv.str());
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& out) {
  std::ostringstream csv;
  csv << "time,rel_l2_error\n";
  for (const auto& row : compare_trajectories(a, b)) csv << fmt(row.time) << "," << fmt(row.error) << "\n";
  emit(out, csv.str());
  return 0;
}

int cmd_gen_ic(const ConfigFlags& flags, const std::string& out) {
  const SimConfig cfg = flags.build();
  write_snapshot(out, {generate(cfg.ic_spec(), cfg.grid()), 0.0});
  return 0;
}

int cmd_export_kernel(const ConfigFlags& flags, const std::string& out) {
  const SimConfig cfg = flags.build();
  const DiscreteKernel kernel(cfg.kernel_params(), cfg.grid());
  write_snapshot(out, {kernel.samples(), 0.0});
  std::printf("c_gamma %.17g  xi %.17g\n", kernel.c_gamma(), kernel.xi(cfg.c_f));
  return 0;
}

// Regular: residual of the cubic u + eta c_F u^3 = z at the returned u.
// Logarithmic: difference from 128-step bisection.
int cmd_prox_selftest(int points, std::uint64_t seed, double theta, const std::string& out_dir) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_z(-6.0, 6.0);
  std::uniform_real_distribution<double> log_eta(-6.0, 4.0);
  std::uniform_real_distribution<double> sign(-1.0, 1.0);

  const PotentialSpec reg = PotentialSpec::regular();
  const PotentialSpec lg = PotentialSpec::logarithmic(theta);
  std::ostringstream reg_csv;
  std::ostringstream log_csv;
  reg_csv << "z,eta,u,residual\n";
  log_csv << "z,eta,u,u_bisect,difference\n";
  double worst_reg = 0.0;
  double worst_log = 0.0;
  for (int i = 0; i < points; ++i) {
    const double z = std::copysign(std::pow(10.0, log_z(rng)), sign(rng));
    const double eta = std::pow(10.0, log_eta(rng));
    const double u = prox_psi(z, eta, reg);
    const double res = std::abs(u + eta * reg.c_f * u * u * u - z) / std::max(1.0, std::abs(z));
    worst_reg = std::max(worst_reg, res);
    reg_csv << fmt(z) << "," << fmt(eta) << "," << fmt(u) << "," << fmt(res) << "\n";

    const double ul = prox_psi(z, eta, lg);
    const double ub = reference::bisect_prox(z, eta, lg);
    worst_log = std::max(worst_log, std::abs(ul - ub));
    log_csv << fmt(z) << "," << fmt(eta) << "," << fmt(ul) << "," << fmt(ub) << ","
            << fmt(std::abs(ul - ub)) << "\n";
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_atomic(fs::path(out_dir) / "prox_regular.csv", reg_csv.str());
    write_text_atomic(fs::path(out_dir) / "prox_logarithmic.csv", log_csv.str());
  }
  std::printf("regular     points %d  max relative residual %.3e\n", points, worst_reg);
  std::printf("logarithmic points %d  max |prox - bisection| %.3e\n", points, worst_log);
  return 0;
}

int cmd_bench(const ConfigFlags& flags, int steps, const std::string& out) {
  const SimConfig cfg = flags.build();
  cfg.validate();
  const PhaseFieldStepper stepper(cfg);
  Field u = generate(cfg.ic_spec(), cfg.grid());
  std::ostringstream csv;
  csv << "step,seconds,iterations\n";
  double total = 0.0;
  for (int s = 1; s <= steps; ++s) {
    IterationLog log;
    const auto t0 = std::chrono::steady_clock::now();
    u = stepper.step(u, &log);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += sec;
    csv << s << "," << fmt(sec) << "," << std::max(1, log.iterations()) << "\n";
  }
  if (!out.empty()) write_text_atomic(out, csv.str());
  std::printf("%d steps on %zu points: mean %.6g s/step\n", steps, cfg.grid().num_points(),
              steps > 0 ? total / steps : 0.0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal Allen-Cahn / Cahn-Hilliard phase-field toolkit"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string resume;
  auto* run = app.add_subcommand("run", "advance to t_end, writing snapshots and logs");
  run_flags.attach(run);
  run->add_option("--resume", resume, "continue from this snapshot")->check(CLI::ExistingFile);

  ConfigFlags steady_flags;
  double stop_tol = 1e-8;
  std::int64_t max_steps = 100000;
  std::string steady_out;
  auto* steady = app.add_subcommand("steady", "step an AC run to its steady state");
  steady_flags.attach(steady);
  steady->add_option("--stop-tol", stop_tol, "stop when max|U_{n+1} - U_n| / dt < tol");
  steady->add_option("--max-steps", max_steps, "step cap");
  steady->add_option("--out", steady_out, "write the final state as a snapshot");

  ConfigFlags conv_flags;
  std::string dts;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "temporal self-convergence table (CSV)");
  conv_flags.attach(conv);
  conv->add_option("--dts", dts, "descending comma-separated time steps")->required();
  conv->add_option("--out", conv_out, "CSV path (default stdout)");

  std::string dir_a;
  std::string dir_b;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "relative L2 error between two trajectories (CSV)");
  cmp->add_option("dir_a", dir_a)->required()->check(CLI::ExistingDirectory);
  cmp->add_option("dir_b", dir_b, "reference trajectory")->required()->check(CLI::ExistingDirectory);
  cmp->add_option("--out", cmp_out, "CSV path (default stdout)");

  std::string energy_dir;
  std::string energy_out;
  auto* energy = app.add_subcommand("energy", "recompute the energy CSV from a run's snapshots");
  energy->add_option("dir", energy_dir)->required()->check(CLI::ExistingDirectory);
  energy->add_option("--out", energy_out, "CSV path (default stdout)");

  ConfigFlags ic_flags;
  std::string ic_out;
  auto* gen_ic = app.add_subcommand("gen-ic", "write the configured initial condition");
  ic_flags.attach(gen_ic);
  gen_ic->add_option("--out", ic_out, "snapshot path")->required();

  ConfigFlags kernel_flags;
  std::string kernel_out;
  auto* kernel = app.add_subcommand("export-kernel", "write the discrete kernel samples as a snapshot");
  kernel_flags.attach(kernel);
  kernel->add_option("--out", kernel_out, "snapshot path")->required();

  int prox_points = 10000;
  std::uint64_t prox_seed = 1;
  double prox_theta = 0.5;
  std::string prox_dir;
  auto* prox = app.add_subcommand("prox-selftest", "tabulate prox results against their oracles");
  prox->add_option("--points", prox_points, "sample count")->check(CLI::PositiveNumber);
  prox->add_option("--seed", prox_seed);
  prox->add_option("--theta_c", prox_theta, "logarithmic theta_c (c_F = 1)");
  prox->add_option("--out-dir", prox_dir, "directory for prox_regular.csv and prox_logarithmic.csv");

  ConfigFlags bench_flags;
  int bench_steps = 20;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "per-step wall-clock timing");
  bench_flags.attach(bench);
  bench->add_option("--steps", bench_steps)->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "timing CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_flags, resume);
    if (*steady) return cmd_steady(steady_flags, stop_tol, max_steps, steady_out);
    if (*conv) return cmd_convergence(conv_flags, dts, conv_out);
    if (*cmp) return cmd_compare(dir_a, dir_b, cmp_out);
    if (*energy) {
      emit(energy_out, energy_csv(recompute_energy(energy_dir)));
      return 0;
    }
    if (*gen_ic) return cmd_gen_ic(ic_flags, ic_out);
    if (*kernel) return cmd_export_kernel(kernel_flags, kernel_out);
    if (*prox) return cmd_prox_selftest(prox_points, prox_seed, prox_theta, prox_dir);
    if (*bench) return cmd_bench(bench_flags, bench_steps, bench_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "npf: %s\n", e.what());
    return 2;
  }
  return 1;
}
