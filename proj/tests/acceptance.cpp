// Acceptance suite: one PASS/FAIL line per criterion, with its runtime budget.
//
//   acceptance [--expect-fail NAME]...
//
// Exit status is 0 when every criterion passes, or when the only failures are
// named with --expect-fail (they are still printed as FAIL).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "npf/energy.hpp"
#include "npf/error.hpp"
#include "npf/init_cond.hpp"
#include "npf/kernel.hpp"
#include "npf/potential.hpp"
#include "npf/reference.hpp"
#include "npf/simulation.hpp"
#include "npf/spectral.hpp"

using namespace npf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Trajectory bookkeeping shared by several criteria.
struct TrajectoryAudit {
  int trajectories = 0;
  double worst_energy_rise = -INFINITY;
  std::string worst_label;
  int obstacle_trajectories = 0;
  double worst_bound_excess = 0.0;

  void add(const std::string& label, const std::vector<EnergyReport>& rows, bool obstacle) {
    ++trajectories;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double rise = rows[i].energy - rows[i - 1].energy;
      if (rise > worst_energy_rise) {
        worst_energy_rise = rise;
        worst_label = label;
      }
    }
    if (obstacle) {
      ++obstacle_trajectories;
      for (const auto& r : rows) {
        worst_bound_excess = std::max({worst_bound_excess, r.max - 1.0, -1.0 - r.min});
        if (std::isnan(r.min) || std::isnan(r.max)) worst_bound_excess = INFINITY;
      }
    }
  }
};

TrajectoryAudit g_audit;

RunResult audited_run(const std::string& label, const SimConfig& cfg) {
  RunResult r = run_simulation(cfg);
  g_audit.add(label, r.energy, cfg.potential == PotentialKind::Obstacle);
  return r;
}

Field random_field(const PeriodicGrid& g, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(g);
  for (auto& v : f.values()) v = dist(rng);
  return f;
}

// (U o V)_i = h^d sum_j U_j V_{i-j}, index arithmetic done per axis.
Field naive_convolution(const Field& u, const Field& v) {
  const PeriodicGrid& g = u.grid();
  Field out(g);
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto a = g.unflat(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < g.num_points(); ++j) {
      const auto b = g.unflat(j);
      std::array<std::size_t, 3> c{0, 0, 0};
      for (int ax = 0; ax < g.dim(); ++ax) c[ax] = (a[ax] + g.size(ax) - b[ax]) % g.size(ax);
      acc += u[j] * v[g.flat(c[0], c[1], c[2])];
    }
    out[i] = acc * g.cell_volume();
  }
  return out;
}

Outcome xi_table() {
  const auto g = PeriodicGrid::cube(2, 256);
  const double deltas[] = {0.05, 0.075, 0.095, 0.1};
  const double expected[] = {3.0, 0.778, 0.108, 0.0};
  double worst = 0.0;
  std::string values;
  for (int i = 0; i < 4; ++i) {
    const double xi = DiscreteKernel({deltas[i], 0.05, 2}, g).xi(1.0);
    worst = std::max(worst, std::abs(xi - expected[i]));
    values += format("%s%.6f", i ? ", " : "", xi);
  }
  return {worst <= 2e-3, format("xi = {%s}, max deviation %.2e (tol 2e-3)", values.c_str(), worst)};
}

Outcome binodal() {
  const double rho = binodal_log(0.5, 1.0);
  const double err = std::abs(rho - 0.95750402);
  return {err <= 1e-6, format("binodal_log(0.5, 1) = %.10f, deviation %.2e (tol 1e-6)", rho, err)};
}

Outcome convolution_oracle() {
  std::mt19937_64 rng(2024);
  const PeriodicGrid grids[] = {PeriodicGrid::cube(2, 4), PeriodicGrid::cube(2, 8),
                                PeriodicGrid::cube(2, 16), PeriodicGrid::cube(3, 4)};
  double worst = 0.0;
  for (int pair = 0; pair < 200; ++pair) {
    const PeriodicGrid& g = grids[pair % 4];
    const Field u = random_field(g, rng, -1.0, 1.0);
    const Field v = random_field(g, rng, -1.0, 1.0);
    const Field fast = circular_convolve(u, v);
    const Field slow = naive_convolution(u, v);
    double scale = 0.0;
    for (double x : slow.values()) scale = std::max(scale, std::abs(x));
    worst = std::max(worst, max_abs_difference(fast, slow) / scale);
  }
  return {worst <= 1e-12, format("200 pairs, max relative deviation %.2e (tol 1e-12)", worst)};
}

Outcome prox_oracles() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> z_dist(-1e3, 1e3);
  std::uniform_real_distribution<double> log_eta(-3.0, 3.0);
  const auto regular = PotentialSpec::regular();
  double worst_residual = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double z = i % 4 == 0 ? z_dist(rng) * 1e-6 : z_dist(rng);
    const double eta = std::pow(10.0, log_eta(rng));
    const double u = prox_psi(z, eta, regular);
    worst_residual = std::max(worst_residual, std::abs(u + eta * u * u * u - z));
  }
  const auto log = PotentialSpec::logarithmic(0.5);
  std::uniform_real_distribution<double> zl(-10.0, 10.0);
  std::uniform_real_distribution<double> log_eta_l(-3.0, 1.0);
  double worst_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double z = zl(rng);
    const double eta = std::pow(10.0, log_eta_l(rng));
    worst_gap = std::max(worst_gap, std::abs(prox_psi(z, eta, log) - reference::bisect_prox(z, eta, log)));
  }
  return {worst_residual <= 1e-10 && worst_gap <= 1e-12,
          format("Cardano residual %.2e over 1e4 points (tol 1e-10); log vs bisection %.2e over 1e3 "
                 "points (tol 1e-12)",
                 worst_residual, worst_gap)};
}

// Orders over every consecutive dt pair, plus the dissipation audit of each run.
Outcome convergence_case(const std::string& label, SimConfig cfg, const std::vector<double>& dts,
                         double lo, double hi, std::string& orders) {
  const ConvergenceTable table = convergence_study(cfg, dts);
  bool ok = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double p = table.rows[i].order;
    ok = ok && p >= lo && p <= hi;
    orders += format("%s%.3f", i > 1 ? " " : "", p);
  }
  for (double dt : dts) {
    cfg.dt = dt;
    audited_run(format("%s dt=%g", label.c_str(), dt), cfg);
  }
  return {ok, ""};
}

Outcome convergence_orders() {
  SimConfig ac = parse_config("model = ac\nn = 64\ndelta = 0.1\npotential = regular\nic = bubbles\nt_end = 1\n");
  std::string o1, o2, och;
  ac.order = 1;
  const bool p1 = convergence_case("AC1", ac, {0.1, 0.05, 0.025, 0.0125}, 0.8, 1.2, o1).pass;
  ac.order = 2;
  const bool p2 = convergence_case("AC2", ac, {0.1, 0.05, 0.025, 0.0125}, 1.7, 2.3, o2).pass;
  SimConfig ch = parse_config("model = ch\nn = 64\ndelta = 0.1\npotential = regular\nic = bubbles\nt_end = 0.08\n");
  const bool p3 = convergence_case("CH", ch, {0.01, 0.005, 0.0025}, 0.8, 1.2, och).pass;
  return {p1 && p2 && p3,
          format("AC order 1: [%s] in [0.8,1.2]; AC order 2: [%s] in [1.7,2.3]; CH: [%s] in [0.8,1.2]",
                 o1.c_str(), o2.c_str(), och.c_str())};
}

int max_cells_per_interface(const Field& u) {
  // Cells strictly inside (-1, 1), grouped into periodic runs.
  const std::size_t n = u.size();
  std::size_t start = 0;
  while (start < n && std::abs(u[start]) < 1.0) ++start;
  if (start == n) return static_cast<int>(n);
  int worst = 0, run = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (std::abs(u[(start + k) % n]) < 1.0) {
      worst = std::max(worst, ++run);
    } else {
      run = 0;
    }
  }
  return worst;
}

Outcome sharp_steady_state() {
  SimConfig cfg = parse_config("model = ac\ndim = 1\nn = 256\ndelta = 0.1\nic = sine\ndt = 0.1\n");
  cfg.potential = PotentialKind::Obstacle;
  const SteadyResult obstacle = steady_state(cfg, 1e-8, 100000);
  int pure = 0;
  for (double v : obstacle.state.values()) pure += (v == 1.0 || v == -1.0);
  const int widest = max_cells_per_interface(obstacle.state);
  cfg.t_end = static_cast<double>(obstacle.steps) * cfg.dt;
  audited_run("1D obstacle steady", cfg);

  cfg.potential = PotentialKind::Regular;
  cfg.t_end = 1.0;
  const SteadyResult regular = steady_state(cfg, 1e-8, 100000);
  const double max_abs = std::max(regular.state.max(), -regular.state.min());
  cfg.t_end = static_cast<double>(regular.steps) * cfg.dt;
  audited_run("1D regular steady", cfg);

  const bool ok = obstacle.converged && regular.converged && widest <= 2 && max_abs < 1.0;
  return {ok, format("obstacle: %d steps, %d/256 cells at +-1, widest interface %d cells (max 2); "
                     "regular: %d steps, max |u| = %.6f (< 1)",
                     static_cast<int>(obstacle.steps), pure, widest, static_cast<int>(regular.steps),
                     max_abs)};
}

Outcome bubble_vanishing() {
  SimConfig cfg = parse_config("model = ac\nn = 64\ndelta = 0.1\npotential = obstacle\nic = bubbles\n"
                               "dt = 0.1\nt_end = 100\n");
  const RunResult r = audited_run("bubbles obstacle", cfg);
  double vanished_at = NAN;
  for (const auto& row : r.energy) {
    if (row.max == -1.0) {
      vanished_at = row.time;
      break;
    }
  }
  const auto& last = r.energy.back();
  if (!std::isnan(vanished_at)) return {true, format("U == -1 reached at T = %.1f (< 100)", vanished_at)};
  return {false, format("not vanished by T = 100: mean %.4f (initial %.4f), max %.3f",
                        r.final_state.mean(), generate(cfg.ic_spec(), cfg.grid()).mean(), last.max)};
}

Outcome residual_stationarity() {
  std::mt19937_64 rng(99);
  const auto grid = PeriodicGrid::cube(2, 32);
  const PotentialKind kinds[] = {PotentialKind::Regular, PotentialKind::Obstacle, PotentialKind::Logarithmic};
  double worst_ac = 0.0, worst_ch = 0.0;
  for (int s = 0; s < 50; ++s) {
    SimConfig cfg = parse_config("n = 32\ndelta = 0.1\norder = 2\ndt = 0.1\n");
    cfg.potential = kinds[s % 3];
    const Field u0 = random_field(grid, rng, -0.95, 0.95);
    const PhaseFieldStepper ac(cfg);
    worst_ac = std::max(worst_ac, ac.residual(u0, ac.step(u0)));

    cfg.set("model", "ch");
    cfg.dt = 0.01;
    cfg.potential = kinds[s % 2];
    const PhaseFieldStepper ch(cfg);
    worst_ch = std::max(worst_ch, ch.residual(u0, ch.step(u0)));
  }
  return {worst_ac <= 1e-14 && worst_ch <= 1e-14,
          format("50 states: AC order 2 max %.2e, CH max %.2e (tol 1e-14)", worst_ac, worst_ch)};
}

// Runs after every trajectory-producing criterion; adds two short obstacle runs
// of its own so the bound check also covers AC order 2 and CH.
Outcome mbp_and_dissipation() {
  SimConfig ac = parse_config("n = 64\ndelta = 0.1\npotential = obstacle\nic = white-noise\norder = 2\n"
                              "dt = 0.1\nt_end = 2\nseed = 5\n");
  audited_run("AC2 obstacle noise", ac);
  SimConfig ch = parse_config("model = ch\nn = 64\ndelta = 0.1\npotential = obstacle\nic = white-noise\n"
                              "dt = 0.01\nt_end = 0.2\nseed = 5\n");
  audited_run("CH obstacle noise", ch);
  const bool ok = g_audit.worst_bound_excess == 0.0 && g_audit.worst_energy_rise <= 1e-9;
  return {ok, format("%d obstacle trajectories, max excursion outside [-1,1] %.2e (must be 0); "
                     "%d trajectories, worst energy rise %.2e (tol 1e-9) in %s",
                     g_audit.obstacle_trajectories, g_audit.worst_bound_excess, g_audit.trajectories,
                     g_audit.worst_energy_rise, g_audit.worst_label.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail NAME]...\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {"xi-table", 5.0, xi_table},
      {"binodal", 1.0, binodal},
      {"convolution-oracle", 10.0, convolution_oracle},
      {"prox-oracles", 5.0, prox_oracles},
      {"convergence-orders", 300.0, convergence_orders},
      {"sharp-steady-state", 30.0, sharp_steady_state},
      {"bubble-vanishing", 60.0, bubble_vanishing},
      {"residual-stationarity", 60.0, residual_stationarity},
      {"mbp-dissipation", 120.0, mbp_and_dissipation},
  };

  int unexpected = 0, failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = seconds <= c.budget_seconds;
    const bool pass = out.pass && in_budget;
    std::printf("%s  %-22s %7.2fs / %5.0fs  %s%s\n", pass ? "PASS" : "FAIL", c.name.c_str(), seconds,
                c.budget_seconds, out.detail.c_str(), in_budget ? "" : "  [over time budget]");
    std::fflush(stdout);
    if (!pass) {
      ++failed;
      if (!expected_failures.count(c.name)) ++unexpected;
    }
  }
  std::printf("%d/%zu criteria passed", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (failed > unexpected) std::printf(" (%d expected failure%s)", failed - unexpected, failed - unexpected == 1 ? "" : "s");
  std::printf("\n");
  return unexpected == 0 ? 0 : 1;
}
