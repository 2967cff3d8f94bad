#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "npf/error.hpp"
#include "npf/simulation.hpp"

using namespace npf;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() / ("npf_sim_" + tag)) {
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

SimConfig small_ac(int order = 1) {
  SimConfig c = parse_config("n = 16\ndt = 0.1\nt_end = 0.2\nic = white-noise\nseed = 3\n");
  c.order = order;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool bit_equal(const Field& a, const Field& b) {
  return a.grid() == b.grid() &&
         std::memcmp(a.data().data(), b.data().data(), sizeof(double) * a.size()) == 0;
}

}  // namespace

TEST(SnapshotName, ZeroPadded) {
  EXPECT_EQ(snapshot_name(0), "snap_00000000.npfs");
  EXPECT_EQ(snapshot_name(1234), "snap_00001234.npfs");
}

TEST(RunSimulation, WritesExpectedFiles) {
  TempDir dir("files");
  SimConfig c = small_ac();
  c.output = dir.str();
  const RunResult r = run_simulation(c);
  EXPECT_EQ(r.final_step, 2);
  const auto snaps = list_snapshots(dir.path());
  ASSERT_EQ(snaps.size(), 3u);
  EXPECT_EQ(snaps[0].first, 0);
  EXPECT_EQ(snaps[2].first, 2);
  EXPECT_DOUBLE_EQ(read_snapshot(snaps[1].second).time, 0.1);
  EXPECT_TRUE(bit_equal(read_snapshot(snaps[2].second).field, r.final_state));

  const std::string energy = slurp(dir.path() / "energy.csv");
  EXPECT_EQ(energy.rfind("step,time,energy,min,max\n", 0), 0u);
  EXPECT_EQ(std::count(energy.begin(), energy.end(), '\n'), 4);
  EXPECT_EQ(energy, energy_csv(r.energy));
  const std::string timing = slurp(dir.path() / "timing.csv");
  EXPECT_EQ(timing.rfind("step,seconds,iterations\n", 0), 0u);
  EXPECT_EQ(std::count(timing.begin(), timing.end(), '\n'), 3);
  EXPECT_EQ(slurp(dir.path() / "config.txt"), c.serialize());
}

TEST(RunSimulation, StrideKeepsFirstAndLast) {
  SimConfig c = small_ac();
  c.t_end = 0.7;
  c.stride = 3;
  RunOptions opts;
  opts.keep_snapshots = true;
  const RunResult r = run_simulation(c, opts);
  std::vector<std::int64_t> steps;
  for (const auto& [s, snap] : r.snapshots) steps.push_back(s);
  EXPECT_EQ(steps, (std::vector<std::int64_t>{0, 3, 6, 7}));
  EXPECT_EQ(r.energy.size(), 8u);
}

TEST(RunSimulation, RestartIsBitIdentical) {
  for (const char* model : {"ac", "ch"}) {
    SimConfig c = small_ac(2);
    c.set("model", model);
    c.dt = 0.01;
    c.t_end = 0.04;
    RunOptions opts;
    opts.keep_snapshots = true;
    const RunResult full = run_simulation(c, opts);

    RunOptions resume;
    resume.initial = full.snapshots[2].second.field;
    resume.start_step = full.snapshots[2].first;
    const RunResult tail = run_simulation(c, resume);
    EXPECT_EQ(tail.final_step, full.final_step);
    EXPECT_TRUE(bit_equal(tail.final_state, full.final_state)) << model;
    EXPECT_EQ(tail.energy.back().energy, full.energy.back().energy);
  }
}

TEST(RunSimulation, SerializedConfigReproducesRun) {
  TempDir dir("reproduce");
  SimConfig c = small_ac(2);
  c.set("potential", "obstacle");
  c.output = dir.str();
  const RunResult first = run_simulation(c);
  SimConfig again = load_config(dir.path() / "config.txt");
  again.output.clear();
  EXPECT_TRUE(bit_equal(run_simulation(again).final_state, first.final_state));
}

TEST(RunSimulation, RejectsForeignInitialState) {
  RunOptions opts;
  opts.initial = Field(PeriodicGrid::cube(2, 8));
  try {
    run_simulation(small_ac(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(RunSimulation, FailingStepKeepsLastGoodState) {
  TempDir dir("failing");
  SimConfig c = small_ac(2);
  c.picard_max = 1;
  c.output = dir.str();
  EXPECT_THROW(run_simulation(c), Error);
  const auto snaps = list_snapshots(dir.path());
  ASSERT_EQ(snaps.size(), 1u);
  EXPECT_EQ(snaps[0].first, 0);
  EXPECT_TRUE(fs::exists(dir.path() / "energy.csv"));
}

TEST(PhaseFieldStepper, DispatchesByModel) {
  SimConfig c = small_ac(2);
  const PhaseFieldStepper ac(c);
  const Field u0 = generate(c.ic_spec(), c.grid());
  const Field u1 = ac.step(u0);
  EXPECT_LE(ac.residual(u0, u1), 1e-16);
  c.set("model", "ch");
  c.dt = 0.01;
  const PhaseFieldStepper ch(c);
  const Field v1 = ch.step(u0);
  EXPECT_LE(ch.residual(u0, v1), 1e-16);
  EXPECT_GT(max_abs_difference(u1, v1), 1e-3);
}

TEST(CompareTrajectories, IdenticalAndShifted) {
  TempDir a("cmp_a"), b("cmp_b"), g("cmp_g");
  SimConfig c = small_ac();
  c.output = a.str();
  run_simulation(c);
  c.output = b.str();
  run_simulation(c);
  for (const auto& row : compare_trajectories(a.path(), b.path())) EXPECT_EQ(row.error, 0.0);

  c.output = b.str();
  c.dt = 0.05;
  c.stride = 2;
  run_simulation(c);
  const auto rows = compare_trajectories(a.path(), b.path());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].error, 0.0);
  EXPECT_GT(rows[2].error, 0.0);
  EXPECT_LT(rows[2].error, 0.05);

  SimConfig other = small_ac();
  other.set("n", "8");
  other.output = g.str();
  run_simulation(other);
  try {
    compare_trajectories(a.path(), g.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(CompareTrajectories, NoSharedTime) {
  TempDir a("time_a"), b("time_b");
  SimConfig c = small_ac();
  c.output = a.str();
  run_simulation(c);
  fs::create_directories(b.path());
  fs::copy_file(a.path() / "config.txt", b.path() / "config.txt");
  write_snapshot(b.path() / snapshot_name(7), {read_snapshot(a.path() / snapshot_name(0)).field, 0.7});
  try {
    compare_trajectories(a.path(), b.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TimeMismatch);
  }
}

TEST(RecomputeEnergy, MatchesRunLog) {
  TempDir dir("energy");
  SimConfig c = small_ac();
  c.output = dir.str();
  const RunResult r = run_simulation(c);
  const auto rows = recompute_energy(dir.path());
  ASSERT_EQ(rows.size(), r.energy.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].step, r.energy[i].step);
    EXPECT_EQ(rows[i].energy, r.energy[i].energy);
  }
}

TEST(SteadyState, OneDimensionalObstacle) {
  SimConfig c = parse_config("dim = 1\nn = 64\ndt = 0.1\npotential = obstacle\nic = sine\n");
  const SteadyResult r = steady_state(c, 1e-8, 20000);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rate, 1e-8);
  EXPECT_LE(r.state.max(), 1.0);
  EXPECT_GE(r.state.min(), -1.0);
  EXPECT_EQ(r.state.max(), 1.0);
  EXPECT_EQ(r.state.min(), -1.0);
}

TEST(SteadyState, ReportsNonConvergence) {
  SimConfig c = parse_config("dim = 1\nn = 64\ndt = 0.1\nic = sine\n");
  const SteadyResult r = steady_state(c, 1e-8, 3);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.steps, 3);
}

TEST(ConvergenceStudy, FirstOrderAllenCahn) {
  SimConfig c = parse_config("n = 16\nt_end = 0.4\nic = white-noise\n");
  const ConvergenceTable t = convergence_study(c, {0.1, 0.05, 0.025});
  EXPECT_DOUBLE_EQ(t.reference_dt, 0.025 / 16);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_TRUE(std::isnan(t.rows[0].order));
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_LT(t.rows[i].error, t.rows[i - 1].error);
    EXPECT_NEAR(t.rows[i].order, 1.0, 0.2);
  }
  EXPECT_THROW(convergence_study(c, {}), Error);
  EXPECT_THROW(convergence_study(c, {0.05, 0.1}), Error);
}
