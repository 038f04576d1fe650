// Copyright 2026 The loam Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "loam/engine.hpp"
#include "loam/error.hpp"
#include "loam/kernels.hpp"

namespace loam {
namespace {

const char* const kRigidFlat =
    "[terrain]\n"
    "resolution = 128\n"
    "[material]\n"
    "depth = 0\n"
    "compression = 0\n"
    "smoothness = 0\n";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Metrics minus the wall-clock step timings, which legitimately vary
// between runs; everything else must be reproducible.
std::string strip_timing(const std::string& metrics) {
  std::istringstream in(metrics);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.rfind("median_step_ms:", 0) == 0 || line.rfind("p99_step_ms:", 0) == 0) continue;
    kept += line;
    kept += '\n';
  }
  return kept;
}

TEST_CASE("run_scenario executes duration / dt frames") {
  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 128\n"
      "[run]\nduration = 2\n");
  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.end == EndReason::kCompleted);
  CHECK(r.frames == 120);
  CHECK(r.records.size() == 120);
  CHECK(r.records.front().frame == 0);
  CHECK(r.records.front().time == s.dt);
  CHECK(r.records.back().frame == 119);
}

TEST_CASE("identical scenarios produce byte-identical traces") {
  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 128\nslope_deg = 5\nnoise_amp = 0.01\n"
      "[material]\npreset = mud\n"
      "[vegetation]\nclass = medium\ndensity = 2\n"
      "[run]\nduration = 2\n");
  const RunResult a = run_scenario(s, RunOptions{});
  const RunResult b = run_scenario(s, RunOptions{});
  CHECK(a.trace == b.trace);
  CHECK(strip_timing(a.metrics) == strip_timing(b.metrics));
}

TEST_CASE("every kernel backend produces the scalar trace") {
  if (kernels::available_kernels().size() < 2) {
    MESSAGE("only the scalar backend is available; nothing to compare");
    return;
  }
  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 128\nslope_deg = 8\nnoise_amp = 0.02\n"
      "[material]\npreset = snow\n"
      "[vegetation]\nclass = small\ndensity = 3\n"
      "[run]\nduration = 2\n");
  REQUIRE(kernels::set_active_kernels("scalar"));
  const RunResult scalar = run_scenario(s, RunOptions{});
  for (const kernels::KernelTable* table : kernels::available_kernels()) {
    REQUIRE(kernels::set_active_kernels(table->name));
    const RunResult other = run_scenario(s, RunOptions{});
    CHECK(other.trace == scalar.trace);
    CHECK(strip_timing(other.metrics) == strip_timing(scalar.metrics));
  }
  kernels::set_active_kernels(nullptr);
}

TEST_CASE("zero-coefficient material leaves the terrain bitwise untouched") {
  const Scenario s = parse_scenario(std::string(kRigidFlat) + "[run]\nduration = 3\n");
  World w = init_world(s, RunOptions{});
  const std::vector<double> before = w.terrain.heights;
  for (int i = 0; i < 180; ++i) {
    REQUIRE(step_world(w));
  }
  CHECK(w.terrain.heights == before);

  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.final_volume == r.initial_volume);
  CHECK(r.total_carved == 0.0);
  CHECK(r.total_deposited == 0.0);
}

TEST_CASE("a rigid run matches the deformation-disabled baseline") {
  const Scenario s = parse_scenario(std::string(kRigidFlat) + "[run]\nduration = 3\n");
  RunOptions with;
  RunOptions without;
  without.disable_deformation = true;
  const RunResult a = run_scenario(s, with);
  const RunResult b = run_scenario(s, without);
  CHECK(a.trace == b.trace);
}

TEST_CASE("the volume ledger closes over a long deforming run") {
  const Scenario s = parse_scenario(
      "[terrain]\nsize_x = 16\nsize_z = 10\nresolution = 256\nslope_deg = 10\n"
      "[material]\npreset = mud\n"
      "[run]\nduration = 10\n");
  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.end == EndReason::kCompleted);
  CHECK(r.frames == 600);
  CHECK(r.total_carved > 0.0);
  CHECK(r.total_deposited > 0.0);

  const double measured = r.initial_volume - r.final_volume;
  const double booked = r.total_carved - r.total_deposited;
  const double rel = std::fabs(measured - booked) / std::max(std::fabs(measured), 1e-12);
  CHECK(rel <= 1e-6);
}

TEST_CASE("the run ends at the terrain edge") {
  const Scenario s = parse_scenario("[terrain]\nresolution = 128\n[run]\nduration = 30\n");
  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.end == EndReason::kEdgeReached);
  CHECK(r.frames < 1800);
  CHECK(r.frames > 60);  // it walks a while before running out of ground
  CHECK(r.metrics.find("end_reason: edge_reached") != std::string::npos);
}

TEST_CASE("an uncontrolled lean falls over") {
  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 128\n"
      "[character]\ninitial_tilt = 1.5\n"
      "[controller]\nalpha = 0\nbeta = 0\nangular_drag = 0\n"
      "[run]\nduration = 5\n");
  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.end == EndReason::kFallOver);
  CHECK(r.fall_frame >= 0);
  CHECK(r.frames < 60);
  CHECK(r.max_abs_tilt >= kPi / 2.0);
  CHECK(r.metrics.find("end_reason: fall_over") != std::string::npos);
}

TEST_CASE("run_scenario validates before running") {
  const Scenario s = parse_scenario("[run]\nduration = -1\n");
  CHECK_THROWS_AS(run_scenario(s, RunOptions{}), ValidationError);
}

TEST_CASE("planted feet never sink below the deformed surface") {
  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 256\nslope_deg = 10\n"
      "[material]\npreset = mud\n"
      "[run]\nduration = 10\n");
  World w = init_world(s, RunOptions{});
  for (int i = 0; i < 300; ++i) {
    REQUIRE(step_world(w));
    for (int f = 0; f < 2; ++f) {
      if (!w.feet[f].in_contact) continue;
      const Vec3& p = w.feet[f].position;
      const double ground = sample_height(w.terrain, p.x, p.z);
      CHECK(p.y >= ground - 1e-4 - 1e-9);
    }
  }
}

TEST_CASE("walking on rigid flat ground is periodic") {
  const Scenario s = parse_scenario(std::string(kRigidFlat) +
                                    "[gait]\nstep_length = 0.5\ncycle_duration = 1\n"
                                    "[run]\nduration = 10\ndt = 0.015625\n");
  World w = init_world(s, RunOptions{});
  std::vector<Vec3> left;
  left.reserve(288);
  for (int i = 0; i < 288; ++i) {
    REQUIRE(step_world(w));
    left.push_back(w.feet[0].position);
  }
  // One gait cycle is exactly 64 frames; past the first cycle the motion
  // repeats, shifted forward by two step lengths.
  for (int k = 64; k + 64 < 288; ++k) {
    CHECK(std::fabs(left[k + 64].y - left[k].y) < 1e-9);
    CHECK(std::fabs(left[k + 64].x - left[k].x - 1.0) < 1e-9);
    CHECK(std::fabs(left[k + 64].z - left[k].z) < 1e-12);
  }
}

TEST_CASE("the trace carries the timestep header and stable columns") {
  const Scenario s = parse_scenario("[terrain]\nresolution = 128\n[run]\nduration = 1\n");
  const RunResult r = run_scenario(s, RunOptions{});
  CHECK(r.trace.rfind("# dt=", 0) == 0);
  CHECK(r.trace.find("frame,time,com_x,com_y,com_z,tilt,tilt_vel,torque,") != std::string::npos);
  CHECK(r.trace.find("carved,deposited") != std::string::npos);
  // One header comment, one column row, one row per frame.
  const long long rows = std::count(r.trace.begin(), r.trace.end(), '\n');
  CHECK(rows == r.frames + 2);
}

TEST_CASE("artifacts are written when an output directory is set") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "loam_test_artifacts";
  std::filesystem::remove_all(dir);

  const Scenario s = parse_scenario(
      "[terrain]\nresolution = 128\n"
      "[vegetation]\nclass = small\ndensity = 1\n"
      "[run]\nduration = 1\n");
  RunOptions options;
  options.out_dir = dir.string();
  const RunResult r = run_scenario(s, options);

  for (const char* name : {"terrain_initial.pgm", "blades_initial.txt", "scenario.scn",
                           "trace.csv", "metrics.txt", "terrain_final.pgm", "terrain_final.obj",
                           "blades_final.txt"}) {
    CAPTURE(name);
    CHECK(std::filesystem::exists(dir / name));
  }
  CHECK(read_file(dir / "trace.csv") == r.trace);
  CHECK(read_file(dir / "metrics.txt") == r.metrics);
  const Scenario reread = load_scenario_file((dir / "scenario.scn").string());
  CHECK(serialize_scenario(reread) == serialize_scenario(s));

  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace loam
