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

#ifndef LOAM_ENGINE_HPP_
#define LOAM_ENGINE_HPP_

#include <string>
#include <vector>

#include "loam/balance.hpp"
#include "loam/gait.hpp"
#include "loam/heightfield.hpp"
#include "loam/scenario.hpp"
#include "loam/vegetation.hpp"

namespace loam {

enum class EndReason { kCompleted, kEdgeReached, kFallOver };

const char* end_reason_name(EndReason r);

// One trace row: body summary, per-foot state, and this frame's terrain
// volume deltas. step_ms is wall-clock and excluded from deterministic
// trace output.
struct FrameRecord {
  long long frame = 0;
  double time = 0.0;
  Vec3 com{};
  double tilt = 0.0;
  double tilt_velocity = 0.0;
  double torque = 0.0;
  struct FootRow {
    Vec3 position{};
    Vec3 target{};
    int contact = 0;
    int platform_state = 0;  // 0 inactive, 1 rising, 2 hold, 3 collapsing
    double platform_height = 0.0;
  } feet[2];
  double carved = 0.0;
  double deposited = 0.0;
  double step_ms = 0.0;
};

struct RunOptions {
  std::string out_dir;  // empty: no files written
  // Strips the wall-clock column from the trace so runs byte-compare.
  bool deterministic_trace = true;
  // Baseline mode for layer-isolation checks: terrain writes (stamps and
  // smoothing) are skipped entirely.
  bool disable_deformation = false;
};

struct RunResult {
  EndReason end = EndReason::kCompleted;
  long long frames = 0;       // frames actually executed
  long long fall_frame = -1;  // frame index at FallOver, -1 otherwise
  double total_carved = 0.0;
  double total_deposited = 0.0;
  double initial_volume = 0.0;
  double final_volume = 0.0;
  double max_abs_tilt = 0.0;
  double median_step_ms = 0.0;
  double p99_step_ms = 0.0;
  std::vector<FrameRecord> records;
  std::string trace;    // CSV text, also written to out_dir/trace.csv
  std::string metrics;  // key: value lines, also written to out_dir/metrics.txt
};

// Per-foot simulation state.
struct FootState {
  Vec3 position{};      // achieved sole-center position (forward kinematics)
  Vec3 target{};        // current IK target
  Vec3 last_contact{};  // most recent ground-contact point
  Vec3 liftoff{};       // position when the current swing began
  double lane_z = 0.0;  // fixed lateral lane
  bool in_contact = true;
  bool contact_on_platform = false;
  LegPose pose{};
  bool unreachable = false;
};

// Full mutable simulation state. Fields are public so tests and tools can
// inspect the world between steps; the stepping loop owns it exclusively.
struct World {
  Scenario scenario;
  RunOptions options;
  HeightField terrain;
  VegetationLayer vegetation;
  bool vegetation_present = false;
  SagittalFrame frame{};
  BodyState body{};
  GaitState gait{};
  FootState feet[2];  // indexed by Foot
  VirtualPlatform platforms[2];
  FootSupportSample contact_samples[2];  // previous frame's samples
  std::vector<ContactEvent> pending_platform_events;  // consumed next frame
  double pelvis_x = 0.0;
  double pelvis_z = 0.0;
  // Persistent vertical pelvis offset fed by the IK gap correction; lets the
  // body crouch when landings sit below the hips (downhill steps, deep
  // prints) and relaxes back to zero when reach recovers.
  double pelvis_dy = 0.0;
  double walk_speed = 0.0;  // 2 * step_length / cycle_duration
  long long frame_index = 0;
  EndReason end = EndReason::kCompleted;
  bool ended = false;
  // Ledger and trace bookkeeping.
  double total_carved = 0.0;
  double total_deposited = 0.0;
  double max_abs_tilt = 0.0;
  double last_torque = 0.0;
  double frame_carved = 0.0;
  double frame_deposited = 0.0;
};

// Builds the world: generates terrain and vegetation, places the character
// at the start line with the trailing foot under the pelvis and the stance
// foot one step ahead, feet on the ground.
World init_world(const Scenario& scenario, const RunOptions& options);

// Advances one frame in the fixed phase order: (1) gait, (2) platforms,
// (3) foot targets, (4) IK, (5) contact events, (6) footprint stamps,
// (7) blade deformation, (8) support and torque, (9) integration and IK
// offset, (10) trace bookkeeping. Returns false when the run ends at the
// terrain edge (no frame is executed); throws FallOver when the body tips
// past +-pi/2.
bool step_world(World& w);

// Steps a validated scenario for duration/dt frames (or until EdgeReached /
// FallOver), assembles trace and metrics, and writes artifacts to
// options.out_dir when set. Throws ValidationError for invalid scenarios.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

// Synthetic full-pipeline walk for benchmarking: flat mud terrain at the
// given grid resolution with medium vegetation, timed per frame.
RunResult bench_run(int grid, int frames);

}  // namespace loam

#endif  // LOAM_ENGINE_HPP_
