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

#include "loam/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "loam/error.hpp"
#include "loam/export.hpp"

namespace loam {

namespace {

int foot_index(Foot f) { return static_cast<int>(f); }

int platform_state_code(VirtualPlatform::State s) {
  switch (s) {
    case VirtualPlatform::State::kInactive:
      return 0;
    case VirtualPlatform::State::kRising:
      return 1;
    case VirtualPlatform::State::kHold:
      return 2;
    case VirtualPlatform::State::kCollapsing:
      return 3;
  }
  return 0;
}

double support_height(const World& w, int f, double x, double z) {
  double h = sample_height(w.terrain, x, z);
  if (w.platforms[f].active()) {
    h += w.platforms[f].height_above_ground;
  }
  return h;
}

Vec3 tilt_direction(const SagittalFrame& frame, double tilt) {
  return std::sin(tilt) * frame.forward + std::cos(tilt) * frame.up;
}

bool deformation_enabled(const World& w) {
  return w.scenario.material.depth > 0.0 && !w.options.disable_deformation;
}

void append_trace_row(std::string& trace, const FrameRecord& rec, bool with_timing) {
  char buf[1024];
  int n = std::snprintf(buf, sizeof(buf), "%lld,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g", rec.frame,
                        rec.time, rec.com.x, rec.com.y, rec.com.z, rec.tilt, rec.tilt_velocity,
                        rec.torque);
  trace.append(buf, static_cast<std::size_t>(n));
  for (const auto& foot : rec.feet) {
    n = std::snprintf(buf, sizeof(buf), ",%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d,%d,%.9g",
                      foot.position.x, foot.position.y, foot.position.z, foot.target.x,
                      foot.target.y, foot.target.z, foot.contact, foot.platform_state,
                      foot.platform_height);
    trace.append(buf, static_cast<std::size_t>(n));
  }
  n = std::snprintf(buf, sizeof(buf), ",%.9g,%.9g", rec.carved, rec.deposited);
  trace.append(buf, static_cast<std::size_t>(n));
  if (with_timing) {
    n = std::snprintf(buf, sizeof(buf), ",%.3f", rec.step_ms);
    trace.append(buf, static_cast<std::size_t>(n));
  }
  trace.push_back('\n');
}

FrameRecord make_record(const World& w, long long frame, double step_ms) {
  FrameRecord rec;
  rec.frame = frame;
  rec.time = (frame + 1) * w.scenario.dt;
  rec.com = w.body.com;
  rec.tilt = w.body.tilt;
  rec.tilt_velocity = w.body.angular_velocity;
  rec.torque = w.last_torque;
  for (int f = 0; f < 2; ++f) {
    rec.feet[f].position = w.feet[f].position;
    rec.feet[f].target = w.feet[f].target;
    rec.feet[f].contact = w.feet[f].in_contact ? 1 : 0;
    rec.feet[f].platform_state = platform_state_code(w.platforms[f].state);
    rec.feet[f].platform_height = w.platforms[f].height_above_ground;
  }
  rec.carved = w.frame_carved;
  rec.deposited = w.frame_deposited;
  rec.step_ms = step_ms;
  return rec;
}

double percentile(std::vector<double> sorted, double q) {
  if (sorted.empty()) {
    return 0.0;
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  if (q == 0.5 && n % 2 == 0) {
    return (sorted[n / 2 - 1] + sorted[n / 2]) * 0.5;
  }
  std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n))) - 1;
  if (idx >= n) {
    idx = n - 1;
  }
  return sorted[idx];
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return false;
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  return static_cast<bool>(out);
}

}  // namespace

const char* end_reason_name(EndReason r) {
  switch (r) {
    case EndReason::kCompleted:
      return "completed";
    case EndReason::kEdgeReached:
      return "edge_reached";
    case EndReason::kFallOver:
      return "fall_over";
  }
  return "completed";
}

World init_world(const Scenario& scenario, const RunOptions& options) {
  World w;
  w.scenario = scenario;
  w.options = options;
  w.terrain = generate_slope(scenario.nx(), scenario.nz(), scenario.cell_size(),
                             scenario.slope_deg * kPi / 180.0, scenario.noise_seed,
                             scenario.noise_amp);
  const double class_height = scenario.class_height();
  w.vegetation_present = class_height > 0.0 && scenario.vegetation_density > 0.0;
  if (w.vegetation_present) {
    w.vegetation = make_vegetation(w.terrain, class_height, scenario.vegetation_density,
                                   scenario.vegetation_seed);
  }

  w.gait = GaitState{0.0, Foot::kLeft, scenario.step_length, scenario.cycle_duration,
                     scenario.swing_apex};
  w.walk_speed = 2.0 * scenario.step_length / scenario.cycle_duration;
  w.pelvis_x = scenario.start_x;
  w.pelvis_z = scenario.start_z;

  // Phase 0 opens the left-stance half-cycle: the left foot leads one step
  // ahead while the right foot trails directly under the pelvis, about to
  // lift off. This phasing keeps the support-midpoint error zero-mean.
  const Morphology& m = scenario.morphology;
  const double lane[2] = {scenario.start_z - m.hip_spacing * 0.5,
                          scenario.start_z + m.hip_spacing * 0.5};
  const double foot_x[2] = {scenario.start_x + scenario.step_length, scenario.start_x};
  for (int f = 0; f < 2; ++f) {
    FootState& foot = w.feet[f];
    foot.lane_z = lane[f];
    const double y = sample_height(w.terrain, foot_x[f], lane[f]);
    foot.position = Vec3{foot_x[f], y, lane[f]};
    foot.target = foot.position;
    foot.last_contact = foot.position;
    foot.liftoff = foot.position;
    // The state mirrors the instant after a stance flip: the leading foot is
    // planted, the trailing foot is entering its swing.
    foot.in_contact = f == foot_index(w.gait.stance_foot);
    foot.contact_on_platform = false;
    w.contact_samples[f] = FootSupportSample{foot.in_contact ? y : y + 1.0, y, false};
    w.platforms[f] = VirtualPlatform{static_cast<Foot>(f), VirtualPlatform::State::kInactive,
                                     0.0, class_height / 3.0, 2.0,
                                     scenario.collapse == "instant"};
  }

  w.body.mass = scenario.mass;
  w.body.inertia = scenario.inertia;
  w.body.com_height_offset = m.com_height_offset;
  w.body.tilt = scenario.initial_tilt;
  w.body.angular_velocity = 0.0;
  const double com_height = m.pelvis_height + m.com_height_offset;
  const Vec3 pelvis_ground{w.pelvis_x, sample_height(w.terrain, w.pelvis_x, w.pelvis_z),
                           w.pelvis_z};
  w.body.com = pelvis_ground + com_height * tilt_direction(w.frame, w.body.tilt);
  w.body.linear_velocity = Vec3{};
  return w;
}

bool step_world(World& w) {
  const Scenario& sc = w.scenario;
  const double dt = sc.dt;

  // The run ends before any foot, print rim, or smoothing halo could leave
  // the grid on the far side.
  const int stance_i = foot_index(w.gait.stance_foot);
  const double probe = w.feet[stance_i].position.x + sc.step_length +
                       sc.morphology.foot_half_length + 4.0 * w.terrain.cell_size;
  if (probe >= w.terrain.extent_x()) {
    w.end = EndReason::kEdgeReached;
    w.ended = true;
    return false;
  }

  // (1) Gait phase. On a stance flip, the foot that just landed snaps to its
  // exact landing point (unless it already planted early, e.g. on a
  // platform), and the foot that now swings records its lift-off pose.
  const GaitState prev_gait = w.gait;
  w.gait = advance_gait(w.gait, dt);
  if (w.gait.stance_foot != prev_gait.stance_foot) {
    const int landed = foot_index(w.gait.stance_foot);
    const int lifting = foot_index(other_foot(w.gait.stance_foot));
    if (!w.feet[landed].in_contact) {
      const double land_x = w.feet[lifting].position.x + sc.step_length;
      const double land_z = w.feet[landed].lane_z;
      const double land_y = support_height(w, landed, land_x, land_z);
      w.feet[landed].position = Vec3{land_x, land_y, land_z};
      w.feet[landed].target = w.feet[landed].position;
      // The balance plan transfers support to the landing point now, even if
      // the leg needs a frame or two of pelvis correction before the sole
      // actually registers contact there.
      w.feet[landed].last_contact = w.feet[landed].position;
    }
    // Lift-off is commanded by the gait: a planted sole sits exactly on the
    // support surface, so the surface predicate alone would never release it.
    w.feet[lifting].in_contact = false;
    w.feet[lifting].contact_on_platform = false;
    w.feet[lifting].liftoff = w.feet[lifting].position;
  }

  // (2) Platforms, consuming last frame's platform touchdowns.
  const int new_stance_i = foot_index(w.gait.stance_foot);
  for (int f = 0; f < 2; ++f) {
    const ContactEvent* event = nullptr;
    for (const ContactEvent& e : w.pending_platform_events) {
      if (foot_index(e.foot) == f) {
        event = &e;
      }
    }
    const bool swinging = f != new_stance_i && !w.feet[f].in_contact;
    const SwingPhaseInfo info{swinging, swing_progress(w.gait), w.vegetation_present};
    w.platforms[f] = update_platform(w.platforms[f], info, event, dt);
  }
  w.pending_platform_events.clear();

  // (3) Foot IK targets: planted feet hold their ground-plane position with
  // the sole on the (possibly sinking or collapsing) support surface; the
  // swing foot follows its clearance trajectory toward the landing point.
  for (int f = 0; f < 2; ++f) {
    FootState& foot = w.feet[f];
    if (foot.in_contact || f == new_stance_i) {
      const double y = support_height(w, f, foot.position.x, foot.position.z);
      foot.target = Vec3{foot.position.x, y, foot.position.z};
    } else {
      foot.target = swing_target(w.gait, w.feet[new_stance_i].position, foot.liftoff,
                                 foot.lane_z, w.terrain, &w.platforms[f]);
    }
  }

  // (4) Leg IK from the tilted pelvis.
  const Vec3 pelvis_ground{
      w.pelvis_x, sample_height(w.terrain, w.pelvis_x, w.pelvis_z) + w.pelvis_dy, w.pelvis_z};
  const Vec3 hip_center =
      pelvis_ground + sc.morphology.pelvis_height * tilt_direction(w.frame, w.body.tilt);
  for (int f = 0; f < 2; ++f) {
    FootState& foot = w.feet[f];
    const Vec3 hip{hip_center.x, hip_center.y, foot.lane_z};
    const IkResult ik = solve_two_bone_ik(hip, foot.target, sc.morphology, w.frame);
    foot.pose = ik.pose;
    foot.unreachable = ik.unreachable;
    foot.position = fk_foot(hip, ik.pose, sc.morphology, w.frame);
  }

  // (5) Contact events, with their immediate side effects: touchdown pins
  // the sole to the support surface (and queues platform collapse for the
  // next frame); lift-off smooths the finished print. During the clearance
  // half of the swing (u < 1/2) the foot registers no contact, so it clears
  // fresh print rims and rising platforms instead of planting on them; it
  // can only land on the descent half.
  const double u = swing_progress(w.gait);
  FootSupportSample next_samples[2];
  for (int f = 0; f < 2; ++f) {
    const double sy = support_height(w, f, w.feet[f].position.x, w.feet[f].position.z);
    double fy = w.feet[f].position.y;
    const bool clearance = f != new_stance_i && !w.feet[f].in_contact && u < 0.5;
    if (clearance) {
      fy = sy + 1.0;
    }
    next_samples[f] = FootSupportSample{fy, sy, w.platforms[f].active()};
  }
  for (const ContactEvent& e : foot_contact_events(w.contact_samples, next_samples)) {
    const int f = foot_index(e.foot);
    if (e.kind == ContactEvent::Kind::kTouchDown) {
      w.feet[f].in_contact = true;
      w.feet[f].contact_on_platform = e.on_platform;
      w.feet[f].position.y = next_samples[f].support_y;
      w.feet[f].last_contact = w.feet[f].position;
      if (e.on_platform) {
        w.pending_platform_events.push_back(e);
      }
    } else {
      w.feet[f].in_contact = false;
      w.feet[f].contact_on_platform = false;
    }
  }
  for (int f = 0; f < 2; ++f) {
    const double fy = w.feet[f].in_contact ? w.feet[f].position.y : next_samples[f].foot_y;
    w.contact_samples[f] =
        FootSupportSample{fy, next_samples[f].support_y, next_samples[f].on_platform};
  }

  // (6) Footprint stamps for feet in true ground contact.
  w.frame_carved = 0.0;
  w.frame_deposited = 0.0;
  if (deformation_enabled(w)) {
    for (int f = 0; f < 2; ++f) {
      FootState& foot = w.feet[f];
      if (!foot.in_contact || foot.contact_on_platform) {
        continue;
      }
      const FootprintStamp stamp{foot.position, sc.morphology.foot_half_length,
                                 sc.morphology.foot_half_width, 0.0, foot.position.y};
      const DeformationReport report = stamp_footprint(w.terrain, stamp, sc.material);
      w.frame_carved += report.carved;
      w.frame_deposited += report.deposited;
    }
  }
  w.total_carved += w.frame_carved;
  w.total_deposited += w.frame_deposited;

  // (7) Vegetation deformation under both feet.
  if (w.vegetation_present) {
    const Vec3 feet_pos[2] = {w.feet[0].position, w.feet[1].position};
    deform_blades(w.vegetation, feet_pos, sc.deform);
  }

  // (8) Support segment, vegetation-adjusted gain, and balance torque.
  const Vec3 support_points[2] = {
      w.feet[0].in_contact ? w.feet[0].position : w.feet[0].last_contact,
      w.feet[1].in_contact ? w.feet[1].position : w.feet[1].last_contact,
  };
  const SupportState support =
      compute_support(support_points[0], support_points[1], w.frame, w.terrain);
  ControllerParams params = sc.controller;
  if (w.vegetation_present) {
    params.beta = beta_for_vegetation(sc.class_height(), sc.controller.beta, sc.min_beta);
  }
  double torque = compute_torque(w.body, support, params, w.frame);
  // Gravity tips the body once its capture point — the COM extrapolated by
  // its velocity over the inverted-pendulum time constant — leaves the
  // anticipated support region spanned by the stance foot, the swing foot's
  // last contact, and the upcoming landing point. A forward-moving COM that
  // momentarily trails the rear support stays balanced; a falling body's
  // capture point recedes from the hull and gravity takes over.
  const int swing_i = 1 - new_stance_i;
  const double stance_s = w.feet[new_stance_i].position.x;
  const double swing_last_s = w.feet[swing_i].last_contact.x;
  const double landing_s = stance_s + sc.step_length;
  const double hull_min = std::min(stance_s, std::min(swing_last_s, landing_s));
  const double hull_max = std::max(stance_s, std::max(swing_last_s, landing_s));
  const double com_s = dot(w.body.com - w.frame.origin, w.frame.forward);
  const double g = -kGravityY;
  const double pendulum_h = sc.morphology.pelvis_height + sc.morphology.com_height_offset;
  const double capture_s =
      com_s + dot(w.body.linear_velocity, w.frame.forward) * std::sqrt(pendulum_h / g);
  if (capture_s > hull_max) {
    torque += w.body.mass * g * (capture_s - hull_max);
  } else if (capture_s < hull_min) {
    torque -= w.body.mass * g * (hull_min - capture_s);
  }
  w.last_torque = torque;

  // (9) Integrate the tilt dynamics, advance the kinematic pelvis (plus the
  // IK-gap correction), and re-slave the COM to the new pelvis and tilt.
  const BodyState prev_body = w.body;
  w.body = integrate_body(w.body, torque, Vec3{}, dt);
  const Vec3 targets[2] = {w.feet[0].target, w.feet[1].target};
  const Vec3 achieved[2] = {w.feet[0].position, w.feet[1].position};
  const Vec3 offset = ik_offset_correction(w.body, targets, achieved);
  w.pelvis_x += w.walk_speed * dt + offset.x;
  w.pelvis_z += offset.z;
  w.pelvis_dy = (w.pelvis_dy + offset.y) * (1.0 - dt);
  const double com_height = sc.morphology.pelvis_height + sc.morphology.com_height_offset;
  const Vec3 new_ground{
      w.pelvis_x, sample_height(w.terrain, w.pelvis_x, w.pelvis_z) + w.pelvis_dy, w.pelvis_z};
  w.body.com = new_ground + com_height * tilt_direction(w.frame, w.body.tilt);
  w.body.linear_velocity = (w.body.com - prev_body.com) * (1.0 / dt);
  if (std::fabs(w.body.tilt) > w.max_abs_tilt) {
    w.max_abs_tilt = std::fabs(w.body.tilt);
  }

  // (10) Trace bookkeeping is assembled by the caller from this state.
  return true;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  const std::vector<std::string> issues = validate_scenario(scenario);
  if (!issues.empty()) {
    throw ValidationError(issues);
  }

  World w = init_world(scenario, options);
  RunResult result;
  result.initial_volume = total_volume(w.terrain);

  namespace fs = std::filesystem;
  const bool writing = !options.out_dir.empty();
  if (writing) {
    fs::create_directories(options.out_dir);
    write_pgm16(w.terrain, options.out_dir + "/terrain_initial.pgm");
    write_blade_table(w.vegetation, options.out_dir + "/blades_initial.txt");
    write_text_file(options.out_dir + "/scenario.scn", serialize_scenario(scenario));
  }

  char buf[128];
  std::snprintf(buf, sizeof(buf), "# dt=%.17g\n", scenario.dt);
  std::string trace = buf;
  trace +=
      "frame,time,com_x,com_y,com_z,tilt,tilt_vel,torque,"
      "l_x,l_y,l_z,l_tgt_x,l_tgt_y,l_tgt_z,l_contact,l_platform,l_platform_h,"
      "r_x,r_y,r_z,r_tgt_x,r_tgt_y,r_tgt_z,r_contact,r_platform,r_platform_h,"
      "carved,deposited";
  const bool with_timing = !options.deterministic_trace;
  if (with_timing) {
    trace += ",step_ms";
  }
  trace += "\n";

  const long long frames = std::llround(scenario.duration / scenario.dt);
  result.records.reserve(static_cast<std::size_t>(frames));
  std::vector<double> step_times;
  step_times.reserve(static_cast<std::size_t>(frames));

  for (long long i = 0; i < frames; ++i) {
    w.frame_index = i;
    const auto t0 = std::chrono::steady_clock::now();
    bool advanced = false;
    try {
      advanced = step_world(w);
    } catch (const FallOver& fall) {
      result.end = EndReason::kFallOver;
      result.fall_frame = i;
      w.max_abs_tilt = std::max(w.max_abs_tilt, std::fabs(fall.tilt));
      break;
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (!advanced) {
      result.end = EndReason::kEdgeReached;
      break;
    }
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    step_times.push_back(ms);
    const FrameRecord rec = make_record(w, i, ms);
    append_trace_row(trace, rec, with_timing);
    result.records.push_back(rec);
  }

  result.frames = static_cast<long long>(result.records.size());
  result.total_carved = w.total_carved;
  result.total_deposited = w.total_deposited;
  result.max_abs_tilt = w.max_abs_tilt;
  result.final_volume = total_volume(w.terrain);
  result.median_step_ms = percentile(step_times, 0.5);
  result.p99_step_ms = percentile(step_times, 0.99);
  result.trace = trace;

  std::string metrics;
  metrics += std::string("end_reason: ") + end_reason_name(result.end) + "\n";
  std::snprintf(buf, sizeof(buf), "frames: %lld\n", result.frames);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "dt: %.17g\n", scenario.dt);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "total_carved_m3: %.9g\n", result.total_carved);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "total_deposited_m3: %.9g\n", result.total_deposited);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "initial_volume_m3: %.17g\n", result.initial_volume);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "final_volume_m3: %.17g\n", result.final_volume);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "max_abs_tilt_rad: %.9g\n", result.max_abs_tilt);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "fall_frame: %lld\n", result.fall_frame);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "median_step_ms: %.3f\n", result.median_step_ms);
  metrics += buf;
  std::snprintf(buf, sizeof(buf), "p99_step_ms: %.3f\n", result.p99_step_ms);
  metrics += buf;
  result.metrics = metrics;

  if (writing) {
    write_text_file(options.out_dir + "/trace.csv", result.trace);
    write_text_file(options.out_dir + "/metrics.txt", result.metrics);
    write_pgm16(w.terrain, options.out_dir + "/terrain_final.pgm");
    write_obj(w.terrain, options.out_dir + "/terrain_final.obj");
    write_blade_table(w.vegetation, options.out_dir + "/blades_final.txt");
  }
  return result;
}

RunResult bench_run(int grid, int frames) {
  Scenario sc;
  sc.size_x = 10.0;
  sc.size_z = 10.0;
  sc.resolution = grid;
  sc.slope_deg = 0.0;
  sc.noise_amp = 0.0;
  sc.material = TerrainMaterial{"mud", 0.004, 0.003, 0.15};
  sc.vegetation_class = "medium";
  sc.vegetation_density = 20.0;
  sc.vegetation_seed = 11;
  sc.start_x = 0.3;
  sc.dt = 1.0 / 60.0;
  sc.duration = frames * sc.dt;
  RunOptions options;
  options.deterministic_trace = true;
  return run_scenario(sc, options);
}

}  // namespace loam
