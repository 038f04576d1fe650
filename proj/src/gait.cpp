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

#include "loam/gait.hpp"

#include <cmath>

#include "loam/vegetation.hpp"

namespace loam {

namespace {

double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

double lerp(double a, double b, double t) { return a * (1.0 - t) + b * t; }

}  // namespace

GaitState advance_gait(const GaitState& g, double dt) {
  GaitState next = g;
  const double raw = g.phase + dt / g.cycle_duration;
  // One stance flip per half-cycle boundary crossed, wraps included.
  const long long crossings =
      static_cast<long long>(std::floor(2.0 * raw)) - static_cast<long long>(std::floor(2.0 * g.phase));
  next.phase = raw - std::floor(raw);
  if (next.phase >= 1.0) {
    next.phase = 0.0;  // guards against floor rounding at the wrap boundary
  }
  if (crossings % 2 != 0) {
    next.stance_foot = other_foot(g.stance_foot);
  }
  return next;
}

Vec3 swing_target(const GaitState& g, const Vec3& stance_pos, const Vec3& liftoff_pos,
                  double lane_z, const HeightField& hf, const VirtualPlatform* platform) {
  const double u = swing_progress(g);
  const double landing_x = stance_pos.x + g.step_length;
  const double platform_h =
      platform != nullptr && platform->active() ? platform->height_above_ground : 0.0;
  const double landing_y = raycast_down(hf, landing_x, lane_z, 1.0e6).y + platform_h;
  const double x = lerp(liftoff_pos.x, landing_x, u);
  const double bump = g.swing_apex * std::sin(kPi * u) * std::sin(kPi * u);
  const double nominal = lerp(liftoff_pos.y, landing_y, u) + bump;
  // The chord from lift-off to landing can cut below risen ground (print
  // rims, ascending slopes, a lift-off point sunk into its own print), so
  // the foot also clears the support surface under its current position by
  // the bump profile. The ramp blends that clearance floor in over the first
  // fifth of the swing so the foot leaves a deep print without popping; both
  // terms converge to the landing point as the bump vanishes at u = 1.
  const double floor_y = raycast_down(hf, x, lane_z, 1.0e6).y + platform_h + bump;
  const double ramp = u < 0.2 ? u / 0.2 : 1.0;
  const double lifted = (1.0 - ramp) * nominal + ramp * floor_y;
  const double y = nominal > lifted ? nominal : lifted;
  return Vec3{x, y, lerp(liftoff_pos.z, lane_z, u)};
}

IkResult solve_two_bone_ik(const Vec3& hip_pos, const Vec3& target, const Morphology& m,
                           const SagittalFrame& frame) {
  const double a = m.leg_upper;
  const double b = m.leg_lower;
  const Vec3 diff = target - hip_pos;
  const double ds = dot(diff, frame.forward);
  const double dv = dot(diff, frame.up);
  double d = std::sqrt(ds * ds + dv * dv);

  IkResult result;
  const double d_max = a + b;
  const double d_min = std::fabs(a - b);
  if (d > d_max) {
    d = d_max;
    result.unreachable = true;
  } else if (d < d_min) {
    d = d_min;
    result.unreachable = true;
  }

  // Interior knee angle from the law of cosines; pi means a straight leg.
  const double knee = std::acos(clamp_unit((a * a + b * b - d * d) / (2.0 * a * b)));
  // Hip angle: direction to the target (from straight down, positive toward
  // +forward) plus the opening between the thigh and the hip-target ray.
  const double phi = std::atan2(ds, -dv);
  const double psi = d > 0.0 ? std::acos(clamp_unit((a * a + d * d - b * b) / (2.0 * a * d))) : 0.0;
  result.pose.hip_angle = phi + psi;
  result.pose.knee_angle = knee;
  // Shin direction angle; the ankle compensates to keep the sole level.
  const double shin = result.pose.hip_angle - (kPi - knee);
  result.pose.ankle_angle = -shin;
  return result;
}

Vec3 fk_foot(const Vec3& hip_pos, const LegPose& pose, const Morphology& m,
             const SagittalFrame& frame) {
  const auto dir = [&frame](double angle) {
    return std::sin(angle) * frame.forward - std::cos(angle) * frame.up;
  };
  const Vec3 knee_pos = hip_pos + m.leg_upper * dir(pose.hip_angle);
  const double shin = pose.hip_angle - (kPi - pose.knee_angle);
  return knee_pos + m.leg_lower * dir(shin);
}

std::vector<ContactEvent> foot_contact_events(const FootSupportSample prev[2],
                                              const FootSupportSample next[2]) {
  constexpr double kContactTolerance = 1e-4;
  const auto touching = [](const FootSupportSample& s) {
    return s.foot_y <= s.support_y + kContactTolerance;
  };
  std::vector<ContactEvent> events;
  for (int f = 0; f < 2; ++f) {
    const bool was = touching(prev[f]);
    const bool now = touching(next[f]);
    if (!was && now) {
      events.push_back(ContactEvent{static_cast<Foot>(f), ContactEvent::Kind::kTouchDown,
                                    next[f].on_platform});
    } else if (was && !now) {
      events.push_back(ContactEvent{static_cast<Foot>(f), ContactEvent::Kind::kLiftOff,
                                    prev[f].on_platform});
    }
  }
  return events;
}

}  // namespace loam
