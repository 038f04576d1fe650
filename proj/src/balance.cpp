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

#include "loam/balance.hpp"

#include <cmath>

#include "loam/error.hpp"

namespace loam {

SupportState compute_support(const Vec3& foot_a, const Vec3& foot_b, const SagittalFrame& frame,
                             const HeightField& hf) {
  const Vec3 ga{foot_a.x, sample_height(hf, foot_a.x, foot_a.z), foot_a.z};
  const Vec3 gb{foot_b.x, sample_height(hf, foot_b.x, foot_b.z), foot_b.z};
  SupportState support;
  support.segment = Segment2(project_to_sagittal(ga, frame), project_to_sagittal(gb, frame));
  support.target = midpoint(support.segment);
  const double ds = support.segment.b.s - support.segment.a.s;
  const double dh = support.segment.b.h - support.segment.a.h;
  if (std::fabs(ds) < 1e-9) {
    support.slope_dir = Vec2{1.0, 0.0};
  } else {
    const double len = std::sqrt(ds * ds + dh * dh);
    support.slope_dir = Vec2{ds / len, dh / len};
  }
  return support;
}

double compute_torque(const BodyState& body, const SupportState& support,
                      const ControllerParams& params, const SagittalFrame& frame) {
  const Vec2 com = project_to_sagittal(body.com, frame);
  // Drop the COM along gravity onto the line carrying the support segment.
  // Anchoring the line at the target makes the error vector exactly zero when
  // the COM is directly above the support midpoint.
  const double ds = support.segment.b.s - support.segment.a.s;
  const double dh = support.segment.b.h - support.segment.a.h;
  const double slope = std::fabs(ds) < 1e-9 ? 0.0 : dh / ds;
  const double h_proj = support.target.h + slope * (com.s - support.target.s);
  const Vec2 error{support.target.s - com.s, support.target.h - h_proj};
  return params.alpha * dot(error, support.slope_dir) + params.beta * body.angular_velocity -
         params.angular_drag * body.angular_velocity;
}

BodyState integrate_body(const BodyState& body, double torque, const Vec3& external_accel,
                         double dt) {
  BodyState next = body;
  next.angular_velocity = body.angular_velocity + (torque / body.inertia) * dt;
  next.tilt = body.tilt + next.angular_velocity * dt;
  const Vec3 accel{external_accel.x, external_accel.y + kGravityY, external_accel.z};
  next.linear_velocity = body.linear_velocity + accel * dt;
  next.com = body.com + next.linear_velocity * dt;
  if (std::fabs(next.tilt) >= kPi / 2.0) {
    throw FallOver(next.tilt);
  }
  return next;
}

Vec3 ik_offset_correction(const BodyState& body, const Vec3 ik_targets[2],
                          const Vec3 foot_positions[2]) {
  (void)body;
  // Mean of the two per-foot gaps: the least-squares translation when both
  // feet should move rigidly with the body.
  const Vec3 gap0 = ik_targets[0] - foot_positions[0];
  const Vec3 gap1 = ik_targets[1] - foot_positions[1];
  Vec3 offset = (gap0 + gap1) * 0.5;
  const double len = norm(offset);
  constexpr double kMaxOffsetPerFrame = 0.02;
  if (len > kMaxOffsetPerFrame) {
    offset = offset * (kMaxOffsetPerFrame / len);
  }
  return offset;
}

}  // namespace loam
