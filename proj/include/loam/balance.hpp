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

#ifndef LOAM_BALANCE_HPP_
#define LOAM_BALANCE_HPP_

#include "loam/heightfield.hpp"
#include "loam/vec3.hpp"

namespace loam {

// Planar rigid-body state of the character: a center of mass plus a tilt
// angle about the axis normal to the sagittal plane (0 = upright).
struct BodyState {
  Vec3 com{};
  double tilt = 0.0;              // radians
  double angular_velocity = 0.0;  // rad/s
  Vec3 linear_velocity{};
  double mass = 70.0;             // kg
  double inertia = 10.0;          // kg m^2 about the sagittal-normal axis
  double com_height_offset = 0.12;  // COM height above the pelvis, meters
};

// Gains of the balance torque controller plus an explicit angular drag.
// The +beta * tilt_velocity term alone feeds energy into the swing; the
// drag term (default 10) keeps the system bounded, standing in for the
// damping a full physics backend would provide implicitly.
struct ControllerParams {
  double alpha = 30.0;         // N m per meter of COM error
  double beta = 6.0;           // N m per rad/s
  double angular_drag = 10.0;  // N m per rad/s, >= 0
};

// Support segment between the two feet, expressed in the sagittal plane.
struct SupportState {
  Segment2 segment{};   // feet ground points projected in-plane
  Vec2 target{};        // segment midpoint: where the COM should project
  Vec2 slope_dir{1.0, 0.0};  // unit in-plane tangent of the ground, +forward
};

// Builds the support segment from the two feet's ground contact points.
// Endpoint heights come from sampling the current terrain at the feet, so
// the segment tracks ground deformation; slope_dir is the normalized
// endpoint difference, oriented along +forward, (1, 0) when the endpoints
// share (or nearly share) an in-plane abscissa. Throws OutOfTerrain.
SupportState compute_support(const Vec3& foot_a, const Vec3& foot_b, const SagittalFrame& frame,
                             const HeightField& hf);

// Balance torque: alpha * ((target - com_projected) . slope_dir)
// + beta * tilt_velocity - angular_drag * tilt_velocity. The COM is dropped
// along gravity onto the support segment's carrying line; the projection is
// anchored at the target so the in-plane error vanishes exactly when the COM
// sits over the support midpoint.
double compute_torque(const BodyState& body, const SupportState& support,
                      const ControllerParams& params, const SagittalFrame& frame);

// Semi-implicit Euler step of both the angular and linear state. Gravity
// plus external_accel drives the linear part. Throws FallOver when the
// stepped tilt reaches +-pi/2.
BodyState integrate_body(const BodyState& body, double torque, const Vec3& external_accel,
                         double dt);

// Translation (capped at 0.02 m) that moves the body toward the position
// minimizing the mean gap between achieved foot positions and IK targets,
// eliminating residual foot sliding.
Vec3 ik_offset_correction(const BodyState& body, const Vec3 ik_targets[2],
                          const Vec3 foot_positions[2]);

}  // namespace loam

#endif  // LOAM_BALANCE_HPP_
