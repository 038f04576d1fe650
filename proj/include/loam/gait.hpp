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

#ifndef LOAM_GAIT_HPP_
#define LOAM_GAIT_HPP_

#include <vector>

#include "loam/heightfield.hpp"
#include "loam/vec3.hpp"

namespace loam {

struct VirtualPlatform;  // vegetation.hpp

enum class Foot { kLeft = 0, kRight = 1 };

inline Foot other_foot(Foot f) { return f == Foot::kLeft ? Foot::kRight : Foot::kLeft; }

// Leg and body dimensions, meters. Base values describe a 1.7 m character
// and scale linearly with total_height. The invariant
// leg_upper + leg_lower < pelvis_height + 0.2 keeps straight-leg poses
// representable across the supported 1 to 1.9 m range.
struct Morphology {
  double total_height = 1.7;
  double leg_upper = 0.5;
  double leg_lower = 0.5;
  double pelvis_height = 0.85;
  double hip_spacing = 0.2;
  // Foot sole rectangle, used for footprint stamps.
  double foot_half_length = 0.12;
  double foot_half_width = 0.05;
  double com_height_offset = 0.12;  // COM height above the pelvis
};

// Cyclic walk clock. The left foot is the stance foot on phase [0, 0.5),
// the right on [0.5, 1).
struct GaitState {
  double phase = 0.0;            // [0, 1) cycle fraction
  Foot stance_foot = Foot::kLeft;
  double step_length = 0.5;      // meters
  double cycle_duration = 1.2;   // seconds
  double swing_apex = 0.05;      // base foot clearance, meters
};

// Sagittal-plane leg pose. Angles in radians: hip from straight down
// (positive forward), knee interior angle (pi = straight), ankle relative
// to the shin (chosen to keep the sole level).
struct LegPose {
  double hip_angle = 0.0;
  double knee_angle = kPi;
  double ankle_angle = 0.0;
};

// IK outcome; `unreachable` marks targets clamped to the reachable sphere.
struct IkResult {
  LegPose pose;
  bool unreachable = false;
};

// Contact state change of one foot against its support surface.
struct ContactEvent {
  enum class Kind { kTouchDown, kLiftOff };
  Foot foot = Foot::kLeft;
  Kind kind = Kind::kTouchDown;
  bool on_platform = false;
};

// One foot's vertical relation to its support surface at a frame boundary.
struct FootSupportSample {
  double foot_y = 0.0;
  double support_y = 0.0;
  bool on_platform = false;
};

// Fraction of the current swing completed by the non-stance foot, in [0, 1).
inline double swing_progress(const GaitState& g) {
  return 2.0 * g.phase - (g.phase >= 0.5 ? 1.0 : 0.0);
}

// Advances the phase clock by dt / cycle_duration (modulo 1) and flips the
// stance foot once per 0.5-crossing, wraps included.
GaitState advance_gait(const GaitState& g, double dt);

// IK target for the swing foot. The landing point is one step_length ahead
// of the stance foot along +x at lane_z; its height is the virtual-platform
// surface when `platform` is active, the ray-cast ground height otherwise.
// The trajectory interpolates from the lift-off position to the landing
// point, raised by a clearance bump swing_apex * sin^2(pi * u) over the
// swing fraction u. Throws OutOfTerrain if the landing point leaves the
// terrain.
Vec3 swing_target(const GaitState& g, const Vec3& stance_pos, const Vec3& liftoff_pos,
                  double lane_z, const HeightField& hf, const VirtualPlatform* platform);

// Analytic two-bone IK in the sagittal plane: law-of-cosines knee angle
// (pi = straight), knee always bent toward +forward. Unreachable targets are
// clamped to the reachable sphere and flagged.
IkResult solve_two_bone_ik(const Vec3& hip_pos, const Vec3& target, const Morphology& m,
                           const SagittalFrame& frame);

// Forward kinematics matching solve_two_bone_ik's conventions.
Vec3 fk_foot(const Vec3& hip_pos, const LegPose& pose, const Morphology& m,
             const SagittalFrame& frame);

// Contact transitions between two frames. A foot touches its support when
// foot_y <= support_y + 1e-4. Events are ordered left before right.
std::vector<ContactEvent> foot_contact_events(const FootSupportSample prev[2],
                                              const FootSupportSample next[2]);

}  // namespace loam

#endif  // LOAM_GAIT_HPP_
