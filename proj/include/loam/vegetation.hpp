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

#ifndef LOAM_VEGETATION_HPP_
#define LOAM_VEGETATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "loam/gait.hpp"
#include "loam/heightfield.hpp"
#include "loam/vec3.hpp"

namespace loam {

// Blade instances in structure-of-arrays form so the deformation kernels can
// stream over them. tip_* holds the current deformation offsets; rest tip
// positions are precomputed at scatter time (base + height straight up).
struct VegetationLayer {
  double class_height = 0.0;  // 0.5 small, 0.9 medium, 0 none
  std::vector<double> base_x, base_y, base_z;
  std::vector<double> rest_tip_x, rest_tip_y, rest_tip_z;
  std::vector<double> height;
  std::vector<double> tip_x, tip_y, tip_z;  // current tip offsets

  std::size_t size() const { return height.size(); }
};

// Displacement field parameters: maximum translation magnitude and linear
// falloff rate (influence radius is t_max / gamma).
struct DeformParams {
  double t_max = 0.3;  // meters
  double gamma = 1.5;  // per meter
};

// Per-foot fake ground plane used to keep steps on top of vegetation.
struct VirtualPlatform {
  enum class State { kInactive, kRising, kHold, kCollapsing };

  Foot foot = Foot::kLeft;
  State state = State::kInactive;
  double height_above_ground = 0.0;  // meters, in [0, h_max]
  double h_max = 0.0;                // class_height / 3
  double collapse_speed = 2.0;       // m/s; ignored when instant_collapse
  bool instant_collapse = false;

  bool active() const { return state != State::kInactive && height_above_ground > 0.0; }
};

// What the platform state machine needs to know about its foot this frame.
struct SwingPhaseInfo {
  bool swinging = false;         // foot currently in its swing half-cycle
  double u = 0.0;                // swing fraction in [0, 1)
  bool over_vegetation = false;  // vegetation present under the swing path
};

// Uniformly scatters round(density * area) blades over the terrain with
// per-blade heights in [0.8, 1.0] * class_height. Deterministic in the seed.
VegetationLayer make_vegetation(const HeightField& hf, double class_height, double density,
                                std::uint64_t seed);

// Displacement applied at point p by a foot at p_f: magnitude
// clamp(t_max - gamma * ||p - p_f||, 0, t_max) along the down-ified unit
// direction of (p - p_f); straight down with magnitude t_max at p = p_f.
Vec3 displacement(const Vec3& p, const Vec3& p_f, const DeformParams& params);

// Recomputes every blade's tip offset from rest: the sum of displacement()
// over both feet (left first), clamped to the blade height. Elastic: blades
// recover instantly once the feet move away.
void deform_blades(VegetationLayer& layer, const Vec3 feet[2], const DeformParams& params);

// Advances one platform: rises linearly to h_max over the upward swing
// phase, holds at h_max during downward motion, collapses on a consumed
// platform TouchDown (at collapse_speed, or instantly), and deactivates at
// height zero so the foot retargets the true ground.
VirtualPlatform update_platform(const VirtualPlatform& pl, const SwingPhaseInfo& info,
                                const ContactEvent* foot_contact, double dt);

// Balance gain adapted to vegetation: base_beta at class_height 0, ramping
// linearly to min_beta at class_height 0.9 and saturating beyond.
double beta_for_vegetation(double class_height, double base_beta, double min_beta);

// Writes the per-blade text table: "id base_x base_y base_z tip_x tip_y
// tip_z" with tips at rest + offset. Returns false on I/O failure.
bool write_blade_table(const VegetationLayer& layer, const std::string& path);

}  // namespace loam

#endif  // LOAM_VEGETATION_HPP_
