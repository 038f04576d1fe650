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

#include "loam/vegetation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "loam/kernels.hpp"
#include "loam/rng.hpp"

namespace loam {

VegetationLayer make_vegetation(const HeightField& hf, double class_height, double density,
                                std::uint64_t seed) {
  VegetationLayer layer;
  layer.class_height = class_height;
  if (class_height <= 0.0 || density <= 0.0) {
    return layer;
  }
  const double area = hf.extent_x() * hf.extent_z();
  const auto count = static_cast<std::size_t>(std::llround(density * area));
  layer.base_x.reserve(count);
  layer.base_y.reserve(count);
  layer.base_z.reserve(count);
  layer.rest_tip_x.reserve(count);
  layer.rest_tip_y.reserve(count);
  layer.rest_tip_z.reserve(count);
  layer.height.reserve(count);
  SplitMix rng{seed};
  for (std::size_t b = 0; b < count; ++b) {
    const double x = hf.origin.x + rng.u01() * hf.extent_x();
    const double z = hf.origin.z + rng.u01() * hf.extent_z();
    const double h = class_height * (0.8 + 0.2 * rng.u01());
    const double ground = sample_height(hf, x, z);
    layer.base_x.push_back(x);
    layer.base_y.push_back(ground);
    layer.base_z.push_back(z);
    layer.rest_tip_x.push_back(x);
    layer.rest_tip_y.push_back(ground + h);
    layer.rest_tip_z.push_back(z);
    layer.height.push_back(h);
  }
  layer.tip_x.assign(count, 0.0);
  layer.tip_y.assign(count, 0.0);
  layer.tip_z.assign(count, 0.0);
  return layer;
}

Vec3 displacement(const Vec3& p, const Vec3& p_f, const DeformParams& params) {
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;
  kernels::blade_one(p.x, p.y, p.z, p_f.x, p_f.y, p_f.z, params.t_max, params.gamma, ax, ay, az);
  return Vec3{ax, ay, az};
}

void deform_blades(VegetationLayer& layer, const Vec3 feet[2], const DeformParams& params) {
  const auto n = static_cast<int>(layer.size());
  if (n == 0) {
    return;
  }
  std::fill(layer.tip_x.begin(), layer.tip_x.end(), 0.0);
  std::fill(layer.tip_y.begin(), layer.tip_y.end(), 0.0);
  std::fill(layer.tip_z.begin(), layer.tip_z.end(), 0.0);
  const kernels::KernelTable& table = kernels::active_kernels();
  for (int f = 0; f < 2; ++f) {
    table.blades_row(layer.rest_tip_x.data(), layer.rest_tip_y.data(), layer.rest_tip_z.data(), n,
                     feet[f].x, feet[f].y, feet[f].z, params.t_max, params.gamma,
                     layer.tip_x.data(), layer.tip_y.data(), layer.tip_z.data());
  }
  table.clamp_norm_row(layer.tip_x.data(), layer.tip_y.data(), layer.tip_z.data(),
                       layer.height.data(), n);
}

VirtualPlatform update_platform(const VirtualPlatform& pl, const SwingPhaseInfo& info,
                                const ContactEvent* foot_contact, double dt) {
  VirtualPlatform next = pl;
  if (foot_contact != nullptr && foot_contact->kind == ContactEvent::Kind::kTouchDown &&
      foot_contact->on_platform && next.active()) {
    next.state = VirtualPlatform::State::kCollapsing;
  }
  if (next.state == VirtualPlatform::State::kCollapsing) {
    next.height_above_ground =
        next.instant_collapse ? 0.0 : next.height_above_ground - next.collapse_speed * dt;
    if (next.height_above_ground <= 0.0) {
      next.height_above_ground = 0.0;
      next.state = VirtualPlatform::State::kInactive;
    }
    return next;
  }
  if (info.swinging) {
    if (!info.over_vegetation || next.h_max <= 0.0) {
      next.state = VirtualPlatform::State::kInactive;
      next.height_above_ground = 0.0;
    } else if (info.u < 0.5) {
      next.state = VirtualPlatform::State::kRising;
      const double h = next.h_max * (2.0 * info.u);
      next.height_above_ground = h > next.h_max ? next.h_max : h;
    } else {
      next.state = VirtualPlatform::State::kHold;
      next.height_above_ground = next.h_max;
    }
  }
  // A planted foot's platform keeps its state until a touchdown collapses it.
  return next;
}

double beta_for_vegetation(double class_height, double base_beta, double min_beta) {
  double t = class_height / 0.9;
  t = t > 1.0 ? 1.0 : (t < 0.0 ? 0.0 : t);
  return base_beta + (min_beta - base_beta) * t;
}

bool write_blade_table(const VegetationLayer& layer, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    return false;
  }
  out << "# id base_x base_y base_z tip_x tip_y tip_z\n";
  char buf[256];
  for (std::size_t b = 0; b < layer.size(); ++b) {
    std::snprintf(buf, sizeof(buf), "%zu %.9g %.9g %.9g %.9g %.9g %.9g\n", b, layer.base_x[b],
                  layer.base_y[b], layer.base_z[b], layer.rest_tip_x[b] + layer.tip_x[b],
                  layer.rest_tip_y[b] + layer.tip_y[b], layer.rest_tip_z[b] + layer.tip_z[b]);
    out << buf;
  }
  return static_cast<bool>(out);
}

}  // namespace loam
