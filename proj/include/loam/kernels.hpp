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

#ifndef LOAM_KERNELS_HPP_
#define LOAM_KERNELS_HPP_

#include <cmath>
#include <string>
#include <vector>

namespace loam::kernels {

// 3x3 Gaussian weights, sigma = 1 cell. The unnormalized side/corner values
// are exp(-1/2) and exp(-1) pinned as literals so that every translation
// unit (scalar, AVX2, NEON) derives bit-identical normalized weights.
inline constexpr double kGaussSide = 0.60653065971263342426;
inline constexpr double kGaussCorner = 0.36787944117144232160;
inline constexpr double kGaussNorm = 1.0 + 4.0 * kGaussSide + 4.0 * kGaussCorner;
inline constexpr double kWCenter = 1.0 / kGaussNorm;
inline constexpr double kWSide = kGaussSide / kGaussNorm;
inline constexpr double kWCorner = kGaussCorner / kGaussNorm;

// Footprint carve geometry in grid-plane coordinates. (fx, fz) is the unit
// forward axis of the stamp rectangle; floor_y = sole_height minus the
// maximum print depth.
struct CarveGeom {
  double sx = 0.0;
  double sz = 0.0;
  double fx = 1.0;
  double fz = 0.0;
  double half_len = 0.0;
  double half_wid = 0.0;
  double floor_y = 0.0;
  double d_t = 0.0;
};

// Per-element reference operations. The vector kernels replicate these
// lane-wise with the exact same operation order; any change here is a
// change to all variants. No fused multiply-add anywhere (see CMake flags).

inline double carve_one(double& h, double cx, double cz, const CarveGeom& g) {
  const double rx = cx - g.sx;
  const double rz = cz - g.sz;
  const double lx = rx * g.fx + rz * g.fz;
  const double lz = rz * g.fx - rx * g.fz;
  double t = h - g.floor_y;
  t = t < g.d_t ? t : g.d_t;
  t = t > 0.0 ? t : 0.0;
  const bool inside = std::fabs(lx) <= g.half_len && std::fabs(lz) <= g.half_wid;
  t = inside ? t : 0.0;
  h -= t;
  return t;
}

inline double blur_one(const double* above, const double* mid, const double* below, int j,
                       double magnitude) {
  const double r0 = above[j] * kWCorner + above[j + 1] * kWSide + above[j + 2] * kWCorner;
  const double r1 = mid[j] * kWSide + mid[j + 1] * kWCenter + mid[j + 2] * kWSide;
  const double r2 = below[j] * kWCorner + below[j + 1] * kWSide + below[j + 2] * kWCorner;
  const double conv = (r0 + r1) + r2;
  return (1.0 - magnitude) * mid[j + 1] + magnitude * conv;
}

inline void blade_one(double px, double py, double pz, double fx, double fy, double fz,
                      double t_max, double gamma, double& ax, double& ay, double& az) {
  const double dx = px - fx;
  const double dy = py - fy;
  const double dz = pz - fz;
  const double r2 = (dx * dx + dy * dy) + dz * dz;
  const double r = std::sqrt(r2);
  double mag = t_max - gamma * r;
  mag = mag < t_max ? mag : t_max;
  mag = mag > 0.0 ? mag : 0.0;
  double vx = 0.0;
  double vy = -t_max;
  double vz = 0.0;
  if (r > 0.0) {
    const double inv = mag / r;
    vx = dx * inv;
    vy = -(std::fabs(dy) * inv);
    vz = dz * inv;
  }
  // The contribution is added unconditionally so the accumulation sequence
  // matches the branch-free vector kernels bit for bit.
  ax += vx;
  ay += vy;
  az += vz;
}

inline void clamp_norm_one(double& x, double& y, double& z, double max_norm) {
  const double n2 = (x * x + y * y) + z * z;
  const double m2 = max_norm * max_norm;
  if (n2 > m2) {
    const double s = max_norm / std::sqrt(n2);
    x *= s;
    y *= s;
    z *= s;
  }
}

// Row-oriented kernel entry points.
//
// carve_row: lowers heights h[0..n) toward the print floor inside the stamp
// rectangle and records per-cell removals in delta. cx holds the cell-center
// x coordinates of the row segment and cz the row's center z.
//
// blur_row: writes the blended 3x3 Gaussian of the snapshot rows into out.
// above/mid/below have n + 2 entries; entry 0 and n + 1 are the halo columns
// with grid-edge clamping already resolved by the caller.
//
// blades_row: accumulates the displacement field of one foot at (fx, fy, fz)
// into the offset arrays for n blade tips at (px, py, pz).
//
// clamp_norm_row: rescales each offset so its norm never exceeds max_norm[i].
using CarveRowFn = void (*)(double* h, double* delta, const double* cx, double cz, int n,
                            const CarveGeom& g);
using BlurRowFn = void (*)(double* out, const double* above, const double* mid,
                           const double* below, int n, double magnitude);
using BladesRowFn = void (*)(const double* px, const double* py, const double* pz, int n,
                             double fx, double fy, double fz, double t_max, double gamma,
                             double* ax, double* ay, double* az);
using ClampNormRowFn = void (*)(double* x, double* y, double* z, const double* max_norm, int n);

struct KernelTable {
  const char* name;
  CarveRowFn carve_row;
  BlurRowFn blur_row;
  BladesRowFn blades_row;
  ClampNormRowFn clamp_norm_row;
};

extern const KernelTable kScalarKernels;
#if defined(LOAM_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(LOAM_HAVE_NEON)
extern const KernelTable kNeonKernels;
#endif

// Variants compiled in and usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// The variant used by the height-field and vegetation hot paths. Resolution
// order: explicit set_active_kernels() call, then the LOAM_KERNELS
// environment variable (scalar | avx2 | neon), then the best available.
const KernelTable& active_kernels();

// Forces a variant by name; returns false (and changes nothing) if the name
// is unknown or unavailable. Passing nullptr restores automatic selection.
bool set_active_kernels(const char* name);

}  // namespace loam::kernels

#endif  // LOAM_KERNELS_HPP_
