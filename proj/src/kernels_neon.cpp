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

// NEON (aarch64) variants of the row kernels. Same contract as the AVX2
// file: lane-wise operation order identical to the per-element reference
// functions, no fused multiply-add, bit-identical results.

#include <arm_neon.h>

#include "loam/kernels.hpp"

namespace loam::kernels {

namespace {

void carve_row_neon(double* h, double* delta, const double* cx, double cz, int n,
                    const CarveGeom& g) {
  const float64x2_t vsx = vdupq_n_f64(g.sx);
  const float64x2_t vrz = vdupq_n_f64(cz - g.sz);
  const float64x2_t vfx = vdupq_n_f64(g.fx);
  const float64x2_t vfz = vdupq_n_f64(g.fz);
  const float64x2_t vhl = vdupq_n_f64(g.half_len);
  const float64x2_t vhw = vdupq_n_f64(g.half_wid);
  const float64x2_t vfloor = vdupq_n_f64(g.floor_y);
  const float64x2_t vdt = vdupq_n_f64(g.d_t);
  const float64x2_t vzero = vdupq_n_f64(0.0);
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vcx = vld1q_f64(cx + i);
    const float64x2_t vh = vld1q_f64(h + i);
    const float64x2_t rx = vsubq_f64(vcx, vsx);
    const float64x2_t lx = vaddq_f64(vmulq_f64(rx, vfx), vmulq_f64(vrz, vfz));
    const float64x2_t lz = vsubq_f64(vmulq_f64(vrz, vfx), vmulq_f64(rx, vfz));
    float64x2_t t = vsubq_f64(vh, vfloor);
    t = vminq_f64(t, vdt);
    t = vmaxq_f64(t, vzero);
    const uint64x2_t in_x = vcleq_f64(vabsq_f64(lx), vhl);
    const uint64x2_t in_z = vcleq_f64(vabsq_f64(lz), vhw);
    const uint64x2_t inside = vandq_u64(in_x, in_z);
    t = vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(t), inside));
    vst1q_f64(h + i, vsubq_f64(vh, t));
    vst1q_f64(delta + i, t);
  }
  for (; i < n; ++i) {
    delta[i] = carve_one(h[i], cx[i], cz, g);
  }
}

void blur_row_neon(double* out, const double* above, const double* mid, const double* below,
                   int n, double magnitude) {
  const float64x2_t wc = vdupq_n_f64(kWCenter);
  const float64x2_t ws = vdupq_n_f64(kWSide);
  const float64x2_t wk = vdupq_n_f64(kWCorner);
  const float64x2_t vm = vdupq_n_f64(magnitude);
  const float64x2_t vim = vdupq_n_f64(1.0 - magnitude);
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a0 = vld1q_f64(above + i);
    const float64x2_t a1 = vld1q_f64(above + i + 1);
    const float64x2_t a2 = vld1q_f64(above + i + 2);
    const float64x2_t m0 = vld1q_f64(mid + i);
    const float64x2_t m1 = vld1q_f64(mid + i + 1);
    const float64x2_t m2 = vld1q_f64(mid + i + 2);
    const float64x2_t b0 = vld1q_f64(below + i);
    const float64x2_t b1 = vld1q_f64(below + i + 1);
    const float64x2_t b2 = vld1q_f64(below + i + 2);
    const float64x2_t r0 =
        vaddq_f64(vaddq_f64(vmulq_f64(a0, wk), vmulq_f64(a1, ws)), vmulq_f64(a2, wk));
    const float64x2_t r1 =
        vaddq_f64(vaddq_f64(vmulq_f64(m0, ws), vmulq_f64(m1, wc)), vmulq_f64(m2, ws));
    const float64x2_t r2 =
        vaddq_f64(vaddq_f64(vmulq_f64(b0, wk), vmulq_f64(b1, ws)), vmulq_f64(b2, wk));
    const float64x2_t conv = vaddq_f64(vaddq_f64(r0, r1), r2);
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(vim, m1), vmulq_f64(vm, conv)));
  }
  for (; i < n; ++i) {
    out[i] = blur_one(above, mid, below, i, magnitude);
  }
}

void blades_row_neon(const double* px, const double* py, const double* pz, int n, double fx,
                     double fy, double fz, double t_max, double gamma, double* ax, double* ay,
                     double* az) {
  const float64x2_t vfx = vdupq_n_f64(fx);
  const float64x2_t vfy = vdupq_n_f64(fy);
  const float64x2_t vfz = vdupq_n_f64(fz);
  const float64x2_t vtmax = vdupq_n_f64(t_max);
  const float64x2_t vntmax = vdupq_n_f64(-t_max);
  const float64x2_t vgamma = vdupq_n_f64(gamma);
  const float64x2_t vzero = vdupq_n_f64(0.0);
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(px + i), vfx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(py + i), vfy);
    const float64x2_t dz = vsubq_f64(vld1q_f64(pz + i), vfz);
    const float64x2_t r2 =
        vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)), vmulq_f64(dz, dz));
    const float64x2_t r = vsqrtq_f64(r2);
    float64x2_t mag = vsubq_f64(vtmax, vmulq_f64(vgamma, r));
    mag = vminq_f64(mag, vtmax);
    mag = vmaxq_f64(mag, vzero);
    const float64x2_t inv = vdivq_f64(mag, r);
    const uint64x2_t at_foot = vceqq_f64(r, vzero);
    float64x2_t vx = vmulq_f64(dx, inv);
    float64x2_t vy = vnegq_f64(vmulq_f64(vabsq_f64(dy), inv));
    float64x2_t vz = vmulq_f64(dz, inv);
    vx = vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(vx), at_foot));
    vy = vbslq_f64(at_foot, vntmax, vy);
    vz = vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(vz), at_foot));
    vst1q_f64(ax + i, vaddq_f64(vld1q_f64(ax + i), vx));
    vst1q_f64(ay + i, vaddq_f64(vld1q_f64(ay + i), vy));
    vst1q_f64(az + i, vaddq_f64(vld1q_f64(az + i), vz));
  }
  for (; i < n; ++i) {
    blade_one(px[i], py[i], pz[i], fx, fy, fz, t_max, gamma, ax[i], ay[i], az[i]);
  }
}

void clamp_norm_row_neon(double* x, double* y, double* z, const double* max_norm, int n) {
  const float64x2_t vone = vdupq_n_f64(1.0);
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    const float64x2_t vz = vld1q_f64(z + i);
    const float64x2_t mn = vld1q_f64(max_norm + i);
    const float64x2_t n2 =
        vaddq_f64(vaddq_f64(vmulq_f64(vx, vx), vmulq_f64(vy, vy)), vmulq_f64(vz, vz));
    const float64x2_t m2 = vmulq_f64(mn, mn);
    const uint64x2_t over = vcgtq_f64(n2, m2);
    const float64x2_t s_raw = vdivq_f64(mn, vsqrtq_f64(n2));
    const float64x2_t s = vbslq_f64(over, s_raw, vone);
    vst1q_f64(x + i, vmulq_f64(vx, s));
    vst1q_f64(y + i, vmulq_f64(vy, s));
    vst1q_f64(z + i, vmulq_f64(vz, s));
  }
  for (; i < n; ++i) {
    clamp_norm_one(x[i], y[i], z[i], max_norm[i]);
  }
}

}  // namespace

const KernelTable kNeonKernels = {
    "neon", carve_row_neon, blur_row_neon, blades_row_neon, clamp_norm_row_neon,
};

}  // namespace loam::kernels
