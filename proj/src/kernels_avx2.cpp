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

// AVX2 variants of the row kernels. Every lane performs the exact operation
// sequence of the per-element reference functions in kernels.hpp: multiplies
// and adds in the same order, min/max with the same operand order, and no
// fused multiply-add. sqrt, div, min and max are IEEE-exact, so results are
// bit-identical to the scalar kernels; the tests assert that.

#include <immintrin.h>

#include "loam/kernels.hpp"

namespace loam::kernels {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
  return _mm256_and_pd(v, mask);
}

inline __m256d neg_pd(__m256d v) {
  const __m256d sign = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000ll));
  return _mm256_xor_pd(v, sign);
}

void carve_row_avx2(double* h, double* delta, const double* cx, double cz, int n,
                    const CarveGeom& g) {
  const __m256d vsx = _mm256_set1_pd(g.sx);
  const __m256d vrz = _mm256_set1_pd(cz - g.sz);
  const __m256d vfx = _mm256_set1_pd(g.fx);
  const __m256d vfz = _mm256_set1_pd(g.fz);
  const __m256d vhl = _mm256_set1_pd(g.half_len);
  const __m256d vhw = _mm256_set1_pd(g.half_wid);
  const __m256d vfloor = _mm256_set1_pd(g.floor_y);
  const __m256d vdt = _mm256_set1_pd(g.d_t);
  const __m256d vzero = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vcx = _mm256_loadu_pd(cx + i);
    const __m256d vh = _mm256_loadu_pd(h + i);
    const __m256d rx = _mm256_sub_pd(vcx, vsx);
    const __m256d lx = _mm256_add_pd(_mm256_mul_pd(rx, vfx), _mm256_mul_pd(vrz, vfz));
    const __m256d lz = _mm256_sub_pd(_mm256_mul_pd(vrz, vfx), _mm256_mul_pd(rx, vfz));
    __m256d t = _mm256_sub_pd(vh, vfloor);
    t = _mm256_min_pd(t, vdt);
    t = _mm256_max_pd(t, vzero);
    const __m256d in_x = _mm256_cmp_pd(abs_pd(lx), vhl, _CMP_LE_OQ);
    const __m256d in_z = _mm256_cmp_pd(abs_pd(lz), vhw, _CMP_LE_OQ);
    t = _mm256_and_pd(t, _mm256_and_pd(in_x, in_z));
    _mm256_storeu_pd(h + i, _mm256_sub_pd(vh, t));
    _mm256_storeu_pd(delta + i, t);
  }
  for (; i < n; ++i) {
    delta[i] = carve_one(h[i], cx[i], cz, g);
  }
}

void blur_row_avx2(double* out, const double* above, const double* mid, const double* below,
                   int n, double magnitude) {
  const __m256d wc = _mm256_set1_pd(kWCenter);
  const __m256d ws = _mm256_set1_pd(kWSide);
  const __m256d wk = _mm256_set1_pd(kWCorner);
  const __m256d vm = _mm256_set1_pd(magnitude);
  const __m256d vim = _mm256_set1_pd(1.0 - magnitude);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(above + i);
    const __m256d a1 = _mm256_loadu_pd(above + i + 1);
    const __m256d a2 = _mm256_loadu_pd(above + i + 2);
    const __m256d m0 = _mm256_loadu_pd(mid + i);
    const __m256d m1 = _mm256_loadu_pd(mid + i + 1);
    const __m256d m2 = _mm256_loadu_pd(mid + i + 2);
    const __m256d b0 = _mm256_loadu_pd(below + i);
    const __m256d b1 = _mm256_loadu_pd(below + i + 1);
    const __m256d b2 = _mm256_loadu_pd(below + i + 2);
    const __m256d r0 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(a0, wk), _mm256_mul_pd(a1, ws)), _mm256_mul_pd(a2, wk));
    const __m256d r1 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(m0, ws), _mm256_mul_pd(m1, wc)), _mm256_mul_pd(m2, ws));
    const __m256d r2 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(b0, wk), _mm256_mul_pd(b1, ws)), _mm256_mul_pd(b2, wk));
    const __m256d conv = _mm256_add_pd(_mm256_add_pd(r0, r1), r2);
    const __m256d res = _mm256_add_pd(_mm256_mul_pd(vim, m1), _mm256_mul_pd(vm, conv));
    _mm256_storeu_pd(out + i, res);
  }
  for (; i < n; ++i) {
    out[i] = blur_one(above, mid, below, i, magnitude);
  }
}

void blades_row_avx2(const double* px, const double* py, const double* pz, int n, double fx,
                     double fy, double fz, double t_max, double gamma, double* ax, double* ay,
                     double* az) {
  const __m256d vfx = _mm256_set1_pd(fx);
  const __m256d vfy = _mm256_set1_pd(fy);
  const __m256d vfz = _mm256_set1_pd(fz);
  const __m256d vtmax = _mm256_set1_pd(t_max);
  const __m256d vntmax = _mm256_set1_pd(-t_max);
  const __m256d vgamma = _mm256_set1_pd(gamma);
  const __m256d vzero = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), vfx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), vfy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pz + i), vfz);
    const __m256d r2 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), _mm256_mul_pd(dz, dz));
    const __m256d r = _mm256_sqrt_pd(r2);
    __m256d mag = _mm256_sub_pd(vtmax, _mm256_mul_pd(vgamma, r));
    mag = _mm256_min_pd(mag, vtmax);
    mag = _mm256_max_pd(mag, vzero);
    const __m256d inv = _mm256_div_pd(mag, r);
    const __m256d at_foot = _mm256_cmp_pd(r, vzero, _CMP_EQ_OQ);
    __m256d vx = _mm256_mul_pd(dx, inv);
    __m256d vy = neg_pd(_mm256_mul_pd(abs_pd(dy), inv));
    __m256d vz = _mm256_mul_pd(dz, inv);
    vx = _mm256_andnot_pd(at_foot, vx);
    vy = _mm256_blendv_pd(vy, vntmax, at_foot);
    vz = _mm256_andnot_pd(at_foot, vz);
    _mm256_storeu_pd(ax + i, _mm256_add_pd(_mm256_loadu_pd(ax + i), vx));
    _mm256_storeu_pd(ay + i, _mm256_add_pd(_mm256_loadu_pd(ay + i), vy));
    _mm256_storeu_pd(az + i, _mm256_add_pd(_mm256_loadu_pd(az + i), vz));
  }
  for (; i < n; ++i) {
    blade_one(px[i], py[i], pz[i], fx, fy, fz, t_max, gamma, ax[i], ay[i], az[i]);
  }
}

void clamp_norm_row_avx2(double* x, double* y, double* z, const double* max_norm, int n) {
  const __m256d vone = _mm256_set1_pd(1.0);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d mn = _mm256_loadu_pd(max_norm + i);
    const __m256d n2 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)), _mm256_mul_pd(vz, vz));
    const __m256d m2 = _mm256_mul_pd(mn, mn);
    const __m256d over = _mm256_cmp_pd(n2, m2, _CMP_GT_OQ);
    const __m256d s_raw = _mm256_div_pd(mn, _mm256_sqrt_pd(n2));
    const __m256d s = _mm256_blendv_pd(vone, s_raw, over);
    _mm256_storeu_pd(x + i, _mm256_mul_pd(vx, s));
    _mm256_storeu_pd(y + i, _mm256_mul_pd(vy, s));
    _mm256_storeu_pd(z + i, _mm256_mul_pd(vz, s));
  }
  for (; i < n; ++i) {
    clamp_norm_one(x[i], y[i], z[i], max_norm[i]);
  }
}

}  // namespace

const KernelTable kAvx2Kernels = {
    "avx2", carve_row_avx2, blur_row_avx2, blades_row_avx2, clamp_norm_row_avx2,
};

}  // namespace loam::kernels
