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

#include "loam/kernels.hpp"

namespace loam::kernels {

namespace {

void carve_row_scalar(double* h, double* delta, const double* cx, double cz, int n,
                      const CarveGeom& g) {
  for (int i = 0; i < n; ++i) {
    delta[i] = carve_one(h[i], cx[i], cz, g);
  }
}

void blur_row_scalar(double* out, const double* above, const double* mid, const double* below,
                     int n, double magnitude) {
  for (int i = 0; i < n; ++i) {
    out[i] = blur_one(above, mid, below, i, magnitude);
  }
}

void blades_row_scalar(const double* px, const double* py, const double* pz, int n, double fx,
                       double fy, double fz, double t_max, double gamma, double* ax, double* ay,
                       double* az) {
  for (int i = 0; i < n; ++i) {
    blade_one(px[i], py[i], pz[i], fx, fy, fz, t_max, gamma, ax[i], ay[i], az[i]);
  }
}

void clamp_norm_row_scalar(double* x, double* y, double* z, const double* max_norm, int n) {
  for (int i = 0; i < n; ++i) {
    clamp_norm_one(x[i], y[i], z[i], max_norm[i]);
  }
}

}  // namespace

const KernelTable kScalarKernels = {
    "scalar", carve_row_scalar, blur_row_scalar, blades_row_scalar, clamp_norm_row_scalar,
};

}  // namespace loam::kernels
