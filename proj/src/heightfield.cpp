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

#include "loam/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "loam/error.hpp"
#include "loam/kernels.hpp"
#include "loam/rng.hpp"

namespace loam {

namespace {

int clamp_index(int i, int lo, int hi) { return i < lo ? lo : (i > hi ? hi : i); }

// First/last cell whose center lies within [lo, hi] along one axis, before
// clamping to the grid.
std::pair<int, int> center_index_range(double lo, double hi, double org, double cell) {
  const int first = static_cast<int>(std::ceil((lo - org) / cell - 0.5));
  const int last = static_cast<int>(std::floor((hi - org) / cell - 0.5));
  return {first, last};
}

}  // namespace

double sample_height(const HeightField& hf, double x, double z) {
  if (!(x >= hf.origin.x && x <= hf.origin.x + hf.extent_x() && z >= hf.origin.z &&
        z <= hf.origin.z + hf.extent_z())) {
    throw OutOfTerrain("height query at (" + std::to_string(x) + ", " + std::to_string(z) +
                       ") is outside the terrain extent");
  }
  const double gx = (x - hf.origin.x) / hf.cell_size - 0.5;
  const double gz = (z - hf.origin.z) / hf.cell_size - 0.5;
  const double fx = std::floor(gx);
  const double fz = std::floor(gz);
  // The half-cell band outside the outermost cell centers extends the border
  // value (t is forced to 0 there), so interpolation only ever runs between
  // two real centers.
  int i0 = static_cast<int>(fx);
  int k0 = static_cast<int>(fz);
  double tx = gx - fx;
  double tz = gz - fz;
  if (fx < 0.0) {
    i0 = 0;
    tx = 0.0;
  } else if (i0 >= hf.nx - 1) {
    i0 = hf.nx - 1;
    tx = 0.0;
  }
  if (fz < 0.0) {
    k0 = 0;
    tz = 0.0;
  } else if (k0 >= hf.nz - 1) {
    k0 = hf.nz - 1;
    tz = 0.0;
  }
  const int i1 = clamp_index(i0 + 1, 0, hf.nx - 1);
  const int k1 = clamp_index(k0 + 1, 0, hf.nz - 1);
  const double h00 = hf.at(i0, k0);
  const double h10 = hf.at(i1, k0);
  const double h01 = hf.at(i0, k1);
  const double h11 = hf.at(i1, k1);
  // Lerp in the a*(1-t) + b*t form so the result is exact at t = 0 and t = 1.
  const double r0 = h00 * (1.0 - tx) + h10 * tx;
  const double r1 = h01 * (1.0 - tx) + h11 * tx;
  return r0 * (1.0 - tz) + r1 * tz;
}

Vec3 raycast_down(const HeightField& hf, double x, double z, double y_start) {
  const double h = sample_height(hf, x, z);
  if (y_start < h) {
    throw RayBelowSurface("ray origin y=" + std::to_string(y_start) +
                          " starts below the surface at y=" + std::to_string(h));
  }
  return Vec3{x, h, z};
}

DeformationReport stamp_footprint(HeightField& hf, const FootprintStamp& stamp,
                                  const TerrainMaterial& mat, bool smooth) {
  DeformationReport report;
  const double fx = std::cos(stamp.yaw);
  const double fz = std::sin(stamp.yaw);
  const double rim = kRimWidthCells * hf.cell_size;
  const double rl = stamp.half_length + rim;
  const double rw = stamp.half_width + rim;
  // World-axis half-extents of the rim-expanded oriented rectangle.
  const double ex = rl * std::fabs(fx) + rw * std::fabs(fz);
  const double ez = rl * std::fabs(fz) + rw * std::fabs(fx);

  auto [i0, i1] = center_index_range(stamp.center.x - ex, stamp.center.x + ex, hf.origin.x,
                                     hf.cell_size);
  auto [k0, k1] = center_index_range(stamp.center.z - ez, stamp.center.z + ez, hf.origin.z,
                                     hf.cell_size);
  i0 = clamp_index(i0, 0, hf.nx - 1);
  i1 = clamp_index(i1, 0, hf.nx - 1);
  k0 = clamp_index(k0, 0, hf.nz - 1);
  k1 = clamp_index(k1, 0, hf.nz - 1);
  if (i1 < i0 || k1 < k0) {
    return report;  // no cell center can be affected
  }

  // Classification pass: count covered centers and collect the rim ring
  // (centers within kRimWidthCells of the rectangle but outside it, measured
  // in the rectangle's own axes).
  int inside_count = 0;
  std::vector<std::size_t> rim_cells;
  for (int k = k0; k <= k1; ++k) {
    const double rz = hf.cell_center_z(k) - stamp.center.z;
    for (int i = i0; i <= i1; ++i) {
      const double rx = hf.cell_center_x(i) - stamp.center.x;
      const double lx = rx * fx + rz * fz;
      const double lz = rz * fx - rx * fz;
      const bool inside =
          std::fabs(lx) <= stamp.half_length && std::fabs(lz) <= stamp.half_width;
      if (inside) {
        ++inside_count;
      } else if (std::fabs(lx) <= rl && std::fabs(lz) <= rw) {
        rim_cells.push_back(static_cast<std::size_t>(k) * hf.nx + i);
      }
    }
  }
  if (inside_count == 0) {
    return report;  // footprint covers no cell center: leave the field untouched
  }

  // Carve pass over the bounding box rows. The ledger accumulates the actual
  // per-cell height drop (pre minus post) in row-major order so the reported
  // carved volume equals the measured field change exactly.
  const int width = i1 - i0 + 1;
  std::vector<double> cx(static_cast<std::size_t>(width));
  for (int i = i0; i <= i1; ++i) {
    cx[static_cast<std::size_t>(i - i0)] = hf.cell_center_x(i);
  }
  std::vector<double> pre(static_cast<std::size_t>(width));
  std::vector<double> delta(static_cast<std::size_t>(width));
  const kernels::CarveGeom geom{stamp.center.x,  stamp.center.z,
                                fx,              fz,
                                stamp.half_length, stamp.half_width,
                                stamp.sole_height - kMaxPrintDepth, mat.depth};
  const kernels::KernelTable& table = kernels::active_kernels();
  double carved_sum = 0.0;
  for (int k = k0; k <= k1; ++k) {
    double* row = &hf.heights[static_cast<std::size_t>(k) * hf.nx + i0];
    std::copy(row, row + width, pre.begin());
    table.carve_row(row, delta.data(), cx.data(), hf.cell_center_z(k), width, geom);
    for (int j = 0; j < width; ++j) {
      carved_sum += pre[static_cast<std::size_t>(j)] - row[j];
    }
  }
  report.carved = carved_sum * (hf.cell_size * hf.cell_size);

  if (mat.compression > 0.0) {
    for (std::size_t idx : rim_cells) {
      hf.heights[idx] += mat.compression;
    }
    report.deposited =
        mat.compression * static_cast<double>(rim_cells.size()) * (hf.cell_size * hf.cell_size);
  }

  report.bounds = CellRect{i0, k0, i1, k1};
  if (smooth) {
    apply_gaussian_region(hf, report.bounds, mat.smoothness);
  }
  return report;
}

void apply_gaussian_region(HeightField& hf, const CellRect& bounds, double magnitude) {
  if (bounds.empty() || magnitude == 0.0) {
    return;
  }
  const int x0 = clamp_index(bounds.x0, 0, hf.nx - 1);
  const int x1 = clamp_index(bounds.x1, 0, hf.nx - 1);
  const int z0 = clamp_index(bounds.z0, 0, hf.nz - 1);
  const int z1 = clamp_index(bounds.z1, 0, hf.nz - 1);
  if (x1 < x0 || z1 < z0) {
    return;
  }
  const int width = x1 - x0 + 1;
  const int rows = z1 - z0 + 1;
  const int padded = width + 2;
  // Snapshot the region plus a one-cell halo. The halo replicates the region's
  // own edge cells (not the surrounding grid), so each pass redistributes
  // height strictly within the region and the total sum is preserved exactly.
  std::vector<double> snap(static_cast<std::size_t>(rows + 2) * padded);
  for (int r = 0; r < rows + 2; ++r) {
    const int k = clamp_index(z0 + r - 1, z0, z1);
    for (int j = 0; j < padded; ++j) {
      const int i = clamp_index(x0 + j - 1, x0, x1);
      snap[static_cast<std::size_t>(r) * padded + j] = hf.at(i, k);
    }
  }
  const kernels::KernelTable& table = kernels::active_kernels();
  for (int r = 0; r < rows; ++r) {
    const double* above = &snap[static_cast<std::size_t>(r) * padded];
    const double* mid = &snap[static_cast<std::size_t>(r + 1) * padded];
    const double* below = &snap[static_cast<std::size_t>(r + 2) * padded];
    double* out = &hf.heights[static_cast<std::size_t>(z0 + r) * hf.nx + x0];
    table.blur_row(out, above, mid, below, width, magnitude);
  }
}

double total_volume(const HeightField& hf) {
  double sum = 0.0;
  for (double h : hf.heights) {
    sum += h;
  }
  return sum * (hf.cell_size * hf.cell_size);
}

HeightField generate_slope(int nx, int nz, double cell_size, double slope_angle,
                           std::uint64_t noise_seed, double noise_amp) {
  HeightField hf;
  hf.nx = nx;
  hf.nz = nz;
  hf.cell_size = cell_size;
  hf.origin = Vec3{0.0, 0.0, 0.0};
  hf.heights.resize(static_cast<std::size_t>(nx) * nz);
  const double grade = std::tan(slope_angle);
  for (int k = 0; k < nz; ++k) {
    const double cz = hf.cell_center_z(k);
    for (int i = 0; i < nx; ++i) {
      const double cx = hf.cell_center_x(i);
      double h = grade * cx;
      if (noise_amp != 0.0) {
        h += noise_amp * value_noise(cx, cz, noise_seed);
      }
      hf.at(i, k) = h;
    }
  }
  return hf;
}

}  // namespace loam
