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

#ifndef LOAM_HEIGHTFIELD_HPP_
#define LOAM_HEIGHTFIELD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "loam/vec3.hpp"

namespace loam {

// Total carving per print is capped so that repeated stamping terminates at a
// fixed depth: no cell is carved below sole_height - kMaxPrintDepth.
inline constexpr double kMaxPrintDepth = 0.08;

// Width, in cells, of the deposition ring raised around a footprint.
inline constexpr int kRimWidthCells = 1;

// Regular grid of ground heights. Heights are stored at cell centers,
// x-contiguous: heights[iz * nx + ix]. The horizontal extent spans
// [origin.x, origin.x + nx * cell_size] x [origin.z, origin.z + nz * cell_size].
struct HeightField {
  int nx = 0;
  int nz = 0;
  double cell_size = 0.0;
  Vec3 origin{};
  std::vector<double> heights;

  double& at(int ix, int iz) { return heights[static_cast<std::size_t>(iz) * nx + ix]; }
  double at(int ix, int iz) const { return heights[static_cast<std::size_t>(iz) * nx + ix]; }

  double cell_center_x(int ix) const { return origin.x + (ix + 0.5) * cell_size; }
  double cell_center_z(int iz) const { return origin.z + (iz + 0.5) * cell_size; }

  double extent_x() const { return nx * cell_size; }
  double extent_z() const { return nz * cell_size; }
};

// Ground material response, expressed per simulation frame: carve depth,
// rim deposition height, and smoothing filter magnitude.
struct TerrainMaterial {
  std::string name;
  double depth = 0.0;        // d_t, meters per frame
  double compression = 0.0;  // c_t, meters per frame
  double smoothness = 0.0;   // s_t, blend weight in [0, 1]
};

// Oriented rectangle describing one foot sole in the ground plane.
struct FootprintStamp {
  Vec3 center{};         // foot sole center; only x and z locate the print
  double half_length = 0.0;
  double half_width = 0.0;
  double yaw = 0.0;      // orientation in the ground plane, radians
  double sole_height = 0.0;
};

// Inclusive cell-index rectangle. Default-constructed rectangles are empty.
struct CellRect {
  int x0 = 0;
  int z0 = 0;
  int x1 = -1;
  int z1 = -1;

  bool empty() const { return x1 < x0 || z1 < z0; }

  // Smallest rectangle containing both operands.
  CellRect united(const CellRect& other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    return CellRect{x0 < other.x0 ? x0 : other.x0, z0 < other.z0 ? z0 : other.z0,
                    x1 > other.x1 ? x1 : other.x1, z1 > other.z1 ? z1 : other.z1};
  }
};

// Outcome of one footprint stamp.
struct DeformationReport {
  double carved = 0.0;     // volume removed from cells inside the print, m^3
  double deposited = 0.0;  // volume added to the rim ring, m^3
  CellRect bounds;         // affected cells, including the rim
};

// Bilinear interpolation of the four surrounding cell-center heights; exact
// at cell centers, clamped extension in the half-cell border band.
// Throws OutOfTerrain when (x, z) is outside the horizontal extent.
double sample_height(const HeightField& hf, double x, double z);

// Vertical downward ray. Returns (x, sample_height(hf, x, z), z).
// Throws OutOfTerrain outside the extent and RayBelowSurface when
// y_start is below the surface.
Vec3 raycast_down(const HeightField& hf, double x, double z, double y_start);

// Carves every cell whose center lies inside the stamp rectangle (clamped so
// no cell goes below sole_height - kMaxPrintDepth), raises the one-cell rim
// ring around the rectangle by mat.compression, and, when `smooth` is set,
// applies the region Gaussian blend at magnitude mat.smoothness over the
// affected bounding box. Callers that defer smoothing (e.g. batching it to
// foot lift-off) pass smooth = false and use the returned bounds.
// A stamp that covers no cell center returns a zero report and leaves the
// field untouched.
DeformationReport stamp_footprint(HeightField& hf, const FootprintStamp& stamp,
                                  const TerrainMaterial& mat, bool smooth = true);

// Blends each cell of `bounds` (clamped to the grid) toward its 3x3 Gaussian
// convolution (sigma = 1 cell): h' = (1 - magnitude) * h + magnitude * conv.
// Reads come from a snapshot of the pre-pass heights with clamped-edge
// extension at the region borders, so the result is order-independent and
// each pass preserves the region's total height sum exactly.
void apply_gaussian_region(HeightField& hf, const CellRect& bounds, double magnitude);

// Sum of all heights times cell area.
double total_volume(const HeightField& hf);

// Plane of the given slope along +x plus seeded value noise. Deterministic
// for a fixed seed. Origin is (0, 0, 0).
HeightField generate_slope(int nx, int nz, double cell_size, double slope_angle,
                           std::uint64_t noise_seed, double noise_amp);

}  // namespace loam

#endif  // LOAM_HEIGHTFIELD_HPP_
