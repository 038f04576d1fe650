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

#ifndef LOAM_RNG_HPP_
#define LOAM_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace loam {

// splitmix64 step. Used for terrain noise and blade scattering instead of
// <random> distributions, whose output is not pinned by the standard; traces
// must be byte-identical across library versions.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct SplitMix {
  uint64_t state = 0;
  explicit SplitMix(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Hash of a lattice corner to [-1, 1].
inline double lattice_noise(uint64_t seed, int64_t ix, int64_t iz) {
  uint64_t h = splitmix64(seed ^ splitmix64((static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ull) ^
                                            (static_cast<uint64_t>(iz) + 0xD1B54A32D192ED03ull)));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

// Value noise on a 1 m lattice with smoothstep interpolation, range [-1, 1].
inline double value_noise(double x, double z, uint64_t seed) {
  const double fx = std::floor(x);
  const double fz = std::floor(z);
  const int64_t ix = static_cast<int64_t>(fx);
  const int64_t iz = static_cast<int64_t>(fz);
  const double tx = x - fx;
  const double tz = z - fz;
  const double sx = tx * tx * (3.0 - 2.0 * tx);
  const double sz = tz * tz * (3.0 - 2.0 * tz);
  const double n00 = lattice_noise(seed, ix, iz);
  const double n10 = lattice_noise(seed, ix + 1, iz);
  const double n01 = lattice_noise(seed, ix, iz + 1);
  const double n11 = lattice_noise(seed, ix + 1, iz + 1);
  const double a = n00 * (1.0 - sx) + n10 * sx;
  const double b = n01 * (1.0 - sx) + n11 * sx;
  return a * (1.0 - sz) + b * sz;
}

}  // namespace loam

#endif  // LOAM_RNG_HPP_
