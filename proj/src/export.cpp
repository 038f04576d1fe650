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

#include "loam/export.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

namespace loam {

bool write_pgm16(const HeightField& hf, const std::string& path) {
  const auto [min_it, max_it] = std::minmax_element(hf.heights.begin(), hf.heights.end());
  const double min_h = hf.heights.empty() ? 0.0 : *min_it;
  const double max_h = hf.heights.empty() ? 0.0 : *max_it;
  const double range = max_h - min_h;

  std::ofstream pgm(path, std::ios::binary);
  if (!pgm) {
    return false;
  }
  pgm << "P5\n" << hf.nx << " " << hf.nz << "\n65535\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(hf.nx) * 2);
  for (int k = 0; k < hf.nz; ++k) {
    for (int i = 0; i < hf.nx; ++i) {
      double t = range > 0.0 ? (hf.at(i, k) - min_h) / range : 0.0;
      t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
      const unsigned v = static_cast<unsigned>(t * 65535.0 + 0.5);
      row[static_cast<std::size_t>(i) * 2] = static_cast<unsigned char>(v >> 8);
      row[static_cast<std::size_t>(i) * 2 + 1] = static_cast<unsigned char>(v & 0xFF);
    }
    pgm.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!pgm) {
    return false;
  }
  pgm.close();

  std::ofstream meta(path + ".txt");
  if (!meta) {
    return false;
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "min_height %.17g\nmax_height %.17g\nnx %d\nnz %d\ncell_size %.17g\n", min_h,
                max_h, hf.nx, hf.nz, hf.cell_size);
  meta << buf;
  return static_cast<bool>(meta);
}

bool write_obj(const HeightField& hf, const std::string& path) {
  std::ofstream obj(path);
  if (!obj) {
    return false;
  }
  char buf[160];
  for (int k = 0; k < hf.nz; ++k) {
    for (int i = 0; i < hf.nx; ++i) {
      std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", hf.cell_center_x(i), hf.at(i, k),
                    hf.cell_center_z(k));
      obj << buf;
    }
  }
  // Vertex indices are 1-based; vertex (i, k) is k * nx + i + 1. Both
  // triangles of a quad wind counter-clockwise when viewed from +y.
  for (int k = 0; k + 1 < hf.nz; ++k) {
    for (int i = 0; i + 1 < hf.nx; ++i) {
      const long long a = static_cast<long long>(k) * hf.nx + i + 1;
      const long long b = a + hf.nx;       // (i, k+1)
      const long long c = a + 1;           // (i+1, k)
      const long long d = a + hf.nx + 1;   // (i+1, k+1)
      std::snprintf(buf, sizeof(buf), "f %lld %lld %lld\nf %lld %lld %lld\n", a, b, c, c, b, d);
      obj << buf;
    }
  }
  return static_cast<bool>(obj);
}

}  // namespace loam
