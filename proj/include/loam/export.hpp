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

#ifndef LOAM_EXPORT_HPP_
#define LOAM_EXPORT_HPP_

#include <string>

#include "loam/heightfield.hpp"

namespace loam {

// Writes a binary (P5) 16-bit grayscale PGM with big-endian samples, heights
// mapped linearly from [min_h, max_h] onto [0, 65535], plus a sidecar text
// file at path + ".txt" recording the mapping and grid metadata.
// Returns false on I/O failure.
bool write_pgm16(const HeightField& hf, const std::string& path);

// Writes a Wavefront OBJ triangle mesh: one vertex per cell center, two
// counter-clockwise (seen from +y) triangles per grid quad.
// Returns false on I/O failure.
bool write_obj(const HeightField& hf, const std::string& path);

}  // namespace loam

#endif  // LOAM_EXPORT_HPP_
