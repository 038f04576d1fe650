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

#ifndef LOAM_VEC3_HPP_
#define LOAM_VEC3_HPP_

#include <cmath>

namespace loam {

// Right-handed, y-up, meters and seconds throughout.
inline constexpr double kGravityY = -9.81;
inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return {v.x * s, v.y * s, v.z * s}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// A point in the sagittal plane: s along the in-plane ground axis, h along up.
struct Vec2 {
  double s = 0.0;
  double h = 0.0;
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.s + b.s, a.h + b.h}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.s - b.s, a.h - b.h}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.s * b.s + a.h * b.h; }
inline double norm(const Vec2& v) { return std::sqrt(v.s * v.s + v.h * v.h); }

// The vertical plane containing the walk direction and gravity. forward and
// up must be unit length and orthogonal (within 1e-9).
struct SagittalFrame {
  Vec3 origin{};
  Vec3 forward{1.0, 0.0, 0.0};
  Vec3 up{0.0, 1.0, 0.0};
};

// Support segment between the two feet, in sagittal coordinates. Construction
// orders the endpoints so that a.s <= b.s.
struct Segment2 {
  Vec2 a{};
  Vec2 b{};
  Segment2() = default;
  Segment2(const Vec2& p, const Vec2& q) {
    if (p.s <= q.s) {
      a = p;
      b = q;
    } else {
      a = q;
      b = p;
    }
  }
};

inline Vec2 midpoint(const Segment2& seg) {
  return {(seg.a.s + seg.b.s) * 0.5, (seg.a.h + seg.b.h) * 0.5};
}

inline Vec2 project_to_sagittal(const Vec3& p, const SagittalFrame& f) {
  const Vec3 d = p - f.origin;
  return {dot(d, f.forward), dot(d, f.up)};
}

inline Vec3 embed_from_sagittal(const Vec2& q, const SagittalFrame& f) {
  return f.origin + q.s * f.forward + q.h * f.up;
}

// Forces a direction to point downward: (v_x, -|v_y|, v_z).
inline Vec3 down_vector(const Vec3& v) {
  return {v.x, -std::fabs(v.y), v.z};
}

}  // namespace loam

#endif  // LOAM_VEC3_HPP_
