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

#include <cmath>

#include "doctest.h"
#include "loam/rng.hpp"
#include "loam/vec3.hpp"

namespace loam {
namespace {

TEST_CASE("project_to_sagittal maps frame axes to plane coordinates") {
  SagittalFrame frame;
  frame.origin = Vec3{2.0, 1.0, -3.0};

  const Vec2 at_origin = project_to_sagittal(frame.origin, frame);
  CHECK(at_origin.s == 0.0);
  CHECK(at_origin.h == 0.0);

  const Vec2 fwd2 = project_to_sagittal(frame.origin + 2.0 * frame.forward, frame);
  CHECK(fwd2.s == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fwd2.h == doctest::Approx(0.0).epsilon(1e-12));

  const Vec2 mixed = project_to_sagittal(frame.origin + frame.forward + 3.0 * frame.up, frame);
  CHECK(mixed.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed.h == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("embed_from_sagittal inverts the projection for in-plane points") {
  SagittalFrame frame;
  frame.origin = Vec3{0.5, -0.25, 7.0};
  SplitMix rng{101};
  for (int i = 0; i < 200; ++i) {
    const Vec2 q{rng.u01() * 20.0 - 10.0, rng.u01() * 20.0 - 10.0};
    const Vec3 p = embed_from_sagittal(q, frame);
    const Vec2 back = project_to_sagittal(p, frame);
    CHECK(back.s == doctest::Approx(q.s).epsilon(1e-12));
    CHECK(back.h == doctest::Approx(q.h).epsilon(1e-12));
  }
}

TEST_CASE("projection discards the out-of-plane component") {
  SagittalFrame frame;
  const Vec3 p{1.5, 2.5, 42.0};  // z is out of plane for the default frame
  const Vec2 q = project_to_sagittal(p, frame);
  CHECK(q.s == 1.5);
  CHECK(q.h == 2.5);
  const Vec3 back = embed_from_sagittal(q, frame);
  CHECK(back.x == 1.5);
  CHECK(back.y == 2.5);
  CHECK(back.z == 0.0);
}

TEST_CASE("down_vector flips the vertical component only") {
  const Vec3 a = down_vector(Vec3{1.0, 2.0, 0.0});
  CHECK(a.x == 1.0);
  CHECK(a.y == -2.0);
  CHECK(a.z == 0.0);

  const Vec3 b = down_vector(Vec3{0.0, -1.0, 0.0});
  CHECK(b.x == 0.0);
  CHECK(b.y == -1.0);
  CHECK(b.z == 0.0);

  const Vec3 c = down_vector(Vec3{0.0, 0.0, 0.0});
  CHECK(c.x == 0.0);
  CHECK(c.y == 0.0);
  CHECK(c.z == 0.0);
}

TEST_CASE("down_vector is idempotent, norm-preserving, and never points up") {
  SplitMix rng{7};
  for (int i = 0; i < 500; ++i) {
    const Vec3 v{rng.u01() * 4.0 - 2.0, rng.u01() * 4.0 - 2.0, rng.u01() * 4.0 - 2.0};
    const Vec3 d = down_vector(v);
    const Vec3 dd = down_vector(d);
    CHECK(dd.x == d.x);
    CHECK(dd.y == d.y);
    CHECK(dd.z == d.z);
    CHECK(d.y <= 0.0);
    CHECK(norm(d) == doctest::Approx(norm(v)).epsilon(1e-15));
  }
}

TEST_CASE("Segment2 orders endpoints along the in-plane axis") {
  const Segment2 sorted(Vec2{-1.0, 5.0}, Vec2{2.0, -3.0});
  CHECK(sorted.a.s == -1.0);
  CHECK(sorted.b.s == 2.0);

  const Segment2 swapped(Vec2{2.0, -3.0}, Vec2{-1.0, 5.0});
  CHECK(swapped.a.s == -1.0);
  CHECK(swapped.a.h == 5.0);
  CHECK(swapped.b.s == 2.0);
  CHECK(swapped.b.h == -3.0);
}

TEST_CASE("midpoint of a degenerate segment is the shared point") {
  const Segment2 seg(Vec2{0.75, 1.5}, Vec2{0.75, 1.5});
  const Vec2 mid = midpoint(seg);
  CHECK(mid.s == 0.75);
  CHECK(mid.h == 1.5);
}

TEST_CASE("midpoint is exact for dyadic endpoints") {
  const Segment2 seg(Vec2{-0.25, 0.5}, Vec2{0.75, 1.5});
  const Vec2 mid = midpoint(seg);
  CHECK(mid.s == 0.25);
  CHECK(mid.h == 1.0);
}

TEST_CASE("Vec3 arithmetic basics") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{-0.5, 0.25, 4.0};
  const Vec3 sum = a + b;
  CHECK(sum.x == 0.5);
  CHECK(sum.y == 2.25);
  CHECK(sum.z == 7.0);
  CHECK(dot(a, b) == doctest::Approx(-0.5 + 0.5 + 12.0).epsilon(1e-15));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == 5.0);
}

}  // namespace
}  // namespace loam
