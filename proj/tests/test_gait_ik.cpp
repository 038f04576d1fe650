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
#include <vector>

#include "doctest.h"
#include "loam/error.hpp"
#include "loam/gait.hpp"
#include "loam/rng.hpp"
#include "loam/vegetation.hpp"

namespace loam {
namespace {

HeightField make_flat(int nx, int nz, double cell, double height) {
  HeightField hf;
  hf.nx = nx;
  hf.nz = nz;
  hf.cell_size = cell;
  hf.heights.assign(static_cast<std::size_t>(nx) * nz, height);
  return hf;
}

TEST_CASE("advance_gait wraps the phase and flips stance per half cycle") {
  GaitState g;
  g.cycle_duration = 1.2;

  g.phase = 0.2;
  g.stance_foot = Foot::kLeft;
  GaitState next = advance_gait(g, 0.1 * g.cycle_duration);
  CHECK(next.phase == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(next.stance_foot == Foot::kLeft);

  g.phase = 0.45;
  next = advance_gait(g, 0.1 * g.cycle_duration);
  CHECK(next.phase == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(next.stance_foot == Foot::kRight);

  g.phase = 0.95;
  g.stance_foot = Foot::kRight;
  next = advance_gait(g, 0.1 * g.cycle_duration);
  CHECK(next.phase == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(next.stance_foot == Foot::kLeft);
}

TEST_CASE("advance_gait over a whole cycle is the identity") {
  GaitState g;
  g.phase = 0.25;  // dyadic, so the full-cycle advance is exact
  g.stance_foot = Foot::kLeft;
  g.cycle_duration = 1.0;
  const GaitState next = advance_gait(g, 1.0);
  CHECK(next.phase == 0.25);
  CHECK(next.stance_foot == Foot::kLeft);  // two flips cancel
}

TEST_CASE("swing_progress maps both half cycles onto [0, 1)") {
  GaitState g;
  g.phase = 0.25;
  CHECK(swing_progress(g) == 0.5);
  g.phase = 0.75;
  CHECK(swing_progress(g) == 0.5);
  g.phase = 0.0;
  CHECK(swing_progress(g) == 0.0);
  g.phase = 0.5;
  CHECK(swing_progress(g) == 0.0);
}

TEST_CASE("swing_target interpolates from lift-off toward the landing point") {
  const HeightField hf = make_flat(128, 128, 0.078125, 0.0);
  GaitState g;
  g.phase = 0.25;  // u = 0.5
  g.stance_foot = Foot::kLeft;
  g.step_length = 0.5;
  g.swing_apex = 0.05;

  const Vec3 stance{5.0, 0.0, 5.0};
  const Vec3 liftoff{4.5, 0.0, 5.0};
  const Vec3 target = swing_target(g, stance, liftoff, 5.0, hf, nullptr);
  CHECK(target.x == 5.0);  // halfway between lift-off and stance + step
  CHECK(target.z == 5.0);
  CHECK(target.y == doctest::Approx(0.05).epsilon(1e-12));  // apex of the bump
}

TEST_CASE("swing_target lands on the deformed ground") {
  HeightField hf = make_flat(128, 128, 0.078125, -0.04);  // carved everywhere
  GaitState g;
  g.phase = 0.4999995;  // u ~ 1
  g.stance_foot = Foot::kLeft;
  g.step_length = 0.5;
  g.swing_apex = 0.05;

  const Vec3 stance{5.0, -0.04, 5.0};
  const Vec3 liftoff{4.5, 0.0, 5.0};
  const Vec3 target = swing_target(g, stance, liftoff, 5.0, hf, nullptr);
  CHECK(target.x == doctest::Approx(5.5).epsilon(1e-6));
  CHECK(target.y == doctest::Approx(-0.04).epsilon(1e-5));
}

TEST_CASE("an active platform raises the landing height") {
  const HeightField hf = make_flat(128, 128, 0.078125, 0.0);
  GaitState g;
  g.phase = 0.4999995;
  g.stance_foot = Foot::kLeft;
  g.step_length = 0.5;
  g.swing_apex = 0.05;
  const Vec3 stance{5.0, 0.0, 5.0};
  const Vec3 liftoff{4.5, 0.0, 5.0};

  VirtualPlatform pl;
  pl.state = VirtualPlatform::State::kHold;
  pl.height_above_ground = 0.3;
  pl.h_max = 0.3;
  const Vec3 on_platform = swing_target(g, stance, liftoff, 5.0, hf, &pl);
  CHECK(on_platform.y == doctest::Approx(0.3).epsilon(1e-5));

  const Vec3 on_ground = swing_target(g, stance, liftoff, 5.0, hf, nullptr);
  CHECK(std::fabs(on_ground.y) < 1e-5);

  VirtualPlatform inactive;
  inactive.height_above_ground = 0.0;
  const Vec3 no_lift = swing_target(g, stance, liftoff, 5.0, hf, &inactive);
  CHECK(no_lift.y == on_ground.y);
}

TEST_CASE("swing_target clears rough ground past the lift-off ramp") {
  const HeightField hf = generate_slope(128, 128, 0.078125, std::atan(0.08), 99, 0.03);
  const Vec3 stance = raycast_down(hf, 5.0, 5.0, 10.0);
  const Vec3 liftoff = raycast_down(hf, 4.5, 5.0, 10.0);
  GaitState g;
  g.stance_foot = Foot::kLeft;
  g.step_length = 0.5;
  g.swing_apex = 0.05;
  for (int i = 0; i <= 60; ++i) {
    const double u = 0.2 + (1.0 - 1e-9 - 0.2) * i / 60.0;
    g.phase = u / 2.0;
    const Vec3 target = swing_target(g, stance, liftoff, 5.0, hf, nullptr);
    const double ground = sample_height(hf, target.x, target.z);
    CHECK(target.y >= ground - 1e-12);
  }
}

TEST_CASE("swing_target rejects landings outside the terrain") {
  const HeightField hf = make_flat(32, 32, 0.25, 0.0);  // 8 x 8 m
  GaitState g;
  g.phase = 0.25;
  g.stance_foot = Foot::kLeft;
  g.step_length = 0.5;
  const Vec3 stance{7.8, 0.0, 4.0};
  const Vec3 liftoff{7.3, 0.0, 4.0};
  CHECK_THROWS_AS(swing_target(g, stance, liftoff, 4.0, hf, nullptr), OutOfTerrain);
}

TEST_CASE("two-bone IK straightens the leg at full extension") {
  const Morphology m;  // 0.5 / 0.5 legs
  SagittalFrame frame;
  const Vec3 hip{5.0, 2.0, 5.0};
  const IkResult r = solve_two_bone_ik(hip, Vec3{5.0, 1.0, 5.0}, m, frame);
  CHECK_FALSE(r.unreachable);
  CHECK(r.pose.knee_angle == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(r.pose.hip_angle == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("two-bone IK bends the knee to a right angle") {
  const Morphology m;
  SagittalFrame frame;
  const Vec3 hip{5.0, 2.0, 5.0};
  // Target at distance 0.5 * sqrt(2): cos(knee) = 0, exactly a right angle.
  const IkResult r = solve_two_bone_ik(hip, Vec3{5.5, 1.5, 5.0}, m, frame);
  CHECK_FALSE(r.unreachable);
  CHECK(r.pose.knee_angle == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("unreachable targets are clamped to the reachable sphere") {
  const Morphology m;
  SagittalFrame frame;
  const Vec3 hip{5.0, 2.0, 5.0};
  const IkResult r = solve_two_bone_ik(hip, Vec3{5.0, 0.8, 5.0}, m, frame);
  CHECK(r.unreachable);
  const Vec3 foot = fk_foot(hip, r.pose, m, frame);
  CHECK(norm(foot - hip) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(foot.x == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(foot.y == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("FK inverts IK across the reachable disc") {
  SagittalFrame frame;
  SplitMix rng{41};
  for (int i = 0; i < 500; ++i) {
    Morphology m;
    m.leg_upper = 0.3 + rng.u01() * 0.3;
    m.leg_lower = 0.3 + rng.u01() * 0.3;
    const double d_min = std::fabs(m.leg_upper - m.leg_lower) + 1e-3;
    const double d_max = m.leg_upper + m.leg_lower - 1e-3;
    const double d = d_min + rng.u01() * (d_max - d_min);
    const double theta = (rng.u01() * 2.0 - 1.0) * 2.0;  // from straight down
    const Vec3 hip{5.0 + rng.u01(), 1.5 + rng.u01(), 5.0 + rng.u01()};
    const Vec3 target = hip + Vec3{d * std::sin(theta), -d * std::cos(theta), 0.0};

    const IkResult r = solve_two_bone_ik(hip, target, m, frame);
    CHECK_FALSE(r.unreachable);
    CHECK(r.pose.knee_angle >= 0.0);
    CHECK(r.pose.knee_angle <= kPi);
    const Vec3 foot = fk_foot(hip, r.pose, m, frame);
    CHECK(norm(foot - target) < 1e-9);
    CHECK(foot.z == target.z);
  }
}

TEST_CASE("contact events fire on threshold crossings") {
  FootSupportSample prev[2];
  FootSupportSample next[2];
  prev[0] = {0.01, 0.0, false};
  prev[1] = {0.0, 0.0, false};
  next[0] = {0.00005, 0.0, true};
  next[1] = {0.0, 0.0, false};

  const std::vector<ContactEvent> events = foot_contact_events(prev, next);
  REQUIRE(events.size() == 1);
  CHECK(events[0].foot == Foot::kLeft);
  CHECK(events[0].kind == ContactEvent::Kind::kTouchDown);
  CHECK(events[0].on_platform);  // carries the new support's flag
}

TEST_CASE("no events without a crossing") {
  FootSupportSample prev[2];
  FootSupportSample next[2];
  prev[0] = {0.0, 0.0, false};
  prev[1] = {0.5, 0.0, false};
  next[0] = {0.00009, 0.0, false};  // still within tolerance
  next[1] = {0.4, 0.0, false};
  CHECK(foot_contact_events(prev, next).empty());
}

TEST_CASE("lift-off reports the support it left") {
  FootSupportSample prev[2];
  FootSupportSample next[2];
  prev[0] = {0.3, 0.3, true};  // planted on a platform
  prev[1] = {0.0, 0.0, false};
  next[0] = {0.5, 0.0, false};  // in flight, support back to bare ground
  next[1] = {0.0, 0.0, false};

  const std::vector<ContactEvent> events = foot_contact_events(prev, next);
  REQUIRE(events.size() == 1);
  CHECK(events[0].foot == Foot::kLeft);
  CHECK(events[0].kind == ContactEvent::Kind::kLiftOff);
  CHECK(events[0].on_platform);  // the platform it lifted from
}

TEST_CASE("simultaneous events order the left foot first") {
  FootSupportSample prev[2];
  FootSupportSample next[2];
  prev[0] = {0.01, 0.0, false};
  prev[1] = {0.01, 0.0, false};
  next[0] = {0.0, 0.0, false};
  next[1] = {0.0, 0.0, false};

  const std::vector<ContactEvent> events = foot_contact_events(prev, next);
  REQUIRE(events.size() == 2);
  CHECK(events[0].foot == Foot::kLeft);
  CHECK(events[1].foot == Foot::kRight);
}

}  // namespace
}  // namespace loam
