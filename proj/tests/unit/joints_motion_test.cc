// Copyright 2026 The seatwalk Authors.
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

#include "doctest.h"
#include "seatwalk/joints.h"
#include "seatwalk/motion.h"
#include "seatwalk/sensor_frame.h"
#include "test_util.h"

namespace seatwalk {
namespace {

using testing::error_code_of;

TEST_CASE("joint names round-trip in declaration order") {
  std::size_t i = 0;
  for (JointId j : kAllJoints) {
    CHECK(index_of(j) == i++);
    CHECK(parse_joint(joint_name(j)) == j);
  }
  CHECK(joint_name(JointId::kTorsoPitch) == "T-p");
  CHECK(joint_name(JointId::kRightKneePitch) == "rK-p");
  CHECK_FALSE(parse_joint("t-p").has_value());
  CHECK_FALSE(parse_joint("").has_value());
}

TEST_CASE("joint limits clamp at 120 degrees both ways") {
  CHECK(clamp_to_joint_limit(121.0) == 120.0);
  CHECK(clamp_to_joint_limit(-500.0) == -120.0);
  CHECK(clamp_to_joint_limit(120.0) == 120.0);
  CHECK(clamp_to_joint_limit(-3.5) == -3.5);
}

TEST_CASE("neutral posture is seated with knees at 90") {
  const JointAngles n = JointAngles::neutral();
  for (JointId j : kAllJoints) {
    const bool knee = j == JointId::kLeftKneePitch || j == JointId::kRightKneePitch;
    CHECK(n[j] == (knee ? 90.0 : 0.0));
  }
}

TEST_CASE("control targets") {
  SUBCASE("knee pair drives both knees with u") {
    const ControlTarget t = *ControlTarget::parse("Kp-pair");
    CHECK(t.kind() == ControlTarget::Kind::kKneePair);
    CHECK(t.primary_joint() == JointId::kLeftKneePitch);
    const JointAssignments a = t.apply(51.3);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == JointCommand{JointId::kLeftKneePitch, 51.3});
    CHECK(a[1] == JointCommand{JointId::kRightKneePitch, 51.3});
    CHECK(t.drives(JointId::kRightKneePitch));
    CHECK_FALSE(t.drives(JointId::kTorsoPitch));
  }
  SUBCASE("hip-roll mirror negates the right side") {
    const ControlTarget t = *ControlTarget::parse("Hr-mirror");
    const JointAssignments a = t.apply(30.4);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == JointCommand{JointId::kLeftHipRoll, 30.4});
    CHECK(a[1] == JointCommand{JointId::kRightHipRoll, -30.4});
  }
  SUBCASE("single joint") {
    const ControlTarget t = *ControlTarget::parse("lH-p");
    CHECK(t.apply(-7.0) == JointAssignments{{JointId::kLeftHipPitch, -7.0}});
    CHECK(t.name() == "lH-p");
  }
  SUBCASE("every listed name parses and prints back") {
    for (std::string_view n : control_target_names()) {
      auto t = ControlTarget::parse(n);
      REQUIRE(t.has_value());
      CHECK(t->name() == n);
    }
  }
  CHECK_FALSE(ControlTarget::parse("F_foot").has_value());
  CHECK_FALSE(ControlTarget::parse("Kp-pairs").has_value());
}

TEST_CASE("sensor keys") {
  CHECK(SensorKey::from_name("F_foot").kind() == SensorKey::Kind::kFootTotal);
  CHECK(SensorKey::from_name("F_rhip").kind() == SensorKey::Kind::kRightHip);
  const SensorKey k = SensorKey::from_name("lK-p");
  CHECK(k.is_joint());
  CHECK(k.joint() == JointId::kLeftKneePitch);
  CHECK(k.name() == "lK-p");
  CHECK(error_code_of([] { SensorKey::from_name("F_head"); }) == "unknown-sensor");
}

TEST_CASE("sensor frame reads commanded angles for joint sensors") {
  SensorFrame f;
  f.foot_total = 75.8;
  f.left_hip = 1.5;
  f.commanded[JointId::kLeftKneePitch] = 51.3;
  CHECK(f.read(SensorKey::from_name("F_foot")) == 75.8);
  CHECK(f.read(SensorKey::from_name("F_lhip")) == 1.5);
  CHECK(f.read(SensorKey::from_name("lK-p")) == 51.3);
}

MotionSpec two_state() {
  MotionSpec m;
  m.name = "m";
  StateSpec a;
  a.index = 1;
  a.default_delta = -2;
  StateSpec b;
  b.index = 2;
  b.control = ControlTarget::knee_pair();
  b.condition.sensor = SensorKey::joint_angle(JointId::kRightKneePitch);
  b.default_delta = 1;
  m.states = {a, b};
  return m;
}

TEST_CASE("check_motion flags each kind of problem") {
  CHECK(check_motion(two_state()).empty());

  MotionSpec empty;
  CHECK(check_motion(empty).size() == 1);

  MotionSpec gap = two_state();
  gap.states[1].index = 3;
  REQUIRE(check_motion(gap).size() == 1);
  CHECK(check_motion(gap)[0].find("non-contiguous") != std::string::npos);

  MotionSpec zero = two_state();
  zero.states[0].default_delta = 0.0;
  CHECK(check_motion(zero)[0].find("zero delta") != std::string::npos);

  MotionSpec unrelated = two_state();
  unrelated.states[1].condition.sensor = SensorKey::joint_angle(JointId::kTorsoPitch);
  CHECK(check_motion(unrelated)[0].find("not influenced") != std::string::npos);

  MotionSpec far = two_state();
  far.initial_posture[JointId::kTorsoRoll] = 121.0;
  CHECK(check_motion(far)[0].find("joint limits") != std::string::npos);
}

TEST_CASE("motion kind follows the hip-roll mirror") {
  MotionSpec m = two_state();
  CHECK(motion_kind(m) == MotionKind::kTranslation);
  m.states[0].control = ControlTarget::hip_roll_mirror();
  CHECK(motion_kind(m) == MotionKind::kRotation);
}

}  // namespace
}  // namespace seatwalk
