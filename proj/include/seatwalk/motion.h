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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seatwalk/joints.h"

namespace seatwalk {

struct JointCommand {
  JointId joint;
  double deg;

  bool operator==(const JointCommand&) const = default;
};

using JointAssignments = std::vector<JointCommand>;

// What a state's one-dimensional command u drives.
class ControlTarget {
 public:
  enum class Kind {
    kSingle,         // one joint <- u
    kKneePair,       // lK-p <- u, rK-p <- u
    kHipRollMirror,  // lH-r <- u, rH-r <- -u
  };

  static ControlTarget single(JointId joint) {
    return ControlTarget(Kind::kSingle, joint);
  }
  static ControlTarget knee_pair() {
    return ControlTarget(Kind::kKneePair, JointId::kLeftKneePitch);
  }
  static ControlTarget hip_roll_mirror() {
    return ControlTarget(Kind::kHipRollMirror, JointId::kLeftHipRoll);
  }

  // Names as written in motion files: a joint name, "Kp-pair" or "Hr-mirror".
  static std::optional<ControlTarget> parse(std::string_view name);
  std::string name() const;

  Kind kind() const { return kind_; }

  // The joint whose commanded angle stands for u: the joint itself, or the
  // left-side joint of a pair/mirror group.
  JointId primary_joint() const { return joint_; }

  JointAssignments apply(double u) const;

  // True when driving this target moves the commanded angle of `joint`.
  bool drives(JointId joint) const;

  bool operator==(const ControlTarget&) const = default;

 private:
  ControlTarget(Kind kind, JointId joint) : kind_(kind), joint_(joint) {}

  Kind kind_;
  JointId joint_;
};

// Control targets accepted in motion files, in canonical order.
const std::vector<std::string_view>& control_target_names();

class SensorKey {
 public:
  enum class Kind {
    kFootTotal,   // F_foot
    kLeftFoot,    // F_lfoot
    kRightFoot,   // F_rfoot
    kLeftHip,     // F_lhip, corrected FSR units
    kRightHip,    // F_rhip
    kJointAngle,  // commanded angle of a joint
  };

  static SensorKey force(Kind kind);
  static SensorKey joint_angle(JointId joint) {
    return SensorKey(Kind::kJointAngle, joint);
  }

  static std::optional<SensorKey> parse(std::string_view name);
  // Throws Error("unknown-sensor").
  static SensorKey from_name(std::string_view name);
  std::string name() const;

  Kind kind() const { return kind_; }
  bool is_joint() const { return kind_ == Kind::kJointAngle; }
  JointId joint() const { return joint_; }

  bool operator==(const SensorKey&) const = default;

 private:
  SensorKey(Kind kind, JointId joint) : kind_(kind), joint_(joint) {}

  Kind kind_;
  JointId joint_;
};

enum class Comparison { kLessEqual, kGreaterEqual };

struct ConditionSpec {
  SensorKey sensor = SensorKey::force(SensorKey::Kind::kFootTotal);
  Comparison direction = Comparison::kLessEqual;
  // nullopt marks a threshold learned by teaching.
  std::optional<double> fixed_threshold;

  bool learned() const { return !fixed_threshold.has_value(); }
  bool operator==(const ConditionSpec&) const = default;
};

struct StateSpec {
  int index = 1;
  ControlTarget control = ControlTarget::single(JointId::kTorsoPitch);
  ConditionSpec condition;
  // Degrees per control tick during reproduction, sign included.
  double default_delta = 1.0;

  bool operator==(const StateSpec&) const = default;
};

struct MotionSpec {
  std::string name;
  std::map<JointId, double> initial_posture;
  std::vector<StateSpec> states;
  bool loopable = false;

  std::size_t state_count() const { return states.size(); }
  // Deltas as declared in the file, in state order.
  std::vector<double> default_deltas() const;

  bool operator==(const MotionSpec&) const = default;
};

enum class MotionKind { kTranslation, kRotation };

// Rotation iff some state sweeps the hip-roll mirror group.
MotionKind motion_kind(const MotionSpec& spec);

// Semantic problems with a motion: empty, non-contiguous indices, zero
// deltas, conditions on joints the state's control does not move, initial
// angles beyond the joint limits. Empty result means valid.
std::vector<std::string> check_motion(const MotionSpec& spec);

struct ThresholdSet {
  std::string motion;
  std::vector<double> values;

  bool operator==(const ThresholdSet&) const = default;
};

}  // namespace seatwalk
