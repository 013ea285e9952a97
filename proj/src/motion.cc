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

#include "seatwalk/motion.h"

#include <cmath>
#include <string>

#include "seatwalk/error.h"
#include "seatwalk/sensor_frame.h"

namespace seatwalk {

std::optional<ControlTarget> ControlTarget::parse(std::string_view name) {
  if (name == "Kp-pair") return knee_pair();
  if (name == "Hr-mirror") return hip_roll_mirror();
  for (std::string_view allowed : control_target_names()) {
    if (allowed == name) return single(*parse_joint(name));
  }
  return std::nullopt;
}

std::string ControlTarget::name() const {
  switch (kind_) {
    case Kind::kKneePair:
      return "Kp-pair";
    case Kind::kHipRollMirror:
      return "Hr-mirror";
    case Kind::kSingle:
      break;
  }
  return std::string(joint_name(joint_));
}

JointAssignments ControlTarget::apply(double u) const {
  switch (kind_) {
    case Kind::kKneePair:
      return {{JointId::kLeftKneePitch, u}, {JointId::kRightKneePitch, u}};
    case Kind::kHipRollMirror:
      return {{JointId::kLeftHipRoll, u}, {JointId::kRightHipRoll, -u}};
    case Kind::kSingle:
      break;
  }
  return {{joint_, u}};
}

bool ControlTarget::drives(JointId joint) const {
  switch (kind_) {
    case Kind::kKneePair:
      return joint == JointId::kLeftKneePitch ||
             joint == JointId::kRightKneePitch;
    case Kind::kHipRollMirror:
      return joint == JointId::kLeftHipRoll || joint == JointId::kRightHipRoll;
    case Kind::kSingle:
      break;
  }
  return joint == joint_;
}

const std::vector<std::string_view>& control_target_names() {
  static const std::vector<std::string_view> names = {
      "T-p",  "T-r",  "T-y",  "lH-p", "rH-p",    "lH-y",     "rH-y",
      "lK-p", "rK-p", "lK-y", "rK-y", "Kp-pair", "Hr-mirror",
  };
  return names;
}

namespace {

struct ForceName {
  SensorKey::Kind kind;
  std::string_view name;
};

constexpr ForceName kForceNames[] = {
    {SensorKey::Kind::kFootTotal, "F_foot"},
    {SensorKey::Kind::kLeftFoot, "F_lfoot"},
    {SensorKey::Kind::kRightFoot, "F_rfoot"},
    {SensorKey::Kind::kLeftHip, "F_lhip"},
    {SensorKey::Kind::kRightHip, "F_rhip"},
};

}  // namespace

SensorKey SensorKey::force(Kind kind) {
  if (kind == Kind::kJointAngle) throw Error("unknown-sensor");
  return SensorKey(kind, JointId::kTorsoRoll);
}

std::optional<SensorKey> SensorKey::parse(std::string_view name) {
  for (const ForceName& f : kForceNames) {
    if (f.name == name) return force(f.kind);
  }
  if (auto joint = parse_joint(name)) return joint_angle(*joint);
  return std::nullopt;
}

SensorKey SensorKey::from_name(std::string_view name) {
  if (auto key = parse(name)) return *key;
  throw Error("unknown-sensor", std::string(name));
}

std::string SensorKey::name() const {
  if (is_joint()) return std::string(joint_name(joint_));
  for (const ForceName& f : kForceNames) {
    if (f.kind == kind_) return std::string(f.name);
  }
  throw Error("unknown-sensor");
}

double SensorFrame::read(const SensorKey& key) const {
  switch (key.kind()) {
    case SensorKey::Kind::kFootTotal:
      return foot_total;
    case SensorKey::Kind::kLeftFoot:
      return left_foot;
    case SensorKey::Kind::kRightFoot:
      return right_foot;
    case SensorKey::Kind::kLeftHip:
      return left_hip;
    case SensorKey::Kind::kRightHip:
      return right_hip;
    case SensorKey::Kind::kJointAngle:
      return commanded[key.joint()];
  }
  throw Error("unknown-sensor");
}

std::vector<double> MotionSpec::default_deltas() const {
  std::vector<double> deltas;
  deltas.reserve(states.size());
  for (const StateSpec& s : states) deltas.push_back(s.default_delta);
  return deltas;
}

MotionKind motion_kind(const MotionSpec& spec) {
  for (const StateSpec& s : spec.states) {
    if (s.control.kind() == ControlTarget::Kind::kHipRollMirror) {
      return MotionKind::kRotation;
    }
  }
  return MotionKind::kTranslation;
}

std::vector<std::string> check_motion(const MotionSpec& spec) {
  std::vector<std::string> problems;
  if (spec.states.empty()) problems.push_back("motion has no states");
  for (std::size_t i = 0; i < spec.states.size(); ++i) {
    const StateSpec& s = spec.states[i];
    const std::string where = "state " + std::to_string(s.index) + ": ";
    if (s.index != static_cast<int>(i) + 1) {
      problems.push_back(where + "non-contiguous state index, expected " +
                         std::to_string(i + 1));
    }
    if (s.default_delta == 0.0 || !std::isfinite(s.default_delta)) {
      problems.push_back(where + "zero delta");
    }
    const SensorKey& sensor = s.condition.sensor;
    if (sensor.is_joint() && !s.control.drives(sensor.joint())) {
      problems.push_back(where + "condition sensor " + sensor.name() +
                         " is not influenced by control " + s.control.name());
    }
    if (s.condition.fixed_threshold &&
        !std::isfinite(*s.condition.fixed_threshold)) {
      problems.push_back(where + "threshold is not finite");
    }
  }
  for (const auto& [joint, deg] : spec.initial_posture) {
    if (!(std::abs(deg) <= kJointLimitDeg)) {
      problems.push_back("initial angle of " + std::string(joint_name(joint)) +
                         " outside joint limits");
    }
  }
  return problems;
}

}  // namespace seatwalk
