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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace seatwalk {

// The 13 actuated joints: torso (T), left/right hip (lH/rH), left/right knee
// (lK/rK), with roll (r), pitch (p) and yaw (y) axes.
enum class JointId : int {
  kTorsoRoll,
  kTorsoPitch,
  kTorsoYaw,
  kLeftHipRoll,
  kLeftHipPitch,
  kLeftHipYaw,
  kLeftKneePitch,
  kLeftKneeYaw,
  kRightHipRoll,
  kRightHipPitch,
  kRightHipYaw,
  kRightKneePitch,
  kRightKneeYaw,
};

inline constexpr std::size_t kJointCount = 13;

// Commands are clamped to this symmetric range for every joint.
inline constexpr double kJointLimitDeg = 120.0;

inline constexpr std::array<JointId, kJointCount> kAllJoints = {
    JointId::kTorsoRoll,     JointId::kTorsoPitch,     JointId::kTorsoYaw,
    JointId::kLeftHipRoll,   JointId::kLeftHipPitch,   JointId::kLeftHipYaw,
    JointId::kLeftKneePitch, JointId::kLeftKneeYaw,    JointId::kRightHipRoll,
    JointId::kRightHipPitch, JointId::kRightHipYaw,    JointId::kRightKneePitch,
    JointId::kRightKneeYaw,
};

// "T-r", "lK-p", ...
std::string_view joint_name(JointId id);
std::optional<JointId> parse_joint(std::string_view name);

inline constexpr std::size_t index_of(JointId id) {
  return static_cast<std::size_t>(id);
}

double clamp_to_joint_limit(double deg);

// One angle per joint, in degrees.
class JointAngles {
 public:
  JointAngles() { values_.fill(0.0); }

  // Seated rest posture: everything at zero except both knees bent to 90.
  static JointAngles neutral();

  double& operator[](JointId id) { return values_[index_of(id)]; }
  double operator[](JointId id) const { return values_[index_of(id)]; }

  const std::array<double, kJointCount>& values() const { return values_; }

  bool operator==(const JointAngles&) const = default;

 private:
  std::array<double, kJointCount> values_;
};

}  // namespace seatwalk
