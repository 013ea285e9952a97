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

#include "seatwalk/joints.h"

#include <algorithm>

namespace seatwalk {
namespace {

constexpr std::array<std::string_view, kJointCount> kNames = {
    "T-r",  "T-p",  "T-y",  "lH-r", "lH-p", "lH-y", "lK-p",
    "lK-y", "rH-r", "rH-p", "rH-y", "rK-p", "rK-y",
};

}  // namespace

std::string_view joint_name(JointId id) { return kNames[index_of(id)]; }

std::optional<JointId> parse_joint(std::string_view name) {
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (kNames[i] == name) return kAllJoints[i];
  }
  return std::nullopt;
}

double clamp_to_joint_limit(double deg) {
  return std::clamp(deg, -kJointLimitDeg, kJointLimitDeg);
}

JointAngles JointAngles::neutral() {
  JointAngles a;
  a[JointId::kLeftKneePitch] = 90.0;
  a[JointId::kRightKneePitch] = 90.0;
  return a;
}

}  // namespace seatwalk
