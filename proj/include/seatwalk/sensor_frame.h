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

#include <cstdint>

#include "seatwalk/joints.h"
#include "seatwalk/motion.h"

namespace seatwalk {

// World-frame chair pose; yaw is counter-clockwise positive.
struct ChairPose {
  double x = 0.0;  // m
  double y = 0.0;  // m
  double yaw_deg = 0.0;

  bool operator==(const ChairPose&) const = default;
};

// Immutable snapshot of everything the controllers may read in one tick.
struct SensorFrame {
  std::int64_t tick = 0;
  double left_foot = 0.0;   // N
  double right_foot = 0.0;  // N
  double foot_total = 0.0;  // N, left_foot + right_foot
  double left_hip = 0.0;    // corrected FSR units
  double right_hip = 0.0;
  JointAngles commanded;
  ChairPose pose;

  double read(const SensorKey& key) const;

  bool operator==(const SensorFrame&) const = default;
};

}  // namespace seatwalk
