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
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "seatwalk/joints.h"
#include "seatwalk/sensor_frame.h"

namespace seatwalk {

// Quasi-static model of the robot sitting on a caster chair. Every constant
// is a calibration knob; `default-config` prints them all.
struct PlantConfig {
  double shank_length = 0.32;           // m
  double body_weight = 400.0;           // N
  double foot_half_load = 20.0;         // N per foot, neutral posture
  double torso_pitch_load_gain = 2.5;   // N/deg per foot
  double hip_pitch_load_gain = 2.5;     // N/deg per foot
  double friction = 0.8;                // foot/floor coefficient
  double roll_resistance_fwd = 35.0;    // N
  double roll_resistance_bwd = 4.0;     // N
  double roll_resistance_rot = 1.2;     // N, single-foot swivel
  double traction_fwd = 1.0;
  double traction_bwd = 0.69;
  double rotation_ratio = 0.436;        // chair yaw deg per stuck hip-roll deg
  double buttock_split_gain = 4.0;      // N/deg
  double drift_increment = 0.15;        // deg per tick a stuck foot moves
  double drift_noise = 0.02;            // deg, std-dev per such tick
  double drift_recovery = 0.05;         // drift undone per deg of torso roll
  double fall_ratio = 0.2;              // |p_l - p_r| / (p_l + p_r)
  int fall_ticks = 5;                   // consecutive ticks over fall_ratio
  double joint_lag = 0.1;               // s, first-order time constant
  double fsr_reference = 50.0;          // N

  // Throws Error("config") when an invariant is violated.
  void validate() const;

  bool operator==(const PlantConfig&) const = default;
};

// `key = value` lines in declaration order, with a leading comment.
std::string plant_config_to_text(const PlantConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
PlantConfig plant_config_from_text(std::string_view text);

// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string plant_config_hash(const PlantConfig& config);

// Corrected pressure value exp(A/100) for a 10-bit count A in [0, 1023].
double fsr_correct(int analog);
// Count the sensor would report under load p (N): 100 ln(1 + p/p_ref),
// rounded and saturated at 1023.
int fsr_forward(double load, double reference);

struct FootLoads {
  double left = 0.0;
  double right = 0.0;
};

// Linear load model: leaning back (negative T-p) or lifting a hip (negative
// H-p) unloads the feet. Never negative.
FootLoads foot_load(double torso_pitch, double left_hip_pitch,
                    double right_hip_pitch, const PlantConfig& config);

// Sagittal offset of the foot from its seated-nominal position (knee at 90).
double forward_reach(double knee_pitch_deg, const PlantConfig& config);

enum class SlideDirection { kForward, kBackward, kRotation };

// A loaded foot anchors iff friction can overcome the chair's resistance.
bool stick_test(double normal_force, SlideDirection direction,
                const PlantConfig& config);

enum class Side { kLeft = 0, kRight = 1 };

struct PlantState {
  ChairPose pose;
  JointAngles actual = JointAngles::neutral();
  double drift_deg = 0.0;
  std::array<bool, 2> stuck = {false, false};
  // Forward reach of each foot when it last became stuck.
  std::array<double, 2> anchor_reach = {0.0, 0.0};
  bool fallen = false;
  int imbalance_ticks = 0;
  std::int64_t tick = 0;

  bool operator==(const PlantState&) const = default;
};

// Buttock pressures in N before the FSR model.
struct SeatLoads {
  double left = 0.0;
  double right = 0.0;
};

class Plant {
 public:
  explicit Plant(PlantConfig config = {}, std::uint64_t seed = 0);

  // Neutral posture at the origin, drift cleared, noise stream restarted.
  void reset(std::uint64_t seed);

  // Advances one control tick of `dt` seconds. Throws Error("fallen").
  SensorFrame step(const JointAngles& commands, double dt);

  // Snapshot of the current state as the sensors would report it.
  SensorFrame observe(const JointAngles& commands) const;

  // Adds Gaussian noise (m, deg) to the pose copied into frames. The true
  // pose in state() is unaffected.
  void set_odometry_noise(double sigma) { odometry_sigma_ = sigma; }

  SeatLoads seat_loads() const;

  const PlantState& state() const { return state_; }
  const PlantConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }

 private:
  PlantConfig config_;
  PlantState state_;
  std::uint64_t seed_ = 0;
  std::mt19937_64 drift_rng_;
  std::mt19937_64 odometry_rng_;
  double odometry_sigma_ = 0.0;
  ChairPose reported_pose_;
};

}  // namespace seatwalk
