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

#include "seatwalk/plant.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "seatwalk/error.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"

namespace seatwalk {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Joint motion below this (deg per tick) counts as standing still.
constexpr double kMotionEpsilon = 1e-6;
// The lagged joint snaps onto its command once this close.
constexpr double kSettleEpsilon = 1e-9;

struct DoubleField {
  std::string_view key;
  double PlantConfig::*member;
  std::string_view comment;
};

constexpr DoubleField kFields[] = {
    {"shank_length", &PlantConfig::shank_length, "m"},
    {"body_weight", &PlantConfig::body_weight, "N"},
    {"foot_half_load", &PlantConfig::foot_half_load, "N per foot at neutral"},
    {"torso_pitch_load_gain", &PlantConfig::torso_pitch_load_gain, "N/deg per foot"},
    {"hip_pitch_load_gain", &PlantConfig::hip_pitch_load_gain, "N/deg per foot"},
    {"friction", &PlantConfig::friction, ""},
    {"roll_resistance_fwd", &PlantConfig::roll_resistance_fwd, "N"},
    {"roll_resistance_bwd", &PlantConfig::roll_resistance_bwd, "N"},
    {"roll_resistance_rot", &PlantConfig::roll_resistance_rot, "N"},
    {"traction_fwd", &PlantConfig::traction_fwd, "(0, 1]"},
    {"traction_bwd", &PlantConfig::traction_bwd, "(0, 1]"},
    {"rotation_ratio", &PlantConfig::rotation_ratio, "chair yaw deg per hip-roll deg"},
    {"buttock_split_gain", &PlantConfig::buttock_split_gain, "N/deg"},
    {"drift_increment", &PlantConfig::drift_increment, "deg per stuck-moving tick"},
    {"drift_noise", &PlantConfig::drift_noise, "deg std-dev"},
    {"drift_recovery", &PlantConfig::drift_recovery, "deg per tick per deg of torso roll"},
    {"fall_ratio", &PlantConfig::fall_ratio, "(0, 1)"},
    {"joint_lag", &PlantConfig::joint_lag, "s"},
    {"fsr_reference", &PlantConfig::fsr_reference, "N"},
};

double gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

constexpr std::uint64_t kOdometryStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

void PlantConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error("config", what); };
  for (const DoubleField& f : kFields) {
    const double v = this->*f.member;
    if (!std::isfinite(v)) fail(std::string(f.key) + " must be finite");
  }
  const double positive[] = {shank_length, body_weight, foot_half_load,
                             torso_pitch_load_gain, hip_pitch_load_gain, friction,
                             roll_resistance_fwd, roll_resistance_bwd,
                             roll_resistance_rot, traction_fwd, traction_bwd,
                             rotation_ratio, buttock_split_gain, joint_lag,
                             fsr_reference};
  for (double v : positive) {
    if (!(v > 0.0)) fail("lengths, forces and gains must be strictly positive");
  }
  if (traction_fwd > 1.0 || traction_bwd > 1.0) fail("traction must be <= 1");
  if (!(fall_ratio > 0.0 && fall_ratio < 1.0)) fail("fall_ratio must be in (0, 1)");
  if (drift_increment < 0.0 || drift_noise < 0.0 || drift_recovery < 0.0) fail("drift terms must be >= 0");
  if (fall_ticks < 1) fail("fall_ticks must be >= 1");
}

std::string plant_config_to_text(const PlantConfig& config) {
  std::ostringstream out;
  out << "# seatwalk plant configuration\n";
  for (const DoubleField& f : kFields) {
    out << f.key << " = " << format_number(config.*f.member);
    if (!f.comment.empty()) out << "  # " << f.comment;
    out << '\n';
  }
  out << "fall_ticks = " << config.fall_ticks << "  # consecutive ticks\n";
  return out.str();
}

PlantConfig plant_config_from_text(std::string_view text) {
  PlantConfig config;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "fall_ticks") {
      const double v = parse_config_double(key, value);
      if (v != std::floor(v)) throw Error("config", "fall_ticks must be an integer");
      config.fall_ticks = static_cast<int>(v);
      continue;
    }
    auto it = std::find_if(std::begin(kFields), std::end(kFields),
                           [&](const DoubleField& f) { return f.key == key; });
    if (it == std::end(kFields)) throw Error("config", "unknown key " + key);
    config.*(it->member) = parse_config_double(key, value);
  }
  config.validate();
  return config;
}

std::string plant_config_hash(const PlantConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : plant_config_to_text(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double fsr_correct(int analog) {
  if (analog < 0 || analog > 1023) {
    throw Error("fsr-range", "analog count " + std::to_string(analog));
  }
  return std::exp(analog / 100.0);
}

int fsr_forward(double load, double reference) {
  if (!(load >= 0.0)) throw Error("fsr-range", "negative load");
  const double a = std::round(100.0 * std::log1p(load / reference));
  return static_cast<int>(std::min(1023.0, a));
}

FootLoads foot_load(double torso_pitch, double left_hip_pitch,
                    double right_hip_pitch, const PlantConfig& config) {
  const double torso = config.torso_pitch_load_gain * torso_pitch;
  return {
      std::max(0.0, config.foot_half_load + torso +
                        config.hip_pitch_load_gain * left_hip_pitch),
      std::max(0.0, config.foot_half_load + torso +
                        config.hip_pitch_load_gain * right_hip_pitch),
  };
}

double forward_reach(double knee_pitch_deg, const PlantConfig& config) {
  return config.shank_length * std::cos(knee_pitch_deg * kDegToRad);
}

bool stick_test(double normal_force, SlideDirection direction,
                const PlantConfig& config) {
  double resistance = config.roll_resistance_rot;
  if (direction == SlideDirection::kForward) resistance = config.roll_resistance_fwd;
  if (direction == SlideDirection::kBackward) resistance = config.roll_resistance_bwd;
  return config.friction * normal_force >= resistance;
}

Plant::Plant(PlantConfig config, std::uint64_t seed) : config_(config) {
  config_.validate();
  reset(seed);
}

void Plant::reset(std::uint64_t seed) {
  seed_ = seed;
  state_ = PlantState{};
  drift_rng_.seed(seed);
  odometry_rng_.seed(seed ^ kOdometryStream);
  reported_pose_ = state_.pose;
}

SeatLoads Plant::seat_loads() const {
  const FootLoads feet = foot_load(state_.actual[JointId::kTorsoPitch],
                                   state_.actual[JointId::kLeftHipPitch],
                                   state_.actual[JointId::kRightHipPitch], config_);
  const double total = std::max(0.0, config_.body_weight - feet.left - feet.right);
  const double split = std::clamp(
      config_.buttock_split_gain *
          (state_.drift_deg - state_.actual[JointId::kTorsoRoll]),
      -total, total);
  return {(total + split) / 2.0, (total - split) / 2.0};
}

SensorFrame Plant::observe(const JointAngles& commands) const {
  SensorFrame frame;
  frame.tick = state_.tick;
  const FootLoads feet = foot_load(state_.actual[JointId::kTorsoPitch],
                                   state_.actual[JointId::kLeftHipPitch],
                                   state_.actual[JointId::kRightHipPitch], config_);
  frame.left_foot = feet.left;
  frame.right_foot = feet.right;
  frame.foot_total = feet.left + feet.right;
  const SeatLoads seat = seat_loads();
  frame.left_hip = fsr_correct(fsr_forward(seat.left, config_.fsr_reference));
  frame.right_hip = fsr_correct(fsr_forward(seat.right, config_.fsr_reference));
  frame.commanded = commands;
  frame.pose = reported_pose_;
  return frame;
}

SensorFrame Plant::step(const JointAngles& commands, double dt) {
  if (state_.fallen) throw Error("fallen");
  if (!(dt > 0.0)) throw Error("config", "dt must be positive");

  // First-order joint lag
  const JointAngles before = state_.actual;
  const double alpha = 1.0 - std::exp(-dt / config_.joint_lag);
  for (JointId j : kAllJoints) {
    double& actual = state_.actual[j];
    actual += alpha * (commands[j] - actual);
    if (std::abs(commands[j] - actual) < kSettleEpsilon) actual = commands[j];
  }

  // Foot loads on the actual posture
  const FootLoads loads = foot_load(state_.actual[JointId::kTorsoPitch],
                                    state_.actual[JointId::kLeftHipPitch],
                                    state_.actual[JointId::kRightHipPitch], config_);
  const std::array<double, 2> force = {loads.left, loads.right};
  constexpr std::array<JointId, 2> knee = {JointId::kLeftKneePitch,
                                           JointId::kRightKneePitch};
  constexpr std::array<JointId, 2> hip_roll = {JointId::kLeftHipRoll,
                                               JointId::kRightHipRoll};

  std::array<double, 2> reach_delta{};
  std::array<double, 2> roll_delta{};
  std::array<bool, 2> moving{};
  for (int s = 0; s < 2; ++s) {
    const double knee_move = state_.actual[knee[s]] - before[knee[s]];
    roll_delta[s] = state_.actual[hip_roll[s]] - before[hip_roll[s]];
    reach_delta[s] = std::abs(knee_move) > kMotionEpsilon
                         ? forward_reach(state_.actual[knee[s]], config_) -
                               forward_reach(before[knee[s]], config_)
                         : 0.0;
    moving[s] = std::abs(knee_move) > kMotionEpsilon ||
                std::abs(roll_delta[s]) > kMotionEpsilon;
  }

  // Anchoring. Feet sweeping the same way share the chair's rolling
  // resistance; a foot that only rolls its hip swivels the chair alone.
  std::array<bool, 2> stuck{};
  for (int s = 0; s < 2; ++s) {
    if (force[s] <= 0.0) continue;
    if (reach_delta[s] != 0.0) {
      const bool fwd = reach_delta[s] < 0.0;
      double group = 0.0;
      for (int o = 0; o < 2; ++o) {
        if (force[o] > 0.0 && reach_delta[o] != 0.0 && (reach_delta[o] < 0.0) == fwd) {
          group += force[o];
        }
      }
      stuck[s] = stick_test(
          group, fwd ? SlideDirection::kForward : SlideDirection::kBackward, config_);
    } else {
      stuck[s] = stick_test(force[s], SlideDirection::kRotation, config_);
    }
  }
  for (int s = 0; s < 2; ++s) {
    if (stuck[s] && !state_.stuck[s]) {
      state_.anchor_reach[s] = forward_reach(state_.actual[knee[s]], config_);
    }
  }
  state_.stuck = stuck;

  const int stuck_count = int(stuck[0]) + int(stuck[1]);
  double body_dx = 0.0;
  if (stuck_count > 0) {
    for (int s = 0; s < 2; ++s) {
      if (!stuck[s]) continue;
      const double eta =
          reach_delta[s] < 0.0 ? config_.traction_fwd : config_.traction_bwd;
      body_dx -= eta * reach_delta[s];
    }
    body_dx /= stuck_count;
  }
  // A single anchored foot swivels the chair against its hip roll
  double dyaw = 0.0;
  if (stuck_count == 1) {
    const int s = stuck[0] ? 0 : 1;
    dyaw = -config_.rotation_ratio * roll_delta[s];
  }
  const double heading = state_.pose.yaw_deg * kDegToRad;
  state_.pose.x += body_dx * std::cos(heading);
  state_.pose.y += body_dx * std::sin(heading);
  state_.pose.yaw_deg += dyaw;

  // Lateral drift; a torso-roll counter-lean pulls the body back
  if ((stuck[0] && moving[0]) || (stuck[1] && moving[1])) {
    state_.drift_deg += config_.drift_increment -
                        config_.drift_recovery * state_.actual[JointId::kTorsoRoll] +
                        gaussian(drift_rng_, config_.drift_noise);
  }

  // Fall check on the seat split
  const SeatLoads seat = seat_loads();
  const double seat_total = seat.left + seat.right;
  if (seat_total > 0.0 &&
      std::abs(seat.left - seat.right) > config_.fall_ratio * seat_total) {
    ++state_.imbalance_ticks;
  } else {
    state_.imbalance_ticks = 0;
  }
  if (state_.imbalance_ticks >= config_.fall_ticks) state_.fallen = true;

  ++state_.tick;
  reported_pose_ = state_.pose;
  if (odometry_sigma_ > 0.0) {
    reported_pose_.x += gaussian(odometry_rng_, odometry_sigma_);
    reported_pose_.y += gaussian(odometry_rng_, odometry_sigma_);
    reported_pose_.yaw_deg += gaussian(odometry_rng_, odometry_sigma_);
  }
  // Buttock outputs go through the FSR model inside observe()
  return observe(commands);
}

}  // namespace seatwalk
