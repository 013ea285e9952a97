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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seatwalk/motion.h"
#include "seatwalk/sensor_frame.h"

namespace seatwalk {

using Json = nlohmann::ordered_json;

inline constexpr int kLogVersion = 1;

struct LogEvent {
  std::int64_t tick = 0;
  // slider | advance | transition | frame | fall | done | segment | error
  std::string kind;
  Json data = Json::object();

  bool operator==(const LogEvent&) const = default;
};

// Recording of one teaching, reproduction or composed run.
struct SessionLog {
  // version, motion, mode, config_hash, seed, start, balancer, fresh, plus
  // mode-specific fields (motion_text, deltas, loops, plan).
  Json header = Json::object();
  std::vector<LogEvent> events;

  // Throws Error("log-order") when ticks would go backwards.
  void append(std::int64_t tick, std::string kind, Json data = Json::object());

  std::vector<const LogEvent*> events_of(std::string_view kind) const;

  bool operator==(const SessionLog&) const = default;
};

// Newline-delimited JSON, header first. Every line ends in '\n'.
std::string serialize_log(const SessionLog& log);
// Throws Error("log-truncated"), Error("log-version") or Error("log-format").
SessionLog parse_log(std::string_view text);

void save_log(const SessionLog& log, const std::string& path);
SessionLog load_log(const std::string& path);

// tick,x,y,yaw,F_lfoot,F_rfoot,F_lhip,F_rhip,state_i,u; one row per frame.
// Throws Error("empty-log") when the log holds no frames.
std::string trajectory_csv(const SessionLog& log);
void export_trajectory(const SessionLog& log, const std::string& path);

// Frame payloads carry the CTM state alongside the sensors.
Json frame_to_json(const SensorFrame& frame, int state_index,
                   std::optional<double> command);
SensorFrame frame_from_json(const Json& data);

Json thresholds_to_json(const ThresholdSet& set);
ThresholdSet thresholds_from_json(const Json& json);
ThresholdSet load_thresholds(const std::string& path);
void save_thresholds(const ThresholdSet& set, const std::string& path);

}  // namespace seatwalk
