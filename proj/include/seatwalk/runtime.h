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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seatwalk/balancer.h"
#include "seatwalk/ctm.h"
#include "seatwalk/plant.h"
#include "seatwalk/session_log.h"

namespace seatwalk {

struct RuntimeConfig {
  double tick_rate_hz = 5.0;
  // Empty means built-in plant defaults.
  std::string plant_config_path;
  std::optional<double> balancer_pgain;
  // Overrides the per-motion-kind integral gain when set.
  std::optional<double> balancer_igain;
  double balancer_accumulator_limit = Balancer::kDefaultAccumulatorLimit;
  double balancer_output_limit = Balancer::kDefaultOutputLimit;
  bool odometry_noise = false;
  double odometry_sigma = 0.005;
  // Directory that receives every finished session log; empty disables.
  std::string record_path;
  // Sleep to real time between ticks (serve only).
  bool pace = false;

  double dt() const { return 1.0 / tick_rate_hz; }
  void validate() const;
};

// Relative plant_config/record paths resolve against `base_dir`.
RuntimeConfig runtime_config_from_text(std::string_view text,
                                       const std::string& base_dir = {});
std::string runtime_config_to_text(const RuntimeConfig& config);

// Reads `path`, or $SEATWALK_CONFIG when set (the variable wins), or returns
// defaults when neither is given.
RuntimeConfig load_runtime_config(const std::optional<std::string>& path);
PlantConfig load_plant_config(const RuntimeConfig& config);

enum class RuntimeMode { kIdle, kTeach, kReproduce, kFallen };

std::string_view mode_name(RuntimeMode mode);

struct PlanStep {
  std::string motion;
  int loops = 1;
};

// The fixed-step control loop: CTM + balancer + plant, session recording and
// the line-JSON protocol. Time is virtual; one call to tick() is one period.
class Runtime {
 public:
  Runtime(RuntimeConfig config, PlantConfig plant_config, std::uint64_t seed);

  // One inbound protocol message; returns the replies for its sender.
  std::vector<Json> handle(const Json& message);
  // Same, from raw text. Malformed JSON yields {"t":"err","code":"parse"}.
  std::vector<Json> handle_line(std::string_view line);

  // One control period. Returns the messages to publish: transitions,
  // done, fall, errors and the tick's telemetry (always last).
  std::vector<Json> tick();

  // Direct API mirrored by the protocol messages.
  void load_motion(const MotionSpec& motion);
  void set_thresholds(const ThresholdSet& thresholds);
  std::optional<ThresholdSet> thresholds_for(const std::string& motion) const;
  void teach_start();
  void set_command(double u);
  TransitionRecord advance();
  void start_reproduction(std::optional<std::vector<double>> deltas, int loops);
  void start_compose(const std::vector<PlanStep>& plan);
  void set_balancer(bool on);
  void reset(std::uint64_t seed);

  RuntimeMode mode() const { return mode_; }
  std::int64_t tick_count() const { return ticks_; }
  const SensorFrame& last_frame() const { return last_frame_; }
  const Plant& plant() const { return plant_; }
  const Balancer& balancer() const { return balancer_; }
  const JointAngles& commands() const { return commands_; }
  const RuntimeConfig& config() const { return config_; }
  const std::optional<CtmSession>& session() const { return session_; }
  const std::optional<MotionSpec>& loaded_motion() const { return motion_; }
  std::optional<MotionSpec> find_motion(const std::string& name) const;

  // Log of the running session, or of the last finished one.
  const SessionLog& log() const { return log_; }
  bool log_active() const { return log_active_; }
  // Ticks from the start of the last session to its end.
  std::int64_t session_ticks() const { return session_end_tick_ - session_start_tick_; }

 private:
  void begin_log(std::string mode, const MotionSpec& motion);
  void end_log();
  void require_idle() const;
  void start_segment(std::size_t index);
  void apply(const JointAssignments& assignments);
  void apply_gains(MotionKind kind);
  Json telemetry() const;
  std::optional<double> current_command() const;
  int current_state() const;

  RuntimeConfig config_;
  PlantConfig plant_config_;
  Plant plant_;
  Balancer balancer_;
  CtmEngine engine_;
  std::optional<CtmSession> session_;
  std::optional<MotionSpec> motion_;
  std::map<std::string, MotionSpec> motions_;
  std::map<std::string, ThresholdSet> thresholds_;
  std::vector<PlanStep> plan_;
  std::size_t plan_index_ = 0;
  bool composing_ = false;
  JointAngles commands_ = JointAngles::neutral();
  SensorFrame last_frame_;
  RuntimeMode mode_ = RuntimeMode::kIdle;
  std::int64_t ticks_ = 0;
  SessionLog log_;
  bool log_active_ = false;
  std::int64_t session_start_tick_ = 0;
  std::int64_t session_end_tick_ = 0;
  int log_serial_ = 0;
};

// Feeds a recorded teach log through a fresh runtime and returns the
// thresholds it produces. Throws Error("log-not-replayable") for logs that
// did not start from a fresh reset, Error("config-mismatch") when the plant
// configuration hash differs.
ThresholdSet replay_teach_log(const SessionLog& log, const RuntimeConfig& config,
                              const PlantConfig& plant_config);

// Thresholds recorded in a finished teach log.
ThresholdSet recorded_thresholds(const SessionLog& log);

}  // namespace seatwalk
