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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seatwalk/runtime.h"

namespace seatwalk {

// One row of a slider trace: a slider position, or an advance when `u` is
// empty. Applied once `tick` control periods have elapsed.
struct SliderEvent {
  std::int64_t tick = 0;
  std::optional<double> u;
};

// CSV rows `tick,<deg>` or `tick,ADVANCE`; optional header, '#' comments.
// Throws Error("trace-format").
std::vector<SliderEvent> parse_slider_trace(std::string_view text);

// Builtin name, or a path to a .motion file. Throws Error("unknown-motion")
// or Error("motion-invalid").
MotionSpec resolve_motion(const std::string& name_or_path);

struct TeachRun {
  ThresholdSet thresholds;
  SessionLog log;
  std::int64_t ticks = 0;
};

struct RunOptions {
  std::uint64_t seed = 0;
  bool balancer = true;
  RuntimeConfig runtime;
  PlantConfig plant;
  // Safety net for runs that never finish.
  std::int64_t max_ticks = 200000;
};

// Drives a fresh runtime through a scripted teaching session. Throws
// Error("teach-incomplete"), Error("fallen") or engine errors.
TeachRun run_teach_trace(const MotionSpec& motion,
                         const std::vector<SliderEvent>& trace,
                         const RunOptions& options);

struct LoopSummary {
  std::string motion;
  int loop = 0;             // 1-based within its segment
  double forward = 0.0;     // m along the heading at loop start
  double lateral = 0.0;     // m, left positive
  double yaw = 0.0;         // deg
};

struct ReproRun {
  SessionLog log;
  bool fell = false;
  std::optional<std::string> error;  // engine error code, e.g. "stall"
  std::int64_t ticks = 0;
  ChairPose final_pose;
  std::vector<LoopSummary> loops;
};

ReproRun run_reproduction(const MotionSpec& motion, const ThresholdSet& thresholds,
                          const std::vector<double>& deltas, int loops,
                          const RunOptions& options);

struct ComposeStep {
  MotionSpec motion;
  ThresholdSet thresholds;
  int loops = 1;
};

ReproRun run_compose(const std::vector<ComposeStep>& plan, const RunOptions& options);

// Per-loop displacement taken from the transition poses of a log.
std::vector<LoopSummary> loop_summaries(const SessionLog& log);

// Entry point of the `seatwalk` executable. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace seatwalk
