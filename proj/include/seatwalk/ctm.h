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
#include <vector>

#include "seatwalk/joints.h"
#include "seatwalk/motion.h"
#include "seatwalk/sensor_frame.h"

namespace seatwalk {

// Ticks a reproduction state may sit at a clamped joint limit without its
// condition firing before the session aborts with "stall".
inline constexpr int kStallTicks = 200;

// Inclusive comparison of the condition sensor against its threshold. The
// threshold is the fixed one when the spec declares it, else `learned`.
// Throws Error("threshold-unlearned") when neither is available.
bool evaluate_condition(const ConditionSpec& cond, const SensorFrame& frame,
                        std::optional<double> learned = std::nullopt);

struct TransitionRecord {
  int from_state = 0;
  // 1-based index of the state entered; N+1 once teaching is complete, 1 on
  // a loop wrap.
  int to_state = 0;
  // Sensor value that triggered (or, when teaching, was registered).
  double sensor_value = 0.0;
  double threshold = 0.0;
  // Completed passes after this transition.
  int loops_completed = 0;
  bool finished = false;
};

struct StepOutput {
  JointAssignments assignments;
  std::optional<TransitionRecord> transition;
  bool done = false;
};

enum class CtmMode { kTeach, kReproduce };

// State of one teaching or reproduction run. Plain value; only the engine
// that created it may advance it, and only while it is that engine's
// active session.
class CtmSession {
 public:
  CtmMode mode() const { return mode_; }
  const MotionSpec& motion() const { return motion_; }
  int state_index() const { return state_; }
  double command() const { return u_; }
  int loops_completed() const { return loops_completed_; }
  int loops() const { return loops_; }
  bool done() const { return done_; }
  bool teaching_complete() const { return teach_complete_; }
  const std::vector<double>& deltas() const { return deltas_; }
  // Thresholds registered so far (Teach) or in use (Reproduce).
  const std::vector<double>& thresholds() const { return thresholds_; }
  ThresholdSet threshold_set() const { return {motion_.name, thresholds_}; }
  // Full commanded posture as driven by this session.
  const JointAngles& commands() const { return commands_; }
  // Assignments that move the robot into the motion's initial posture.
  const JointAssignments& initial_assignments() const { return initial_; }
  std::uint64_t generation() const { return generation_; }

 private:
  friend class CtmEngine;

  std::uint64_t generation_ = 0;
  CtmMode mode_ = CtmMode::kTeach;
  MotionSpec motion_;
  int state_ = 1;
  double u_ = 0.0;
  int loops_ = 1;
  int loops_completed_ = 0;
  bool done_ = false;
  bool teach_complete_ = false;
  int stall_ticks_ = 0;
  std::vector<double> deltas_;
  std::vector<double> thresholds_;
  JointAngles commands_;
  JointAssignments initial_;
};

// Constrained teaching engine. One active session at a time: beginning a
// new session invalidates every earlier one ("stale-session").
class CtmEngine {
 public:
  // `current` is the posture the robot holds before the initial posture is
  // applied; joints the motion does not mention keep these values.
  CtmSession begin_teaching(const MotionSpec& motion,
                            const JointAngles& current = JointAngles::neutral());

  // Moves u of the current state (clamped to joint limits) and returns the
  // resulting joint assignments.
  JointAssignments teach_set_command(CtmSession& session, double u);

  // Registers the current condition-sensor value as the state's threshold
  // and moves to the next state.
  TransitionRecord teach_advance(CtmSession& session, const SensorFrame& frame);

  CtmSession begin_reproduction(
      const MotionSpec& motion, const ThresholdSet& thresholds,
      const std::vector<double>& deltas, int loops,
      const JointAngles& current = JointAngles::neutral());

  // One control tick: evaluate the current condition on `frame`; on success
  // transition without moving, else step u by its delta.
  StepOutput reproduction_step(CtmSession& session, const SensorFrame& frame);

  bool is_active(const CtmSession& session) const {
    return session.generation_ == active_ && active_ != 0;
  }

 private:
  CtmSession start(const MotionSpec& motion, CtmMode mode,
                   const JointAngles& current);
  void require_active(const CtmSession& session) const;
  static void enter_state(CtmSession& session, int index);
  static double threshold_for(const CtmSession& session, int index);

  std::uint64_t active_ = 0;
};

}  // namespace seatwalk
