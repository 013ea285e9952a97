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

#include "seatwalk/ctm.h"

#include <string>

#include "seatwalk/error.h"

namespace seatwalk {

bool evaluate_condition(const ConditionSpec& cond, const SensorFrame& frame,
                        std::optional<double> learned) {
  std::optional<double> threshold =
      cond.fixed_threshold ? cond.fixed_threshold : learned;
  if (!threshold) throw Error("threshold-unlearned");
  const double s = frame.read(cond.sensor);
  return cond.direction == Comparison::kLessEqual ? s <= *threshold
                                                  : s >= *threshold;
}

CtmSession CtmEngine::start(const MotionSpec& motion, CtmMode mode,
                            const JointAngles& current) {
  if (auto problems = check_motion(motion); !problems.empty()) {
    throw Error("invalid-motion", problems.front());
  }
  CtmSession session;
  session.generation_ = ++active_;
  session.mode_ = mode;
  session.motion_ = motion;
  session.commands_ = current;
  for (const auto& [joint, deg] : motion.initial_posture) {
    session.commands_[joint] = deg;
    session.initial_.push_back({joint, deg});
  }
  enter_state(session, 1);
  return session;
}

void CtmEngine::require_active(const CtmSession& session) const {
  if (!is_active(session)) throw Error("stale-session");
}

void CtmEngine::enter_state(CtmSession& session, int index) {
  session.state_ = index;
  session.stall_ticks_ = 0;
  const StateSpec& state = session.motion_.states[index - 1];
  session.u_ = session.commands_[state.control.primary_joint()];
}

double CtmEngine::threshold_for(const CtmSession& session, int index) {
  return session.thresholds_[index - 1];
}

CtmSession CtmEngine::begin_teaching(const MotionSpec& motion,
                                     const JointAngles& current) {
  return start(motion, CtmMode::kTeach, current);
}

JointAssignments CtmEngine::teach_set_command(CtmSession& session, double u) {
  require_active(session);
  if (session.mode_ != CtmMode::kTeach) throw Error("wrong-mode");
  if (session.teach_complete_) throw Error("teach-complete");
  session.u_ = clamp_to_joint_limit(u);
  const StateSpec& state = session.motion_.states[session.state_ - 1];
  JointAssignments out = state.control.apply(session.u_);
  for (const JointCommand& c : out) session.commands_[c.joint] = c.deg;
  return out;
}

TransitionRecord CtmEngine::teach_advance(CtmSession& session,
                                          const SensorFrame& frame) {
  require_active(session);
  if (session.mode_ != CtmMode::kTeach) throw Error("wrong-mode");
  if (session.teach_complete_) throw Error("teach-complete");

  const StateSpec& state = session.motion_.states[session.state_ - 1];
  const double sensed = frame.read(state.condition.sensor);
  const double registered = state.condition.fixed_threshold.value_or(sensed);
  session.thresholds_.push_back(registered);

  TransitionRecord record;
  record.from_state = session.state_;
  record.sensor_value = sensed;
  record.threshold = registered;
  const int n = static_cast<int>(session.motion_.state_count());
  if (session.state_ == n) {
    session.teach_complete_ = true;
    session.loops_completed_ = 1;
    record.to_state = n + 1;
    record.finished = true;
  } else {
    enter_state(session, session.state_ + 1);
    record.to_state = session.state_;
  }
  record.loops_completed = session.loops_completed_;
  return record;
}

CtmSession CtmEngine::begin_reproduction(const MotionSpec& motion,
                                         const ThresholdSet& thresholds,
                                         const std::vector<double>& deltas,
                                         int loops,
                                         const JointAngles& current) {
  const std::size_t n = motion.state_count();
  if (deltas.size() != n) throw Error("delta-arity");
  for (double d : deltas) {
    if (d == 0.0) throw Error("zero-delta");
  }
  if (thresholds.values.size() > n) throw Error("threshold-arity");
  std::vector<double> resolved(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fixed = motion.states[i].condition.fixed_threshold;
    if (fixed) {
      resolved[i] = *fixed;
    } else if (i < thresholds.values.size()) {
      resolved[i] = thresholds.values[i];
    } else {
      throw Error("threshold-unlearned",
                  "state " + std::to_string(i + 1) + " of " + motion.name);
    }
  }
  if (loops < 1) throw Error("loops", "loop count must be at least 1");
  if (!motion.loopable && loops > 1) throw Error("not-loopable");

  CtmSession session = start(motion, CtmMode::kReproduce, current);
  session.thresholds_ = std::move(resolved);
  session.deltas_ = deltas;
  session.loops_ = loops;
  return session;
}

StepOutput CtmEngine::reproduction_step(CtmSession& session,
                                        const SensorFrame& frame) {
  require_active(session);
  if (session.mode_ != CtmMode::kReproduce) throw Error("wrong-mode");
  if (session.done_) throw Error("session-done");

  StepOutput out;
  const int i = session.state_;
  const StateSpec& state = session.motion_.states[i - 1];
  const double threshold = threshold_for(session, i);
  if (evaluate_condition(state.condition, frame, threshold)) {
    TransitionRecord record;
    record.from_state = i;
    record.sensor_value = frame.read(state.condition.sensor);
    record.threshold = threshold;
    const int n = static_cast<int>(session.motion_.state_count());
    if (i == n) {
      ++session.loops_completed_;
      if (session.loops_completed_ >= session.loops_) {
        session.done_ = true;
        record.finished = true;
        record.to_state = n + 1;
      } else {
        enter_state(session, 1);
        record.to_state = 1;
      }
    } else {
      enter_state(session, i + 1);
      record.to_state = i + 1;
    }
    record.loops_completed = session.loops_completed_;
    out.transition = record;
    out.done = session.done_;
    return out;
  }

  const double wanted = session.u_ + session.deltas_[i - 1];
  const double next = clamp_to_joint_limit(wanted);
  if (next != wanted) {
    if (++session.stall_ticks_ > kStallTicks) {
      throw Error("stall", "state " + std::to_string(i) + " of " +
                               session.motion_.name + " pinned at limit");
    }
  } else {
    session.stall_ticks_ = 0;
  }
  session.u_ = next;
  out.assignments = state.control.apply(next);
  for (const JointCommand& c : out.assignments) session.commands_[c.joint] = c.deg;
  return out;
}

}  // namespace seatwalk
