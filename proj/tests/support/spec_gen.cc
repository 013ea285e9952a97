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

#include "spec_gen.h"

#include <cmath>
#include <sstream>

#include "reproduction_oracle.h"
#include "seatwalk/ctm.h"
#include "seatwalk/error.h"

namespace seatwalk::testing {
namespace {

const char* const kForces[] = {"F_foot", "F_lfoot", "F_rfoot", "F_lhip", "F_rhip"};

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

std::vector<JointId> driven_joints(const ControlTarget& target) {
  std::vector<JointId> out;
  for (JointId j : kAllJoints) {
    if (target.drives(j)) out.push_back(j);
  }
  return out;
}

}  // namespace

MotionSpec random_motion(std::mt19937_64& rng, int max_states) {
  static const std::vector<std::string> targets = [] {
    std::vector<std::string> v;
    for (std::string_view n : control_target_names()) v.emplace_back(n);
    return v;
  }();
  MotionSpec spec;
  std::string name;
  const int len = std::uniform_int_distribution<int>(1, 12)(rng);
  for (int i = 0; i < len; ++i) {
    const char* alphabet = i == 0 ? "abcdefghijklmnopqrstuvwxyz_"
                                  : "abcdefghijklmnopqrstuvwxyz_0123456789-";
    const int n = static_cast<int>(std::char_traits<char>::length(alphabet));
    name += alphabet[std::uniform_int_distribution<int>(0, n - 1)(rng)];
  }
  spec.name = name;
  spec.loopable = coin(rng);
  for (JointId j : kAllJoints) {
    if (coin(rng, 0.3)) {
      // Mix round numbers and arbitrary doubles to exercise number printing.
      spec.initial_posture[j] =
          coin(rng) ? std::round(uniform(rng, -90, 90)) : uniform(rng, -120, 120);
    }
  }
  const int n = std::uniform_int_distribution<int>(1, max_states)(rng);
  for (int i = 1; i <= n; ++i) {
    StateSpec s;
    s.index = i;
    s.control = *ControlTarget::parse(pick(targets, rng));
    if (coin(rng)) {
      s.condition.sensor = SensorKey::from_name(kForces[std::uniform_int_distribution<int>(0, 4)(rng)]);
    } else {
      s.condition.sensor = SensorKey::from_name(
          std::string(joint_name(pick(driven_joints(s.control), rng))));
    }
    s.condition.direction = coin(rng) ? Comparison::kLessEqual : Comparison::kGreaterEqual;
    if (coin(rng, 0.3)) {
      s.condition.fixed_threshold =
          coin(rng) ? std::round(uniform(rng, 0, 80) * 10) / 10 : uniform(rng, -100, 100);
    }
    double delta = std::round(uniform(rng, 1, 6) * 4) / 4;
    if (coin(rng, 0.2)) delta = uniform(rng, 0.1, 7);
    s.default_delta = coin(rng) ? delta : -delta;
    spec.states.push_back(s);
  }
  return spec;
}

ThresholdSet random_thresholds(const MotionSpec& spec, std::mt19937_64& rng) {
  ThresholdSet set{spec.name, {}};
  for (const StateSpec& s : spec.states) {
    if (s.condition.sensor.is_joint()) {
      set.values.push_back(coin(rng, 0.05) ? uniform(rng, 130, 200) * (coin(rng) ? 1 : -1)
                                           : uniform(rng, -60, 100));
    } else {
      set.values.push_back(uniform(rng, 0, 80));
    }
  }
  return set;
}

std::string compare_engine_with_oracle(const MotionSpec& spec,
                                       const ThresholdSet& thresholds, int loops,
                                       std::uint64_t seed, int ticks,
                                       OracleStats* stats) {
  std::mt19937_64 rng(seed);
  ForceTrace forces(ticks);
  for (auto& f : forces) {
    for (const char* k : kForces) f[k] = uniform(rng, 0, 80);
  }

  std::vector<OracleState> ostates;
  for (const StateSpec& s : spec.states) {
    OracleState o;
    o.target = s.control.name();
    o.sensor = s.condition.sensor.name();
    o.less_equal = s.condition.direction == Comparison::kLessEqual;
    o.threshold = s.condition.fixed_threshold.value_or(thresholds.values[s.index - 1]);
    o.delta = s.default_delta;
    ostates.push_back(o);
  }
  std::map<std::string, double> start;
  const JointAngles neutral = JointAngles::neutral();
  for (JointId j : kAllJoints) start[std::string(joint_name(j))] = neutral[j];
  for (const auto& [j, deg] : spec.initial_posture) start[std::string(joint_name(j))] = deg;
  const std::vector<OracleTick> expected = run_oracle(ostates, start, loops, forces);
  if (stats) {
    stats->ticks += static_cast<long>(expected.size());
    for (const OracleTick& t : expected) {
      stats->transitions += t.fired;
      stats->stalls += t.stalled;
    }
  }

  CtmEngine engine;
  CtmSession session =
      engine.begin_reproduction(spec, thresholds, spec.default_deltas(), loops);
  std::ostringstream why;
  std::size_t t = 0;
  for (; t < forces.size() && !session.done(); ++t) {
    SensorFrame frame;
    frame.tick = static_cast<std::int64_t>(t);
    frame.foot_total = forces[t].at("F_foot");
    frame.left_foot = forces[t].at("F_lfoot");
    frame.right_foot = forces[t].at("F_rfoot");
    frame.left_hip = forces[t].at("F_lhip");
    frame.right_hip = forces[t].at("F_rhip");
    frame.commanded = session.commands();
    if (t >= expected.size()) {
      why << "tick " << t << ": oracle stopped, engine still running";
      return why.str();
    }
    const OracleTick& want = expected[t];
    const int state_before = session.state_index();
    StepOutput step;
    try {
      step = engine.reproduction_step(session, frame);
    } catch (const Error& e) {
      if (e.code() == "stall" && want.stalled) return {};
      why << "tick " << t << ": engine threw " << e.code();
      return why.str();
    }
    if (want.stalled) {
      why << "tick " << t << ": oracle stalled, engine did not";
      return why.str();
    }
    if (state_before != want.state || step.transition.has_value() != want.fired ||
        session.command() != want.u || session.loops_completed() != want.loops_done) {
      why << "tick " << t << ": state " << state_before << "/" << want.state
          << " fired " << step.transition.has_value() << "/" << want.fired << " u "
          << session.command() << "/" << want.u;
      return why.str();
    }
    if (want.fired && step.transition->to_state != want.next_state) {
      why << "tick " << t << ": to " << step.transition->to_state << "/" << want.next_state;
      return why.str();
    }
    if (want.fired && !step.assignments.empty()) {
      why << "tick " << t << ": command moved on a transition tick";
      return why.str();
    }
  }
  if (t != expected.size()) {
    why << "engine ran " << t << " ticks, oracle " << expected.size();
    return why.str();
  }
  return {};
}

}  // namespace seatwalk::testing
