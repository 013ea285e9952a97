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

#include "seatwalk/motion.h"

namespace seatwalk {

struct BalancerGains {
  double proportional = 5.0;
  double integral = 0.3;

  bool operator==(const BalancerGains&) const = default;
};

// Published gains: the integral gain is lowered tenfold for rotations.
BalancerGains select_gains(MotionKind kind);

// PI control of torso roll on the left/right buttock pressure difference
// d = F_lhip - F_rhip (corrected units), with anti-windup on the
// accumulated difference and a clamp on the output.
class Balancer {
 public:
  static constexpr double kDefaultAccumulatorLimit = 50.0;
  static constexpr double kDefaultOutputLimit = 20.0;  // deg

  explicit Balancer(BalancerGains gains = {},
                    double accumulator_limit = kDefaultAccumulatorLimit,
                    double output_limit = kDefaultOutputLimit);

  // Returns the torso-roll command in degrees; 0 and no state change while
  // disabled.
  double step(double left_hip, double right_hip);

  void reset() { accumulated_ = 0.0; }

  void set_enabled(bool on) { enabled_ = on; }
  bool enabled() const { return enabled_; }

  void set_gains(BalancerGains gains) { gains_ = gains; }
  const BalancerGains& gains() const { return gains_; }

  double accumulated() const { return accumulated_; }
  double accumulator_limit() const { return accumulator_limit_; }
  double output_limit() const { return output_limit_; }

 private:
  BalancerGains gains_;
  double accumulator_limit_;
  double output_limit_;
  double accumulated_ = 0.0;
  bool enabled_ = true;
};

}  // namespace seatwalk
