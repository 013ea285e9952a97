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

#include "seatwalk/balancer.h"

#include <algorithm>

#include "seatwalk/error.h"

namespace seatwalk {

BalancerGains select_gains(MotionKind kind) {
  return kind == MotionKind::kRotation ? BalancerGains{5.0, 0.03}
                                       : BalancerGains{5.0, 0.3};
}

Balancer::Balancer(BalancerGains gains, double accumulator_limit,
                   double output_limit)
    : gains_(gains),
      accumulator_limit_(accumulator_limit),
      output_limit_(output_limit) {
  if (!(accumulator_limit > 0.0) || !(output_limit > 0.0)) {
    throw Error("config", "balancer limits must be positive");
  }
}

double Balancer::step(double left_hip, double right_hip) {
  if (!enabled_) return 0.0;
  const double d = left_hip - right_hip;
  accumulated_ =
      std::clamp(accumulated_ + d, -accumulator_limit_, accumulator_limit_);
  return std::clamp(gains_.proportional * d + gains_.integral * accumulated_,
                    -output_limit_, output_limit_);
}

}  // namespace seatwalk
