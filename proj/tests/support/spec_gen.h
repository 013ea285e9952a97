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
#include <random>
#include <string>

#include "seatwalk/motion.h"

namespace seatwalk::testing {

// Random but well-formed motion: 1..max_states states, joint conditions only
// on joints the state drives, a mix of learned and fixed thresholds.
MotionSpec random_motion(std::mt19937_64& rng, int max_states = 5);

// Fills in a value for every learned threshold, chosen so that conditions
// fire at varying distances, occasionally never.
ThresholdSet random_thresholds(const MotionSpec& spec, std::mt19937_64& rng);

struct OracleStats {
  long ticks = 0;
  long transitions = 0;
  long stalls = 0;
};

// Drives the engine and the oracle through the same random force trace and
// reports the first disagreement, or an empty string.
std::string compare_engine_with_oracle(const MotionSpec& spec,
                                       const ThresholdSet& thresholds, int loops,
                                       std::uint64_t seed, int ticks = 600,
                                       OracleStats* stats = nullptr);

}  // namespace seatwalk::testing
