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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seatwalk/motion.h"

namespace seatwalk {

// Line-oriented motion files (.motion):
//
//   # comment
//   motion move_forward loop
//   init T-p=0 lK-p=90 rK-p=90
//   state 1: control T-p ; cond F_foot <= ? ; delta -2
//
// `?` marks a threshold learned by teaching; a number fixes it.

struct Diagnostic {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, may be one past the end of the line
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

struct ParseResult {
  std::optional<MotionSpec> spec;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return spec.has_value() && diagnostics.empty(); }
};

ParseResult parse_motion(std::string_view text);

// Canonical, byte-stable text; parse_motion(print_motion(s)).spec == s.
std::string print_motion(const MotionSpec& spec);

// "file:line:col: message"
std::string format_diagnostic(const Diagnostic& d, std::string_view source_name);

// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

// The four seated-walk motions, all thresholds learned, deltas as published.
const std::vector<MotionSpec>& builtin_motions();
std::optional<MotionSpec> builtin_motion(std::string_view name);

}  // namespace seatwalk
