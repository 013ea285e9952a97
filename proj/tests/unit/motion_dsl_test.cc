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

#include <random>

#include "doctest.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"
#include "spec_gen.h"
#include "test_util.h"

namespace seatwalk {
namespace {

constexpr std::string_view kForward = R"(# seated walk, forward
motion move_forward loop
init T-p=0 lK-p=90 rK-p=90
state 1: control T-p ; cond F_foot <= ? ; delta -2
state 2: control Kp-pair ; cond lK-p <= ? ; delta -3
state 3: control T-p ; cond F_foot >= 38 ; delta 2   # fixed threshold
state 4: control Kp-pair ; cond lK-p >= ? ; delta 1
)";

Diagnostic only_diagnostic(std::string_view text) {
  const ParseResult r = parse_motion(text);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK_FALSE(r.spec.has_value());
  return r.diagnostics.front();
}

TEST_CASE("parses a motion with comments and a fixed threshold") {
  const ParseResult r = parse_motion(kForward);
  REQUIRE(r.ok());
  const MotionSpec& m = *r.spec;
  CHECK(m.name == "move_forward");
  CHECK(m.loopable);
  CHECK(m.initial_posture.size() == 3);
  CHECK(m.initial_posture.at(JointId::kLeftKneePitch) == 90.0);
  REQUIRE(m.state_count() == 4);
  CHECK(m.states[1].control == ControlTarget::knee_pair());
  CHECK(m.states[1].condition.sensor == SensorKey::joint_angle(JointId::kLeftKneePitch));
  CHECK(m.states[1].condition.direction == Comparison::kLessEqual);
  CHECK(m.states[1].condition.learned());
  CHECK(m.states[2].condition.fixed_threshold == 38.0);
  CHECK(m.default_deltas() == std::vector<double>{-2, -3, 2, 1});
}

TEST_CASE("tokens need no surrounding spaces around ':' and ';'") {
  const ParseResult r = parse_motion(
      "motion m\ninit T-p=0\nstate 1:control T-p;cond F_foot<=?;delta -2\n");
  REQUIRE(r.ok());
  CHECK(r.spec->states[0].default_delta == -2);
}

TEST_CASE("diagnostics point at the offending token") {
  SUBCASE("zero delta") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0\nstate 1: control T-p ; cond F_foot <= ? ; delta 0\n");
    CHECK(d.line == 3);
    CHECK(d.column == 49);
    CHECK(d.message == "zero delta");
  }
  SUBCASE("index gap") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0\n"
        "state 1: control T-p ; cond F_foot <= ? ; delta -2\n"
        "state 3: control T-p ; cond F_foot >= ? ; delta 2\n");
    CHECK(d.line == 4);
    CHECK(d.column == 7);
    CHECK(d.message == "non-contiguous state index: expected 2, found 3");
  }
  SUBCASE("unknown joint in init") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0 xK-p=3\nstate 1: control T-p ; cond F_foot <= ? ; delta -2\n");
    CHECK(d.line == 2);
    CHECK(d.column == 12);
    CHECK(d.message == "unknown joint 'xK-p'");
  }
  SUBCASE("unknown sensor") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0\nstate 1: control T-p ; cond F_back <= ? ; delta -2\n");
    CHECK(d.column == 29);
    CHECK(d.message == "unknown sensor 'F_back'");
  }
  SUBCASE("condition on a joint the state does not drive") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0\nstate 1: control T-p ; cond lK-p <= ? ; delta -2\n");
    CHECK(d.message == "condition sensor lK-p is not influenced by control T-p");
  }
  SUBCASE("missing operator") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=0\nstate 1: control T-p ; cond F_foot = ? ; delta -2\n");
    CHECK(d.column == 36);
    CHECK(d.message == "expected '<=' or '>='");
  }
  SUBCASE("init beyond limits") {
    const Diagnostic d = only_diagnostic(
        "motion m\ninit T-p=130\nstate 1: control T-p ; cond F_foot <= ? ; delta -2\n");
    CHECK(d.column == 10);
  }
  SUBCASE("missing init") {
    const Diagnostic d =
        only_diagnostic("motion m\nstate 1: control T-p ; cond F_foot <= ? ; delta -2\n");
    CHECK(d.line == 2);
    CHECK(d.message == "missing init line before first state");
  }
  SUBCASE("no states") {
    const Diagnostic d = only_diagnostic("motion m\ninit T-p=0\n");
    CHECK(d.message == "motion has no states");
  }
  SUBCASE("empty file") {
    const ParseResult r = parse_motion("");
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].message == "missing motion header");
  }
  SUBCASE("stray keyword") {
    const ParseResult r = parse_motion("motion m\ninit T-p=0\nstat 1\n");
    CHECK(r.diagnostics[0].message == "expected 'motion', 'init' or 'state', found 'stat'");
  }
}

TEST_CASE("diagnostics format as name:line:col: message") {
  CHECK(format_diagnostic({3, 50, "zero delta"}, "walk.motion") ==
        "walk.motion:3:50: zero delta");
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(format_number(-2) == "-2");
  CHECK(format_number(51.3) == "51.3");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_number(-0.0) == "-0");
}

TEST_CASE("builtins validate and print canonically") {
  const auto& all = builtin_motions();
  REQUIRE(all.size() == 4);
  for (const MotionSpec& m : all) {
    CHECK(check_motion(m).empty());
    const std::string text = print_motion(m);
    const ParseResult r = parse_motion(text);
    REQUIRE(r.ok());
    CHECK(*r.spec == m);
    CHECK(print_motion(*r.spec) == text);
  }
  CHECK(builtin_motion("rotate_right")->state_count() == 6);
  CHECK(motion_kind(*builtin_motion("rotate_left")) == MotionKind::kRotation);
  CHECK_FALSE(builtin_motion("hop").has_value());
}

TEST_CASE("the published delta sets are the builtin defaults") {
  CHECK(builtin_motion("move_forward")->default_deltas() == std::vector<double>{-2, -3, 2, 1});
  CHECK(builtin_motion("move_backward")->default_deltas() == std::vector<double>{-2, 3, 2, -1});
  CHECK(builtin_motion("rotate_left")->default_deltas() ==
        std::vector<double>{-2, 2, 2, -2, -2, 2});
}

TEST_CASE("motion files shipped in data/ match the builtins") {
  for (const MotionSpec& m : builtin_motions()) {
    const std::string text =
        read_text_file(testing::source_path("data/motions/" + m.name + ".motion"));
    CHECK(text == print_motion(m));
  }
}

TEST_CASE("print then parse is the identity on generated motions") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const MotionSpec m = testing::random_motion(rng, 8);
    const std::string text = print_motion(m);
    const ParseResult r = parse_motion(text);
    INFO(text);
    REQUIRE(r.ok());
    CHECK(*r.spec == m);
  }
}

}  // namespace
}  // namespace seatwalk
