# Copyright 2026 The seatwalk Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import pathlib

import pytest

import seatwalk

ROOT = pathlib.Path(__file__).resolve().parents[2]
FORWARD = [0, 51.3, 75.8, 90]


def test_builtins_print_and_check_clean():
    assert seatwalk.builtin_motions() == [
        "move_forward", "move_backward", "rotate_left", "rotate_right"]
    for name in seatwalk.builtin_motions():
        assert seatwalk.check_motion(seatwalk.print_motion(name)) == []


def test_check_motion_reports_positions():
    text = "motion m\ninit T-p=0\nstate 1: control T-p ; cond F_foot <= ? ; delta 0\n"
    assert seatwalk.check_motion(text) == [(3, 49, "zero delta")]


def test_fsr_correct():
    assert seatwalk.fsr_correct(0) == 1.0
    assert seatwalk.fsr_correct(1023) == pytest.approx(math.exp(10.23), rel=1e-15)
    with pytest.raises(seatwalk.SeatwalkError) as info:
        seatwalk.fsr_correct(2000)
    assert seatwalk.error_code(info.value) == "fsr-range"


def test_balancer_pi():
    b = seatwalk.Balancer()
    assert b.step(3.0, 1.0) == pytest.approx(5.0 * 2 + 0.3 * 2)
    assert b.accumulated == 2.0


def test_reproduce_forward_loop():
    run = seatwalk.reproduce("move_forward", FORWARD, loops=2)
    assert not run["fell"]
    assert [round(l["forward"], 1) for l in run["loops"]] == [0.2, 0.2]
    header, events = seatwalk.parse_log(run["log"])
    assert header["mode"] == "reproduce"
    assert sum(e["kind"] == "frame" for e in events) == run["ticks"]


def test_no_balancer_falls():
    run = seatwalk.reproduce("move_forward", FORWARD, loops=3, balancer=False)
    assert run["fell"]


def test_teach_replay_and_closure():
    trace = (ROOT / "data/traces/move_forward.csv").read_text()
    values, ticks, log = seatwalk.teach_replay("move_forward", trace)
    assert values == pytest.approx(FORWARD, abs=1e-9)
    assert seatwalk.replay_teach_log(log) == values
    assert ticks > seatwalk.reproduce("move_forward", values)["ticks"]


def test_compose_and_csv():
    rr = [0, 30.4, 1.92, 0.0, 4.0, 5.24]
    run = seatwalk.compose([("move_forward", FORWARD, 4), ("rotate_right", rr, 1),
                            ("move_forward", FORWARD, 2)])
    x, y, yaw = run["pose"]
    assert x > 1.0 and y < 0.0 and yaw == pytest.approx(-23, abs=2)
    csv = seatwalk.trajectory_csv(run["log"])
    assert csv.startswith("tick,x,y,yaw,F_lfoot,F_rfoot,F_lhip,F_rhip,state_i,u\n")
    assert csv.count("\n") == run["ticks"] + 1


def test_runtime_protocol():
    rt = seatwalk.Runtime()
    assert rt.send({"t": "load_motion", "name": "move_forward"}) == [
        {"t": "ack", "of": "load_motion"}]
    rt.send({"t": "teach_start"})
    rt.send({"t": "set_u", "v": -4})
    telemetry = rt.tick()[-1]
    assert telemetry["t"] == "telemetry" and telemetry["u"] == -4
    assert rt.send("{broken")[0]["code"] == "parse"
    assert rt.mode == "teach"


def test_errors_carry_codes():
    with pytest.raises(seatwalk.SeatwalkError) as info:
        seatwalk.reproduce("move_forward", [0, 1])
    assert seatwalk.error_code(info.value) == "threshold-unlearned"
