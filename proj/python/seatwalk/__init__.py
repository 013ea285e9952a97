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
"""Python bindings for seatwalk.

Motions are given as a builtin name ("move_forward"), a path to a .motion
file, or motion text. Logs and protocol messages are decoded from JSON.
"""

import json

from . import _core
from ._core import Balancer, SeatwalkError, fsr_correct

__all__ = [
    "Balancer",
    "Runtime",
    "SeatwalkError",
    "builtin_motions",
    "check_motion",
    "compose",
    "default_plant_config",
    "error_code",
    "fsr_correct",
    "print_motion",
    "replay_teach_log",
    "reproduce",
    "teach_replay",
    "trajectory_csv",
]


def error_code(exc):
    """Short machine-readable code of a SeatwalkError, e.g. "stall"."""
    return exc.args[0] if exc.args else ""


def builtin_motions():
    return list(_core.builtin_motion_names())


def print_motion(motion):
    return _core.print_motion(motion)


def check_motion(text):
    """Diagnostics for motion text as (line, column, message) tuples."""
    return [tuple(d) for d in _core.check_motion_text(text)]


def default_plant_config():
    return _core.default_plant_config()


def teach_replay(motion, trace, seed=0, balancer=True, plant=""):
    """Teach from slider-trace CSV text. Returns (thresholds, ticks, log_text)."""
    values, ticks, log = _core.teach_replay(motion, trace, seed, balancer, plant)
    return list(values), ticks, log


def reproduce(motion, thresholds, deltas=None, loops=1, seed=0, balancer=True, plant=""):
    """Run a taught motion. Returns a dict with loops, fell, error, ticks, pose, log."""
    return _core.reproduce(motion, list(thresholds), deltas, loops, seed, balancer, plant)


def compose(plan, seed=0, balancer=True, plant=""):
    """Run [(motion, thresholds, loops), ...] back to back."""
    steps = [(m, list(t), int(n)) for m, t, n in plan]
    return _core.compose(steps, seed, balancer, plant)


def trajectory_csv(log):
    return _core.trajectory_csv(log)


def replay_teach_log(log, plant=""):
    return list(_core.replay_teach_log(log, plant))


def parse_log(log):
    """Header and events of a session log as Python objects."""
    lines = [json.loads(line) for line in log.splitlines()]
    return lines[0], lines[1:]


class Runtime:
    """Virtual-time control loop speaking the line-JSON protocol."""

    def __init__(self, seed=0, plant=""):
        self._rt = _core.Runtime(seed, plant)

    def send(self, message):
        line = message if isinstance(message, str) else json.dumps(message)
        return [json.loads(m) for m in self._rt.handle_line(line)]

    def tick(self):
        return [json.loads(m) for m in self._rt.tick()]

    @property
    def mode(self):
        return self._rt.mode

    @property
    def tick_count(self):
        return self._rt.tick_count

    @property
    def log(self):
        return self._rt.log
