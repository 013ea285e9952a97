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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seatwalk/balancer.h"
#include "seatwalk/cli.h"
#include "seatwalk/error.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"
#include "seatwalk/plant.h"
#include "seatwalk/runtime.h"

namespace py = pybind11;

namespace seatwalk {
namespace {

// JSON crosses the boundary as text; the Python package decodes it.
std::vector<std::string> dump_all(const std::vector<Json>& messages) {
  std::vector<std::string> out;
  out.reserve(messages.size());
  for (const Json& m : messages) out.push_back(m.dump());
  return out;
}

MotionSpec motion_from(const std::string& name_or_text) {
  if (name_or_text.find('\n') != std::string::npos) {
    const ParseResult r = parse_motion(name_or_text);
    if (!r.ok()) throw Error("motion-invalid", format_diagnostic(r.diagnostics.front(), "<text>"));
    return *r.spec;
  }
  return resolve_motion(name_or_text);
}

RunOptions run_options(std::uint64_t seed, bool balancer, const std::string& plant_text) {
  RunOptions o;
  o.seed = seed;
  o.balancer = balancer;
  if (!plant_text.empty()) o.plant = plant_config_from_text(plant_text);
  return o;
}

py::dict repro_dict(const ReproRun& run) {
  py::list loops;
  for (const LoopSummary& s : run.loops) {
    py::dict d;
    d["motion"] = s.motion;
    d["loop"] = s.loop;
    d["forward"] = s.forward;
    d["lateral"] = s.lateral;
    d["yaw"] = s.yaw;
    loops.append(d);
  }
  py::dict out;
  out["loops"] = loops;
  out["fell"] = run.fell;
  out["error"] = run.error ? py::object(py::str(*run.error)) : py::object(py::none());
  out["ticks"] = run.ticks;
  out["pose"] = py::make_tuple(run.final_pose.x, run.final_pose.y, run.final_pose.yaw_deg);
  out["log"] = serialize_log(run.log);
  return out;
}

}  // namespace
}  // namespace seatwalk

PYBIND11_MODULE(_core, m) {
  using namespace seatwalk;
  m.doc() = "Constrained teaching and seated-walk reproduction on a simulated caster chair.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&m] {
    return py::exception<Error>(m, "SeatwalkError", PyExc_RuntimeError);
  });
  // Raised with args (code, message).
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error_type.get_stored().ptr(),
                      py::make_tuple(e.code(), e.what()).ptr());
    }
  });

  m.def("builtin_motion_names", [] {
    std::vector<std::string> names;
    for (const MotionSpec& s : builtin_motions()) names.push_back(s.name);
    return names;
  });
  m.def("print_motion", [](const std::string& name_or_text) {
    return print_motion(motion_from(name_or_text));
  }, py::arg("motion"), "Canonical text of a builtin name, file path or motion text.");
  m.def("check_motion_text", [](const std::string& text) {
    std::vector<std::tuple<int, int, std::string>> out;
    for (const Diagnostic& d : parse_motion(text).diagnostics) {
      out.emplace_back(d.line, d.column, d.message);
    }
    return out;
  }, py::arg("text"), "Diagnostics as (line, column, message); empty when valid.");
  m.def("motion_state_count", [](const std::string& name_or_text) {
    return motion_from(name_or_text).state_count();
  });

  m.def("fsr_correct", &fsr_correct, py::arg("analog"));
  m.def("default_plant_config", [] { return plant_config_to_text(PlantConfig{}); });

  m.def("teach_replay", [](const std::string& motion, const std::string& trace_text,
                           std::uint64_t seed, bool balancer, const std::string& plant) {
    const TeachRun run = run_teach_trace(motion_from(motion), parse_slider_trace(trace_text),
                                         run_options(seed, balancer, plant));
    return py::make_tuple(run.thresholds.values, run.ticks, serialize_log(run.log));
  }, py::arg("motion"), py::arg("trace"), py::arg("seed") = 0, py::arg("balancer") = true,
     py::arg("plant") = "");

  m.def("reproduce", [](const std::string& motion, const std::vector<double>& thresholds,
                        std::optional<std::vector<double>> deltas, int loops,
                        std::uint64_t seed, bool balancer, const std::string& plant) {
    const MotionSpec spec = motion_from(motion);
    return repro_dict(run_reproduction(spec, {spec.name, thresholds},
                                       deltas.value_or(spec.default_deltas()), loops,
                                       run_options(seed, balancer, plant)));
  }, py::arg("motion"), py::arg("thresholds"), py::arg("deltas") = py::none(),
     py::arg("loops") = 1, py::arg("seed") = 0, py::arg("balancer") = true,
     py::arg("plant") = "");

  m.def("compose", [](const std::vector<std::tuple<std::string, std::vector<double>, int>>& plan,
                      std::uint64_t seed, bool balancer, const std::string& plant) {
    std::vector<ComposeStep> steps;
    for (const auto& [motion, thresholds, loops] : plan) {
      const MotionSpec spec = motion_from(motion);
      steps.push_back({spec, {spec.name, thresholds}, loops});
    }
    return repro_dict(run_compose(steps, run_options(seed, balancer, plant)));
  }, py::arg("plan"), py::arg("seed") = 0, py::arg("balancer") = true, py::arg("plant") = "");

  m.def("trajectory_csv", [](const std::string& log_text) {
    return trajectory_csv(parse_log(log_text));
  }, py::arg("log"));
  m.def("replay_teach_log", [](const std::string& log_text, const std::string& plant) {
    const PlantConfig pc = plant.empty() ? PlantConfig{} : plant_config_from_text(plant);
    return replay_teach_log(parse_log(log_text), RuntimeConfig{}, pc).values;
  }, py::arg("log"), py::arg("plant") = "");

  py::class_<Balancer>(m, "Balancer")
      .def(py::init([](double p, double i, double acc, double out) {
             return Balancer({p, i}, acc, out);
           }),
           py::arg("proportional") = 5.0, py::arg("integral") = 0.3,
           py::arg("accumulator_limit") = Balancer::kDefaultAccumulatorLimit,
           py::arg("output_limit") = Balancer::kDefaultOutputLimit)
      .def("step", &Balancer::step, py::arg("left_hip"), py::arg("right_hip"))
      .def("reset", &Balancer::reset)
      .def_property("enabled", &Balancer::enabled, &Balancer::set_enabled)
      .def_property_readonly("accumulated", &Balancer::accumulated);

  py::class_<Runtime>(m, "Runtime")
      .def(py::init([](std::uint64_t seed, const std::string& plant) {
             const PlantConfig pc = plant.empty() ? PlantConfig{} : plant_config_from_text(plant);
             return Runtime(RuntimeConfig{}, pc, seed);
           }),
           py::arg("seed") = 0, py::arg("plant") = "")
      .def("handle_line", [](Runtime& rt, const std::string& line) {
        return dump_all(rt.handle_line(line));
      })
      .def("tick", [](Runtime& rt) { return dump_all(rt.tick()); })
      .def_property_readonly("mode", [](const Runtime& rt) { return std::string(mode_name(rt.mode())); })
      .def_property_readonly("tick_count", &Runtime::tick_count)
      .def_property_readonly("log", [](const Runtime& rt) { return serialize_log(rt.log()); });
}
