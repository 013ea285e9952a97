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

#include "seatwalk/cli.h"

#include <charconv>
#include <cmath>
#include <csignal>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "seatwalk/error.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"
#include "seatwalk/server.h"

namespace seatwalk {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFall = 2;
constexpr int kExitRuntime = 3;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    auto v = to_double(std::string_view(text).substr(pos, comma - pos));
    if (!v) throw Error("bad-deltas", "'" + text + "' is not a comma list of numbers");
    out.push_back(*v);
    pos = comma + 1;
  }
  return out;
}

ChairPose pose_from(const Json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

LoopSummary summarize(const std::string& motion, int loop, const ChairPose& a,
                      const ChairPose& b) {
  const double heading = a.yaw_deg * std::numbers::pi / 180.0;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return {motion, loop, dx * std::cos(heading) + dy * std::sin(heading),
          -dx * std::sin(heading) + dy * std::cos(heading), b.yaw_deg - a.yaw_deg};
}

ReproRun finish_run(Runtime& rt, const RunOptions& options) {
  ReproRun run;
  std::int64_t guard = 0;
  while (rt.mode() == RuntimeMode::kReproduce) {
    if (++guard > options.max_ticks) throw Error("timeout", "run did not finish");
    for (const Json& msg : rt.tick()) {
      if (msg["t"] == "err") run.error = msg["code"].get<std::string>();
    }
  }
  run.fell = rt.mode() == RuntimeMode::kFallen;
  run.log = rt.log();
  run.ticks = rt.session_ticks();
  run.final_pose = rt.plant().state().pose;
  run.loops = loop_summaries(run.log);
  return run;
}

void print_summary(std::ostream& out, const ReproRun& run) {
  out << std::fixed;
  for (const LoopSummary& s : run.loops) {
    out << s.motion << " loop " << s.loop << ": forward " << std::setprecision(4)
        << s.forward << " m, lateral " << s.lateral << " m, yaw "
        << std::setprecision(2) << s.yaw << " deg\n";
  }
  out << "net: x " << std::setprecision(4) << run.final_pose.x << " m, y "
      << run.final_pose.y << " m, yaw " << std::setprecision(2)
      << run.final_pose.yaw_deg << " deg over " << run.ticks << " ticks\n";
  out << std::defaultfloat;
}

int report_outcome(std::ostream& out, std::ostream& err, const ReproRun& run) {
  print_summary(out, run);
  if (run.fell) {
    const auto falls = run.log.events_of("fall");
    err << "fall at tick " << (falls.empty() ? 0 : falls.back()->tick) << " during loop "
        << (falls.empty() ? 0 : falls.back()->data.value("loops", 0) + 1) << "\n";
    return kExitFall;
  }
  if (run.error) {
    err << "error: " << *run.error << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

RunOptions make_options(const std::optional<std::string>& config_path,
                        std::uint64_t seed, bool no_balancer) {
  RunOptions options;
  options.runtime = load_runtime_config(config_path);
  options.plant = load_plant_config(options.runtime);
  options.seed = seed;
  options.balancer = !no_balancer;
  return options;
}

volatile std::sig_atomic_t g_stop = 0;
extern "C" void on_signal(int) { g_stop = 1; }

}  // namespace

std::vector<SliderEvent> parse_slider_trace(std::string_view text) {
  std::vector<SliderEvent> events;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    const std::string where = "line " + std::to_string(line_no);
    if (comma == std::string_view::npos) throw Error("trace-format", where + ": expected tick,value");
    const std::string_view tick_text = trim(line.substr(0, comma));
    const std::string_view value = trim(line.substr(comma + 1));
    if (events.empty() && tick_text == "tick") continue;
    auto tick = to_double(tick_text);
    if (!tick || *tick < 0 || *tick != std::floor(*tick)) {
      throw Error("trace-format", where + ": bad tick");
    }
    SliderEvent e;
    e.tick = static_cast<std::int64_t>(*tick);
    if (value != "ADVANCE" && value != "advance") {
      auto u = to_double(value);
      if (!u) throw Error("trace-format", where + ": expected degrees or ADVANCE");
      e.u = *u;
    }
    if (!events.empty() && e.tick < events.back().tick) {
      throw Error("trace-format", where + ": ticks must not decrease");
    }
    events.push_back(e);
  }
  return events;
}

MotionSpec resolve_motion(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    const ParseResult parsed = parse_motion(read_text_file(name_or_path));
    if (!parsed.ok()) {
      throw Error("motion-invalid",
                  format_diagnostic(parsed.diagnostics.front(), name_or_path));
    }
    return *parsed.spec;
  }
  if (auto builtin = builtin_motion(name_or_path)) return *builtin;
  throw Error("unknown-motion", name_or_path);
}

TeachRun run_teach_trace(const MotionSpec& motion, const std::vector<SliderEvent>& trace,
                         const RunOptions& options) {
  Runtime rt(options.runtime, options.plant, options.seed);
  rt.set_balancer(options.balancer);
  rt.load_motion(motion);
  rt.teach_start();
  for (const SliderEvent& e : trace) {
    while (rt.tick_count() < e.tick) {
      rt.tick();
      if (rt.mode() == RuntimeMode::kFallen) throw Error("fallen", "plant fell while teaching");
    }
    if (rt.mode() != RuntimeMode::kTeach) break;
    if (e.u) {
      rt.set_command(*e.u);
    } else {
      rt.advance();
    }
  }
  if (rt.mode() == RuntimeMode::kTeach) {
    throw Error("teach-incomplete", "trace ended in state " +
                                        std::to_string(rt.session()->state_index()));
  }
  TeachRun run;
  run.thresholds = *rt.thresholds_for(motion.name);
  run.log = rt.log();
  run.ticks = rt.session_ticks();
  return run;
}

ReproRun run_reproduction(const MotionSpec& motion, const ThresholdSet& thresholds,
                          const std::vector<double>& deltas, int loops,
                          const RunOptions& options) {
  Runtime rt(options.runtime, options.plant, options.seed);
  rt.set_balancer(options.balancer);
  rt.load_motion(motion);
  rt.set_thresholds({motion.name, thresholds.values});
  rt.start_reproduction(deltas, loops);
  return finish_run(rt, options);
}

ReproRun run_compose(const std::vector<ComposeStep>& plan, const RunOptions& options) {
  Runtime rt(options.runtime, options.plant, options.seed);
  rt.set_balancer(options.balancer);
  std::vector<PlanStep> steps;
  for (const ComposeStep& s : plan) {
    rt.load_motion(s.motion);
    rt.set_thresholds({s.motion.name, s.thresholds.values});
    steps.push_back({s.motion.name, s.loops});
  }
  rt.start_compose(steps);
  return finish_run(rt, options);
}

std::vector<LoopSummary> loop_summaries(const SessionLog& log) {
  std::vector<LoopSummary> out;
  ChairPose start = pose_from(log.header.at("start_pose"));
  int loop = 0;
  for (const LogEvent& e : log.events) {
    if (e.kind == "segment") {
      start = pose_from(e.data.at("pose"));
      loop = 0;
    } else if (e.kind == "transition") {
      // A transition that bumps the loop count closes a loop.
      if (e.data.at("loops").get<int>() > loop) {
        const ChairPose end = pose_from(e.data.at("pose"));
        out.push_back(summarize(e.data.at("motion").get<std::string>(), ++loop, start, end));
        start = end;
      }
    }
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"seatwalk: constrained teaching and seated-walk reproduction on a "
               "simulated caster chair"};
  app.require_subcommand(1);

  std::string motion_arg, trace_path, thresholds_path, deltas_arg, out_path,
      log_path, csv_path, plan_path, host = "127.0.0.1";
  std::optional<std::string> config_path;
  std::vector<std::string> threshold_files;
  std::uint64_t seed = 0;
  int loops = 1;
  int port = 7878;
  bool no_balancer = false;
  bool runtime_defaults = false;
  bool no_pace = false;

  auto* validate = app.add_subcommand("validate", "Check a motion file");
  validate->add_option("--motion", motion_arg, "Motion file")->required();

  auto* print = app.add_subcommand("print", "Print a motion in canonical form");
  print->add_option("--motion", motion_arg, "Motion file or builtin name")->required();

  auto* teach = app.add_subcommand("teach-replay", "Teach a motion from a slider trace");
  teach->add_option("--motion", motion_arg, "Motion file or builtin name")->required();
  teach->add_option("--trace", trace_path, "Slider trace CSV")->required();
  teach->add_option("--out", out_path, "Thresholds JSON to write");
  teach->add_option("--log", log_path, "Session log to write");

  auto* repro = app.add_subcommand("reproduce", "Reproduce a taught motion");
  repro->add_option("--motion", motion_arg, "Motion file or builtin name")->required();
  repro->add_option("--thresholds", thresholds_path, "Thresholds JSON")->required();
  repro->add_option("--deltas", deltas_arg, "Comma list of per-state deltas (deg/tick)");
  repro->add_option("--loops", loops, "Loops to run")->check(CLI::PositiveNumber);
  repro->add_option("--out", out_path, "Session log to write");
  repro->add_option("--csv", csv_path, "Trajectory CSV to write");

  auto* compose = app.add_subcommand("compose", "Run a sequence of taught motions");
  compose->add_option("--plan", plan_path, "Plan JSON: [{motion, loops}]")->required();
  compose->add_option("--thresholds", threshold_files, "Thresholds JSON (repeatable)");
  compose->add_option("--out", out_path, "Session log to write");
  compose->add_option("--csv", csv_path, "Trajectory CSV to write");

  auto* exporter = app.add_subcommand("export", "Export a session log as trajectory CSV");
  exporter->add_option("--log", log_path, "Session log")->required();
  exporter->add_option("--out", out_path, "CSV to write")->required();

  auto* defaults = app.add_subcommand("default-config", "Print the default configuration");
  defaults->add_flag("--runtime", runtime_defaults, "Runtime settings instead of plant");
  defaults->add_option("--out", out_path, "File to write instead of stdout");

  auto* serve = app.add_subcommand("serve", "Serve the line-JSON protocol over TCP");
  serve->add_option("--port", port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_flag("--no-pace", no_pace, "Tick as fast as possible");

  for (CLI::App* sub : {teach, repro, compose, serve}) {
    sub->add_option("--seed", seed, "Noise seed");
    sub->add_flag("--no-balancer", no_balancer, "Disable the buttock-contact balancer");
    sub->add_option("--config", config_path, "Runtime config (SEATWALK_CONFIG overrides)");
  }

  std::vector<const char*> argv;
  argv.push_back("seatwalk");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate->parsed()) {
      const ParseResult parsed = parse_motion(read_text_file(motion_arg));
      for (const Diagnostic& d : parsed.diagnostics) {
        err << format_diagnostic(d, motion_arg) << "\n";
      }
      if (!parsed.ok()) return kExitInput;
      out << motion_arg << ": ok (" << parsed.spec->state_count() << " states)\n";
      return kExitOk;
    }
    if (print->parsed()) {
      out << print_motion(resolve_motion(motion_arg));
      return kExitOk;
    }
    if (teach->parsed()) {
      const MotionSpec motion = resolve_motion(motion_arg);
      const auto trace = parse_slider_trace(read_text_file(trace_path));
      const TeachRun run =
          run_teach_trace(motion, trace, make_options(config_path, seed, no_balancer));
      if (!out_path.empty()) save_thresholds(run.thresholds, out_path);
      if (!log_path.empty()) save_log(run.log, log_path);
      out << thresholds_to_json(run.thresholds).dump() << "\n";
      out << "teaching took " << run.ticks << " ticks\n";
      return kExitOk;
    }
    if (repro->parsed()) {
      const MotionSpec motion = resolve_motion(motion_arg);
      const ThresholdSet th = load_thresholds(thresholds_path);
      const std::vector<double> deltas =
          deltas_arg.empty() ? motion.default_deltas() : parse_deltas(deltas_arg);
      const ReproRun run = run_reproduction(motion, th, deltas, loops,
                                            make_options(config_path, seed, no_balancer));
      if (!out_path.empty()) save_log(run.log, out_path);
      if (!csv_path.empty()) export_trajectory(run.log, csv_path);
      return report_outcome(out, err, run);
    }
    if (compose->parsed()) {
      Json plan_json = Json::parse(read_text_file(plan_path));
      if (plan_json.is_object()) plan_json = plan_json.at("plan");
      const std::string base = std::filesystem::path(plan_path).parent_path().string();
      std::map<std::string, ThresholdSet> known;
      for (const std::string& f : threshold_files) {
        ThresholdSet th = load_thresholds(f);
        known[th.motion] = th;
      }
      std::vector<ComposeStep> steps;
      for (const Json& s : plan_json) {
        ComposeStep step;
        step.motion = resolve_motion(s.at("motion").get<std::string>());
        step.loops = s.value("loops", 1);
        if (s.contains("thresholds")) {
          std::filesystem::path p(s["thresholds"].get<std::string>());
          if (p.is_relative() && !base.empty()) p = std::filesystem::path(base) / p;
          step.thresholds = load_thresholds(p.string());
        } else if (auto it = known.find(step.motion.name); it != known.end()) {
          step.thresholds = it->second;
        } else {
          throw Error("threshold-unlearned", "no thresholds for " + step.motion.name);
        }
        steps.push_back(std::move(step));
      }
      if (steps.empty()) throw Error("empty-plan");
      const ReproRun run = run_compose(steps, make_options(config_path, seed, no_balancer));
      if (!out_path.empty()) save_log(run.log, out_path);
      if (!csv_path.empty()) export_trajectory(run.log, csv_path);
      return report_outcome(out, err, run);
    }
    if (exporter->parsed()) {
      export_trajectory(load_log(log_path), out_path);
      return kExitOk;
    }
    if (defaults->parsed()) {
      const std::string text = runtime_defaults ? runtime_config_to_text(RuntimeConfig{})
                                                : plant_config_to_text(PlantConfig{});
      if (out_path.empty()) {
        out << text;
      } else {
        write_text_file(out_path, text);
      }
      return kExitOk;
    }
    if (serve->parsed()) {
      RunOptions options = make_options(config_path, seed, no_balancer);
      options.runtime.pace = !no_pace;
      Server server(options.runtime, options.plant, seed, !no_balancer);
      server.start(host, static_cast<std::uint16_t>(port));
      out << "listening on " << host << ":" << server.port() << std::endl;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_stop) server.wait_for(std::chrono::milliseconds(200));
      server.stop();
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == "stall" ? kExitRuntime : kExitInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace seatwalk
