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

#include "seatwalk/runtime.h"

#include <cstdlib>
#include <filesystem>
#include <utility>

#include "seatwalk/error.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"

namespace seatwalk {
namespace {

Json error_reply(const std::string& code, const std::string& detail = {}) {
  Json j = Json::object();
  j["t"] = "err";
  j["code"] = code;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

Json ack(const std::string& of) {
  Json j = Json::object();
  j["t"] = "ack";
  j["of"] = of;
  return j;
}

Json pose_json(const ChairPose& pose) { return {pose.x, pose.y, pose.yaw_deg}; }

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

void RuntimeConfig::validate() const {
  if (!(tick_rate_hz > 0.0)) throw Error("config", "tick_rate_hz must be > 0");
  if (!(balancer_accumulator_limit > 0.0) || !(balancer_output_limit > 0.0)) {
    throw Error("config", "balancer limits must be > 0");
  }
  if (odometry_sigma < 0.0) throw Error("config", "odometry_sigma must be >= 0");
}

RuntimeConfig runtime_config_from_text(std::string_view text,
                                       const std::string& base_dir) {
  RuntimeConfig c;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "tick_rate_hz") {
      c.tick_rate_hz = parse_config_double(key, value);
    } else if (key == "plant_config") {
      c.plant_config_path = resolve(value, base_dir);
    } else if (key == "balancer_pgain") {
      c.balancer_pgain = parse_config_double(key, value);
    } else if (key == "balancer_igain") {
      c.balancer_igain = parse_config_double(key, value);
    } else if (key == "balancer_accumulator_limit") {
      c.balancer_accumulator_limit = parse_config_double(key, value);
    } else if (key == "balancer_output_limit") {
      c.balancer_output_limit = parse_config_double(key, value);
    } else if (key == "odometry_noise") {
      c.odometry_noise = parse_config_bool(key, value);
    } else if (key == "odometry_sigma") {
      c.odometry_sigma = parse_config_double(key, value);
    } else if (key == "record") {
      c.record_path = resolve(value, base_dir);
    } else if (key == "pace") {
      c.pace = parse_config_bool(key, value);
    } else {
      throw Error("config", "unknown key " + key);
    }
  }
  c.validate();
  return c;
}

std::string runtime_config_to_text(const RuntimeConfig& c) {
  std::string out = "# seatwalk runtime configuration\n";
  out += "tick_rate_hz = " + format_number(c.tick_rate_hz) + "\n";
  out += "plant_config = " + c.plant_config_path + "\n";
  if (c.balancer_pgain) out += "balancer_pgain = " + format_number(*c.balancer_pgain) + "\n";
  if (c.balancer_igain) out += "balancer_igain = " + format_number(*c.balancer_igain) + "\n";
  out += "balancer_accumulator_limit = " + format_number(c.balancer_accumulator_limit) + "\n";
  out += "balancer_output_limit = " + format_number(c.balancer_output_limit) + "\n";
  out += std::string("odometry_noise = ") + (c.odometry_noise ? "true" : "false") + "\n";
  out += "odometry_sigma = " + format_number(c.odometry_sigma) + "\n";
  out += "record = " + c.record_path + "\n";
  out += std::string("pace = ") + (c.pace ? "true" : "false") + "\n";
  return out;
}

RuntimeConfig load_runtime_config(const std::optional<std::string>& path) {
  std::optional<std::string> chosen = path;
  if (const char* env = std::getenv("SEATWALK_CONFIG"); env && *env) chosen = env;
  if (!chosen) return RuntimeConfig{};
  const std::string base = std::filesystem::path(*chosen).parent_path().string();
  return runtime_config_from_text(read_text_file(*chosen), base);
}

PlantConfig load_plant_config(const RuntimeConfig& config) {
  if (config.plant_config_path.empty()) return PlantConfig{};
  return plant_config_from_text(read_text_file(config.plant_config_path));
}

std::string_view mode_name(RuntimeMode mode) {
  switch (mode) {
    case RuntimeMode::kIdle:
      return "idle";
    case RuntimeMode::kTeach:
      return "teach";
    case RuntimeMode::kReproduce:
      return "reproduce";
    case RuntimeMode::kFallen:
      return "fallen";
  }
  return "idle";
}

Runtime::Runtime(RuntimeConfig config, PlantConfig plant_config, std::uint64_t seed)
    : config_(std::move(config)),
      plant_config_(plant_config),
      plant_(plant_config, seed),
      balancer_(BalancerGains{}, config_.balancer_accumulator_limit,
                config_.balancer_output_limit) {
  config_.validate();
  for (const MotionSpec& m : builtin_motions()) motions_.emplace(m.name, m);
  if (config_.odometry_noise) plant_.set_odometry_noise(config_.odometry_sigma);
  apply_gains(MotionKind::kTranslation);
  last_frame_ = plant_.observe(commands_);
}

std::optional<MotionSpec> Runtime::find_motion(const std::string& name) const {
  auto it = motions_.find(name);
  if (it == motions_.end()) return std::nullopt;
  return it->second;
}

void Runtime::require_idle() const {
  if (mode_ == RuntimeMode::kFallen) throw Error("fallen");
  if (mode_ != RuntimeMode::kIdle) throw Error("wrong-mode");
}

void Runtime::apply(const JointAssignments& assignments) {
  for (const JointCommand& c : assignments) commands_[c.joint] = c.deg;
}

void Runtime::apply_gains(MotionKind kind) {
  BalancerGains gains = select_gains(kind);
  if (config_.balancer_pgain) gains.proportional = *config_.balancer_pgain;
  if (config_.balancer_igain) gains.integral = *config_.balancer_igain;
  balancer_.set_gains(gains);
}

void Runtime::load_motion(const MotionSpec& motion) {
  require_idle();
  if (auto problems = check_motion(motion); !problems.empty()) {
    throw Error("motion-invalid", problems.front());
  }
  motions_[motion.name] = motion;
  motion_ = motion;
}

void Runtime::set_thresholds(const ThresholdSet& thresholds) {
  thresholds_[thresholds.motion] = thresholds;
}

std::optional<ThresholdSet> Runtime::thresholds_for(const std::string& motion) const {
  auto it = thresholds_.find(motion);
  if (it == thresholds_.end()) return std::nullopt;
  return it->second;
}

void Runtime::begin_log(std::string mode, const MotionSpec& motion) {
  log_ = SessionLog{};
  Json& h = log_.header;
  h["motion"] = motion.name;
  h["mode"] = std::move(mode);
  h["config_hash"] = plant_config_hash(plant_config_);
  h["seed"] = plant_.seed();
  h["start"] = ticks_;
  h["fresh"] = ticks_ == 0;
  h["balancer"] = balancer_.enabled();
  h["start_pose"] = pose_json(plant_.state().pose);
  h["initial_frame"] = frame_to_json(last_frame_, 0, std::nullopt);
  log_active_ = true;
  session_start_tick_ = ticks_;
  session_end_tick_ = ticks_;
}

void Runtime::end_log() {
  if (!log_active_) return;
  log_active_ = false;
  session_end_tick_ = ticks_;
  if (config_.record_path.empty()) return;
  std::filesystem::create_directories(config_.record_path);
  const std::string name = "session-" + std::to_string(++log_serial_) + "-" +
                           log_.header.value("mode", std::string("run")) + "-" +
                           log_.header.value("motion", std::string("motion")) +
                           ".jsonl";
  save_log(log_, (std::filesystem::path(config_.record_path) / name).string());
}

void Runtime::teach_start() {
  if (mode_ == RuntimeMode::kFallen) throw Error("fallen");
  if (mode_ == RuntimeMode::kReproduce) throw Error("wrong-mode");
  if (!motion_) throw Error("no-motion");
  if (log_active_) end_log();
  session_ = engine_.begin_teaching(*motion_, commands_);
  commands_ = session_->commands();
  apply_gains(motion_kind(*motion_));
  mode_ = RuntimeMode::kTeach;
  begin_log("teach", *motion_);
  log_.header["motion_text"] = print_motion(*motion_);
}

void Runtime::set_command(double u) {
  if (mode_ != RuntimeMode::kTeach || !session_) throw Error("wrong-mode");
  apply(engine_.teach_set_command(*session_, u));
  Json data = Json::object();
  data["v"] = u;
  log_.append(ticks_, "slider", std::move(data));
}

TransitionRecord Runtime::advance() {
  if (mode_ != RuntimeMode::kTeach || !session_) throw Error("wrong-mode");
  const TransitionRecord rec = engine_.teach_advance(*session_, last_frame_);
  Json data = Json::object();
  data["from"] = rec.from_state;
  data["to"] = rec.to_state;
  data["thre"] = rec.threshold;
  log_.append(ticks_, "advance", std::move(data));
  if (rec.finished) {
    const ThresholdSet set = session_->threshold_set();
    set_thresholds(set);
    Json done = Json::object();
    done["thresholds"] = set.values;
    log_.append(ticks_, "done", std::move(done));
    end_log();
    mode_ = RuntimeMode::kIdle;
  }
  return rec;
}

void Runtime::start_reproduction(std::optional<std::vector<double>> deltas, int loops) {
  require_idle();
  if (!motion_) throw Error("no-motion");
  const ThresholdSet thresholds =
      thresholds_for(motion_->name).value_or(ThresholdSet{motion_->name, {}});
  const std::vector<double> d = deltas.value_or(motion_->default_deltas());
  session_ = engine_.begin_reproduction(*motion_, thresholds, d, loops, commands_);
  commands_ = session_->commands();
  apply_gains(motion_kind(*motion_));
  composing_ = false;
  mode_ = RuntimeMode::kReproduce;
  begin_log("reproduce", *motion_);
  log_.header["motion_text"] = print_motion(*motion_);
  log_.header["deltas"] = d;
  log_.header["loops"] = loops;
  log_.header["thresholds"] = session_->thresholds();
}

void Runtime::start_compose(const std::vector<PlanStep>& plan) {
  require_idle();
  if (plan.empty()) throw Error("empty-plan");
  for (const PlanStep& step : plan) {
    auto motion = find_motion(step.motion);
    if (!motion) throw Error("unknown-motion", step.motion);
    if (step.loops < 1) throw Error("loops", step.motion);
    // Validate thresholds and deltas up front so a plan never half-runs.
    const ThresholdSet th =
        thresholds_for(motion->name).value_or(ThresholdSet{motion->name, {}});
    CtmEngine probe;
    probe.begin_reproduction(*motion, th, motion->default_deltas(), step.loops);
  }
  plan_ = plan;
  composing_ = true;
  mode_ = RuntimeMode::kReproduce;
  MotionSpec label;
  label.name = "compose";
  begin_log("compose", label);
  Json steps = Json::array();
  for (const PlanStep& s : plan) {
    Json j = Json::object();
    j["motion"] = s.motion;
    j["loops"] = s.loops;
    steps.push_back(std::move(j));
  }
  log_.header["plan"] = std::move(steps);
  start_segment(0);
}

void Runtime::start_segment(std::size_t index) {
  plan_index_ = index;
  const PlanStep& step = plan_[index];
  const MotionSpec motion = *find_motion(step.motion);
  const ThresholdSet th = *thresholds_for(motion.name);
  session_ = engine_.begin_reproduction(motion, th, motion.default_deltas(),
                                        step.loops, commands_);
  commands_ = session_->commands();
  apply_gains(motion_kind(motion));
  Json data = Json::object();
  data["index"] = index;
  data["motion"] = motion.name;
  data["loops"] = step.loops;
  data["thresholds"] = session_->thresholds();
  data["pose"] = pose_json(plant_.state().pose);
  log_.append(ticks_, "segment", std::move(data));
}

void Runtime::set_balancer(bool on) {
  balancer_.set_enabled(on);
  if (log_active_) {
    Json data = Json::object();
    data["on"] = on;
    log_.append(ticks_, "balancer", std::move(data));
  }
}

void Runtime::reset(std::uint64_t seed) {
  if (log_active_) end_log();
  plant_.reset(seed);
  balancer_.reset();
  session_.reset();
  composing_ = false;
  plan_.clear();
  commands_ = JointAngles::neutral();
  mode_ = RuntimeMode::kIdle;
  ticks_ = 0;
  last_frame_ = plant_.observe(commands_);
}

std::optional<double> Runtime::current_command() const {
  if (!session_ || (mode_ != RuntimeMode::kTeach && mode_ != RuntimeMode::kReproduce)) {
    return std::nullopt;
  }
  return session_->command();
}

int Runtime::current_state() const {
  if (!session_ || (mode_ != RuntimeMode::kTeach && mode_ != RuntimeMode::kReproduce)) {
    return 0;
  }
  return session_->state_index();
}

Json Runtime::telemetry() const {
  Json frame = frame_to_json(last_frame_, 0, std::nullopt);
  frame.erase("state_i");
  frame.erase("u");
  frame.erase("pose");
  Json j = Json::object();
  j["t"] = "telemetry";
  j["tick"] = ticks_;
  j["state_i"] = current_state();
  const auto u = current_command();
  j["u"] = u ? Json(*u) : Json(nullptr);
  j["mode"] = mode_name(mode_);
  j["frame"] = std::move(frame);
  j["pose"] = pose_json(last_frame_.pose);
  return j;
}

std::vector<Json> Runtime::tick() {
  std::vector<Json> out;
  if (mode_ == RuntimeMode::kFallen) return out;

  if (mode_ == RuntimeMode::kReproduce && session_) {
    try {
      const StepOutput step = engine_.reproduction_step(*session_, last_frame_);
      apply(step.assignments);
      if (step.transition) {
        const TransitionRecord& rec = *step.transition;
        Json data = Json::object();
        data["motion"] = session_->motion().name;
        data["from"] = rec.from_state;
        data["to"] = rec.to_state;
        data["value"] = rec.sensor_value;
        data["thre"] = rec.threshold;
        data["loops"] = rec.loops_completed;
        data["pose"] = pose_json(plant_.state().pose);
        log_.append(ticks_, "transition", std::move(data));
        Json msg = Json::object();
        msg["t"] = "transition";
        msg["i"] = rec.to_state;
        msg["thre"] = rec.threshold;
        out.push_back(std::move(msg));
      }
      if (step.done) {
        if (composing_ && plan_index_ + 1 < plan_.size()) {
          start_segment(plan_index_ + 1);
        } else {
          Json data = Json::object();
          data["pose"] = pose_json(plant_.state().pose);
          log_.append(ticks_, "done", std::move(data));
          end_log();
          composing_ = false;
          mode_ = RuntimeMode::kIdle;
          Json msg = Json::object();
          msg["t"] = "done";
          out.push_back(std::move(msg));
        }
      }
    } catch (const Error& e) {
      Json data = Json::object();
      data["code"] = e.code();
      data["detail"] = e.what();
      log_.append(ticks_, "error", std::move(data));
      end_log();
      composing_ = false;
      mode_ = RuntimeMode::kIdle;
      out.push_back(error_reply(e.code(), e.what()));
    }
  }

  // The balancer owns torso roll whether or not it is enabled.
  commands_[JointId::kTorsoRoll] =
      balancer_.step(last_frame_.left_hip, last_frame_.right_hip);

  last_frame_ = plant_.step(commands_, config_.dt());
  ++ticks_;
  if (log_active_) {
    log_.append(ticks_, "frame",
                frame_to_json(last_frame_, current_state(), current_command()));
  }
  if (plant_.state().fallen) {
    mode_ = RuntimeMode::kFallen;
    if (log_active_) {
      Json data = Json::object();
      data["pose"] = pose_json(plant_.state().pose);
      data["loops"] = session_ ? session_->loops_completed() : 0;
      data["segment"] = composing_ ? static_cast<int>(plan_index_) : -1;
      log_.append(ticks_, "fall", std::move(data));
      end_log();
    }
    composing_ = false;
    Json msg = Json::object();
    msg["t"] = "fall";
    out.push_back(std::move(msg));
  }
  if (log_active_) session_end_tick_ = ticks_;
  out.push_back(telemetry());
  return out;
}

std::vector<Json> Runtime::handle_line(std::string_view line) {
  Json message;
  try {
    message = Json::parse(line);
  } catch (const Json::exception&) {
    return {error_reply("parse")};
  }
  return handle(message);
}

std::vector<Json> Runtime::handle(const Json& message) {
  if (!message.is_object() || !message.contains("t") || !message["t"].is_string()) {
    return {error_reply("bad-message", "expected an object with a string \"t\"")};
  }
  const std::string type = message["t"].get<std::string>();
  try {
    if (type == "load_motion") {
      if (message.contains("text")) {
        const ParseResult parsed = parse_motion(message.at("text").get<std::string>());
        if (!parsed.ok()) {
          const Diagnostic& d = parsed.diagnostics.front();
          return {error_reply("motion-invalid", format_diagnostic(d, "<text>"))};
        }
        load_motion(*parsed.spec);
      } else {
        const std::string name = message.at("name").get<std::string>();
        auto motion = find_motion(name);
        if (!motion) return {error_reply("unknown-motion", name)};
        load_motion(*motion);
      }
      return {ack(type)};
    }
    if (type == "teach_start") {
      teach_start();
      return {ack(type)};
    }
    if (type == "set_u") {
      set_command(message.at("v").get<double>());
      return {ack(type)};
    }
    if (type == "advance") {
      const TransitionRecord rec = advance();
      std::vector<Json> replies;
      Json tr = Json::object();
      tr["t"] = "transition";
      tr["i"] = rec.to_state;
      tr["thre"] = rec.threshold;
      replies.push_back(std::move(tr));
      if (rec.finished) {
        Json th = Json::object();
        th["t"] = "thresholds";
        th["values"] = thresholds_for(session_->motion().name)->values;
        replies.push_back(std::move(th));
        Json done = Json::object();
        done["t"] = "done";
        replies.push_back(std::move(done));
      }
      return replies;
    }
    if (type == "repro_start") {
      std::optional<std::vector<double>> deltas;
      if (message.contains("deltas")) {
        deltas = message["deltas"].get<std::vector<double>>();
      }
      if (message.contains("thresholds")) {
        if (!motion_) throw Error("no-motion");
        set_thresholds({motion_->name, message["thresholds"].get<std::vector<double>>()});
      }
      start_reproduction(deltas, message.value("loops", 1));
      return {ack(type)};
    }
    if (type == "compose") {
      std::vector<PlanStep> plan;
      for (const Json& step : message.at("plan")) {
        plan.push_back({step.at("motion").get<std::string>(), step.value("loops", 1)});
      }
      start_compose(plan);
      return {ack(type)};
    }
    if (type == "set_thresholds") {
      set_thresholds({message.at("motion").get<std::string>(),
                      message.at("values").get<std::vector<double>>()});
      return {ack(type)};
    }
    if (type == "balancer") {
      set_balancer(message.at("on").get<bool>());
      return {ack(type)};
    }
    if (type == "reset") {
      reset(message.value("seed", std::uint64_t{0}));
      return {ack(type)};
    }
    if (type == "subscribe") return {ack(type)};
    return {error_reply("unknown-type", type)};
  } catch (const Error& e) {
    return {error_reply(e.code(), e.what())};
  } catch (const Json::exception& e) {
    return {error_reply("bad-message", e.what())};
  }
}

ThresholdSet recorded_thresholds(const SessionLog& log) {
  const auto done = log.events_of("done");
  if (done.empty() || !done.back()->data.contains("thresholds")) {
    throw Error("teach-incomplete", "log has no recorded thresholds");
  }
  return {log.header.value("motion", std::string()),
          done.back()->data["thresholds"].get<std::vector<double>>()};
}

ThresholdSet replay_teach_log(const SessionLog& log, const RuntimeConfig& config,
                              const PlantConfig& plant_config) {
  const Json& h = log.header;
  if (h.value("mode", std::string()) != "teach") {
    throw Error("log-not-replayable", "not a teach log");
  }
  if (!h.value("fresh", false) || h.value("start", std::int64_t{-1}) != 0) {
    throw Error("log-not-replayable", "session did not start from a reset");
  }
  if (h.value("config_hash", std::string()) != plant_config_hash(plant_config)) {
    throw Error("config-mismatch");
  }
  const ParseResult parsed = parse_motion(h.at("motion_text").get<std::string>());
  if (!parsed.ok()) throw Error("motion-invalid", parsed.diagnostics.front().message);

  Runtime rt(config, plant_config, h.at("seed").get<std::uint64_t>());
  rt.set_balancer(h.value("balancer", true));
  rt.load_motion(*parsed.spec);
  rt.teach_start();
  for (const LogEvent& e : log.events) {
    if (e.kind != "slider" && e.kind != "advance" && e.kind != "balancer") continue;
    while (rt.tick_count() < e.tick) rt.tick();
    if (e.kind == "slider") {
      rt.set_command(e.data.at("v").get<double>());
    } else if (e.kind == "advance") {
      rt.advance();
    } else {
      rt.set_balancer(e.data.at("on").get<bool>());
    }
  }
  auto th = rt.thresholds_for(parsed.spec->name);
  if (!th || rt.mode() == RuntimeMode::kTeach) throw Error("teach-incomplete");
  return *th;
}

}  // namespace seatwalk
