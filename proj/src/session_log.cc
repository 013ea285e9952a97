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

#include "seatwalk/session_log.h"

#include <sstream>

#include "seatwalk/error.h"
#include "seatwalk/kv_config.h"
#include "seatwalk/motion_dsl.h"

namespace seatwalk {

void SessionLog::append(std::int64_t tick, std::string kind, Json data) {
  if (!events.empty() && tick < events.back().tick) {
    throw Error("log-order", "tick " + std::to_string(tick) + " after " +
                                 std::to_string(events.back().tick));
  }
  events.push_back({tick, std::move(kind), std::move(data)});
}

std::vector<const LogEvent*> SessionLog::events_of(std::string_view kind) const {
  std::vector<const LogEvent*> out;
  for (const LogEvent& e : events) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

std::string serialize_log(const SessionLog& log) {
  std::string out;
  Json header = log.header;
  header["kind"] = "header";
  header["version"] = kLogVersion;
  out += header.dump();
  out += '\n';
  for (const LogEvent& e : log.events) {
    Json line = Json::object();
    line["tick"] = e.tick;
    line["kind"] = e.kind;
    line["data"] = e.data;
    out += line.dump();
    out += '\n';
  }
  return out;
}

SessionLog parse_log(std::string_view text) {
  if (text.empty()) throw Error("log-truncated", "empty file");
  if (text.back() != '\n') throw Error("log-truncated", "last line incomplete");
  SessionLog log;
  bool have_header = false;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception&) {
      throw Error("log-truncated", "line " + std::to_string(line_no) + " is not JSON");
    }
    if (!j.is_object() || !j.contains("kind")) {
      throw Error("log-format", "line " + std::to_string(line_no));
    }
    if (!have_header) {
      if (j["kind"] != "header") throw Error("log-format", "missing header");
      if (!j.contains("version") || j["version"] != kLogVersion) {
        throw Error("log-version", j.contains("version") ? j["version"].dump() : "none");
      }
      j.erase("kind");
      j.erase("version");
      log.header = std::move(j);
      have_header = true;
      continue;
    }
    if (j["kind"] == "header") throw Error("log-format", "second header");
    try {
      log.append(j.at("tick").get<std::int64_t>(), j.at("kind").get<std::string>(),
                 j.value("data", Json::object()));
    } catch (const Json::exception& e) {
      throw Error("log-format", "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

void save_log(const SessionLog& log, const std::string& path) {
  write_text_file(path, serialize_log(log));
}

SessionLog load_log(const std::string& path) { return parse_log(read_text_file(path)); }

Json frame_to_json(const SensorFrame& frame, int state_index,
                   std::optional<double> command) {
  Json j = Json::object();
  j["state_i"] = state_index;
  j["u"] = command ? Json(*command) : Json(nullptr);
  j["F_lfoot"] = frame.left_foot;
  j["F_rfoot"] = frame.right_foot;
  j["F_foot"] = frame.foot_total;
  j["F_lhip"] = frame.left_hip;
  j["F_rhip"] = frame.right_hip;
  j["pose"] = {frame.pose.x, frame.pose.y, frame.pose.yaw_deg};
  Json cmd = Json::array();
  for (double v : frame.commanded.values()) cmd.push_back(v);
  j["cmd"] = std::move(cmd);
  return j;
}

SensorFrame frame_from_json(const Json& data) {
  SensorFrame f;
  try {
    f.left_foot = data.at("F_lfoot").get<double>();
    f.right_foot = data.at("F_rfoot").get<double>();
    f.foot_total = data.at("F_foot").get<double>();
    f.left_hip = data.at("F_lhip").get<double>();
    f.right_hip = data.at("F_rhip").get<double>();
    const Json& pose = data.at("pose");
    f.pose = {pose.at(0).get<double>(), pose.at(1).get<double>(),
              pose.at(2).get<double>()};
    const Json& cmd = data.at("cmd");
    if (cmd.size() != kJointCount) throw Error("log-format", "cmd arity");
    for (std::size_t i = 0; i < kJointCount; ++i) {
      f.commanded[kAllJoints[i]] = cmd[i].get<double>();
    }
  } catch (const Json::exception& e) {
    throw Error("log-format", e.what());
  }
  return f;
}

std::string trajectory_csv(const SessionLog& log) {
  std::ostringstream out;
  out << "tick,x,y,yaw,F_lfoot,F_rfoot,F_lhip,F_rhip,state_i,u\n";
  int rows = 0;
  for (const LogEvent& e : log.events) {
    if (e.kind != "frame") continue;
    const Json& d = e.data;
    const Json& pose = d.at("pose");
    out << e.tick << ',' << format_number(pose[0].get<double>()) << ','
        << format_number(pose[1].get<double>()) << ','
        << format_number(pose[2].get<double>()) << ','
        << format_number(d.at("F_lfoot").get<double>()) << ','
        << format_number(d.at("F_rfoot").get<double>()) << ','
        << format_number(d.at("F_lhip").get<double>()) << ','
        << format_number(d.at("F_rhip").get<double>()) << ','
        << d.at("state_i").get<int>() << ',';
    if (!d.at("u").is_null()) out << format_number(d.at("u").get<double>());
    out << '\n';
    ++rows;
  }
  if (rows == 0) throw Error("empty-log", "no frames to export");
  return out.str();
}

void export_trajectory(const SessionLog& log, const std::string& path) {
  write_text_file(path, trajectory_csv(log));
}

Json thresholds_to_json(const ThresholdSet& set) {
  Json j = Json::object();
  j["motion"] = set.motion;
  j["values"] = set.values;
  return j;
}

ThresholdSet thresholds_from_json(const Json& json) {
  ThresholdSet set;
  try {
    set.motion = json.at("motion").get<std::string>();
    set.values = json.at("values").get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw Error("thresholds-format", e.what());
  }
  return set;
}

ThresholdSet load_thresholds(const std::string& path) {
  try {
    return thresholds_from_json(Json::parse(read_text_file(path)));
  } catch (const Json::exception& e) {
    throw Error("thresholds-format", path + ": " + e.what());
  }
}

void save_thresholds(const ThresholdSet& set, const std::string& path) {
  write_text_file(path, thresholds_to_json(set).dump(2) + "\n");
}

}  // namespace seatwalk
