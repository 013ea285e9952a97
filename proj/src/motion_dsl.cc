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

#include "seatwalk/motion_dsl.h"

#include <charconv>
#include <cmath>
#include <sstream>

namespace seatwalk {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits on whitespace; ':' ';' and the comparison operators stand alone.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == ':' || c == ';') {
      tokens.push_back({line.substr(i, 1), static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    if ((c == '<' || c == '>') && i + 1 < line.size() && line[i + 1] == '=') {
      tokens.push_back({line.substr(i, 2), static_cast<int>(i) + 1});
      i += 2;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != '#' &&
           line[i] != ':' && line[i] != ';' &&
           !((line[i] == '<' || line[i] == '>') && i + 1 < line.size() &&
             line[i + 1] == '=')) {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '-') return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      last_line_ = line_no;
      last_line_len_ = static_cast<int>(end - pos);
      parse_line(line_no, text_.substr(pos, end - pos));
      if (end == text_.size()) break;
      pos = end + 1;
    }
    finish();
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.spec = std::move(spec_);
    return result;
  }

 private:
  void error(int line, int column, std::string message) {
    diags_.push_back({line, column, std::move(message)});
  }

  void parse_line(int line, std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) return;
    const Token& head = tokens.front();
    if (head.text == "motion") {
      parse_header(line, tokens, static_cast<int>(text.size()));
    } else if (head.text == "init") {
      parse_init(line, tokens);
    } else if (head.text == "state") {
      parse_state(line, tokens, static_cast<int>(text.size()));
    } else {
      error(line, head.column,
            "expected 'motion', 'init' or 'state', found '" +
                std::string(head.text) + "'");
    }
  }

  void parse_header(int line, const std::vector<Token>& t, int len) {
    if (have_header_) {
      error(line, t[0].column, "duplicate motion header");
      return;
    }
    have_header_ = true;
    header_line_ = line;
    if (t.size() < 2) {
      error(line, len + 1, "expected motion name");
      return;
    }
    if (!is_identifier(t[1].text)) {
      error(line, t[1].column, "invalid motion name '" + std::string(t[1].text) + "'");
    }
    spec_.name = std::string(t[1].text);
    if (t.size() >= 3) {
      if (t[2].text == "loop") {
        spec_.loopable = true;
      } else {
        error(line, t[2].column, "expected 'loop' or end of line");
      }
    }
    if (t.size() > 3) error(line, t[3].column, "unexpected trailing text");
  }

  void parse_init(int line, const std::vector<Token>& t) {
    if (!have_header_) {
      error(line, t[0].column, "init before motion header");
      return;
    }
    if (have_init_) {
      error(line, t[0].column, "duplicate init line");
      return;
    }
    if (!spec_.states.empty()) {
      error(line, t[0].column, "init must precede the states");
    }
    have_init_ = true;
    for (std::size_t k = 1; k < t.size(); ++k) {
      const std::string_view item = t[k].text;
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        error(line, t[k].column, "expected <joint>=<deg>");
        continue;
      }
      auto joint = parse_joint(item.substr(0, eq));
      if (!joint) {
        error(line, t[k].column, "unknown joint '" + std::string(item.substr(0, eq)) + "'");
        continue;
      }
      const int value_col = t[k].column + static_cast<int>(eq) + 1;
      auto deg = parse_number(item.substr(eq + 1));
      if (!deg) {
        error(line, value_col, "expected a number of degrees");
        continue;
      }
      if (std::abs(*deg) > kJointLimitDeg) {
        error(line, value_col, "initial angle outside joint limits");
        continue;
      }
      if (!spec_.initial_posture.emplace(*joint, *deg).second) {
        error(line, t[k].column, "duplicate joint '" + std::string(joint_name(*joint)) + "'");
      }
    }
  }

  // state <n> : control <target> ; cond <sensor> <op> <value|?> ; delta <num>
  void parse_state(int line, const std::vector<Token>& t, int len) {
    if (!have_header_) {
      error(line, t[0].column, "state before motion header");
      return;
    }
    saw_state_line_ = true;
    if (!have_init_ && !reported_missing_init_) {
      reported_missing_init_ = true;
      error(line, t[0].column, "missing init line before first state");
    }
    std::size_t k = 1;
    auto expect = [&](std::string_view word) -> bool {
      if (k < t.size() && t[k].text == word) {
        ++k;
        return true;
      }
      const int col = k < t.size() ? t[k].column : len + 1;
      error(line, col, "expected '" + std::string(word) + "'");
      return false;
    };
    auto next = [&](std::string_view what) -> const Token* {
      if (k < t.size()) return &t[k++];
      error(line, len + 1, "expected " + std::string(what));
      return nullptr;
    };

    StateSpec state;
    const Token* index_tok = next("state index");
    if (!index_tok) return;
    auto index = parse_int(index_tok->text);
    if (!index) {
      error(line, index_tok->column, "expected an integer state index");
      return;
    }
    state.index = *index;
    if (!expect(":") || !expect("control")) return;
    const Token* target_tok = next("control target");
    if (!target_tok) return;
    auto target = ControlTarget::parse(target_tok->text);
    if (!target) {
      error(line, target_tok->column,
            "unknown control target '" + std::string(target_tok->text) + "'");
      return;
    }
    state.control = *target;
    if (!expect(";") || !expect("cond")) return;
    const Token* sensor_tok = next("condition sensor");
    if (!sensor_tok) return;
    auto sensor = SensorKey::parse(sensor_tok->text);
    if (!sensor) {
      error(line, sensor_tok->column,
            "unknown sensor '" + std::string(sensor_tok->text) + "'");
      return;
    }
    state.condition.sensor = *sensor;
    const Token* op_tok = next("'<=' or '>='");
    if (!op_tok) return;
    if (op_tok->text == "<=") {
      state.condition.direction = Comparison::kLessEqual;
    } else if (op_tok->text == ">=") {
      state.condition.direction = Comparison::kGreaterEqual;
    } else {
      error(line, op_tok->column, "expected '<=' or '>='");
      return;
    }
    const Token* thr_tok = next("threshold or '?'");
    if (!thr_tok) return;
    if (thr_tok->text != "?") {
      auto value = parse_number(thr_tok->text);
      if (!value) {
        error(line, thr_tok->column, "expected a number or '?'");
        return;
      }
      state.condition.fixed_threshold = *value;
    }
    if (!expect(";") || !expect("delta")) return;
    const Token* delta_tok = next("delta");
    if (!delta_tok) return;
    auto delta = parse_number(delta_tok->text);
    if (!delta) {
      error(line, delta_tok->column, "expected a number of degrees per tick");
      return;
    }
    state.default_delta = *delta;
    if (k < t.size()) {
      error(line, t[k].column, "unexpected trailing text");
      return;
    }

    // Semantic checks, reported at the offending token.
    const int expected = static_cast<int>(spec_.states.size()) + 1;
    if (state.index != expected) {
      error(line, index_tok->column,
            "non-contiguous state index: expected " + std::to_string(expected) +
                ", found " + std::to_string(state.index));
    }
    if (state.default_delta == 0.0) error(line, delta_tok->column, "zero delta");
    if (sensor->is_joint() && !target->drives(sensor->joint())) {
      error(line, sensor_tok->column,
            "condition sensor " + sensor->name() +
                " is not influenced by control " + target->name());
    }
    spec_.states.push_back(state);
  }

  void finish() {
    if (!have_header_) {
      error(1, 1, "missing motion header");
      return;
    }
    if (!have_init_ && !reported_missing_init_) {
      error(header_line_, 1, "missing init line");
    }
    if (spec_.states.empty() && !saw_state_line_) {
      error(last_line_, last_line_len_ + 1, "motion has no states");
    }
  }

  std::string_view text_;
  MotionSpec spec_;
  std::vector<Diagnostic> diags_;
  bool have_header_ = false;
  bool have_init_ = false;
  bool reported_missing_init_ = false;
  bool saw_state_line_ = false;
  int header_line_ = 1;
  int last_line_ = 1;
  int last_line_len_ = 0;
};

constexpr std::string_view kBuiltinSources[] = {
    R"(motion move_forward loop
init T-p=0 lH-r=0 lH-p=0 lK-p=90 rH-r=0 rH-p=0 rK-p=90
state 1: control T-p ; cond F_foot <= ? ; delta -2
state 2: control Kp-pair ; cond lK-p <= ? ; delta -3
state 3: control T-p ; cond F_foot >= ? ; delta 2
state 4: control Kp-pair ; cond lK-p >= ? ; delta 1
)",
    R"(motion move_backward loop
init T-p=0 lH-r=0 lH-p=0 lK-p=90 rH-r=0 rH-p=0 rK-p=90
state 1: control T-p ; cond F_foot <= ? ; delta -2
state 2: control Kp-pair ; cond lK-p >= ? ; delta 3
state 3: control T-p ; cond F_foot >= ? ; delta 2
state 4: control Kp-pair ; cond lK-p <= ? ; delta -1
)",
    R"(motion rotate_left loop
init T-p=0 lH-r=4 lH-p=0 lK-p=90 rH-r=-4 rH-p=0 rK-p=90
state 1: control lH-p ; cond F_lfoot <= ? ; delta -2
state 2: control Hr-mirror ; cond lH-r >= ? ; delta 2
state 3: control lH-p ; cond F_lfoot >= ? ; delta 2
state 4: control rH-p ; cond F_rfoot <= ? ; delta -2
state 5: control Hr-mirror ; cond lH-r <= ? ; delta -2
state 6: control rH-p ; cond F_rfoot >= ? ; delta 2
)",
    R"(motion rotate_right loop
init T-p=0 lH-r=4 lH-p=0 lK-p=90 rH-r=-4 rH-p=0 rK-p=90
state 1: control rH-p ; cond F_rfoot <= ? ; delta -2
state 2: control Hr-mirror ; cond lH-r >= ? ; delta 2
state 3: control rH-p ; cond F_rfoot >= ? ; delta 2
state 4: control lH-p ; cond F_lfoot <= ? ; delta -2
state 5: control Hr-mirror ; cond lH-r <= ? ; delta -2
state 6: control lH-p ; cond F_lfoot >= ? ; delta 2
)",
};

}  // namespace

ParseResult parse_motion(std::string_view text) { return Parser(text).run(); }

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string print_motion(const MotionSpec& spec) {
  std::ostringstream out;
  out << "motion " << spec.name;
  if (spec.loopable) out << " loop";
  out << "\ninit";
  for (const auto& [joint, deg] : spec.initial_posture) {
    out << ' ' << joint_name(joint) << '=' << format_number(deg);
  }
  out << '\n';
  for (const StateSpec& s : spec.states) {
    out << "state " << s.index << ": control " << s.control.name() << " ; cond "
        << s.condition.sensor.name()
        << (s.condition.direction == Comparison::kLessEqual ? " <= " : " >= ")
        << (s.condition.fixed_threshold ? format_number(*s.condition.fixed_threshold)
                                        : std::string("?"))
        << " ; delta " << format_number(s.default_delta) << '\n';
  }
  return out.str();
}

std::string format_diagnostic(const Diagnostic& d, std::string_view source_name) {
  return std::string(source_name) + ":" + std::to_string(d.line) + ":" +
         std::to_string(d.column) + ": " + d.message;
}

const std::vector<MotionSpec>& builtin_motions() {
  static const std::vector<MotionSpec> motions = [] {
    std::vector<MotionSpec> out;
    for (std::string_view src : kBuiltinSources) out.push_back(*parse_motion(src).spec);
    return out;
  }();
  return motions;
}

std::optional<MotionSpec> builtin_motion(std::string_view name) {
  for (const MotionSpec& m : builtin_motions()) {
    if (m.name == name) return m;
  }
  return std::nullopt;
}

}  // namespace seatwalk
