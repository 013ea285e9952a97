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

#include <map>
#include <string>
#include <string_view>

namespace seatwalk {

// Flat `key = value` text with `#` comments. Throws Error("config") on a
// malformed line or a repeated key.
std::map<std::string, std::string> parse_key_values(std::string_view text);

double parse_config_double(const std::string& key, const std::string& value);
bool parse_config_bool(const std::string& key, const std::string& value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace seatwalk
