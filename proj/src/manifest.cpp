// Copyright 2026 The partmon Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "partmon/manifest.hpp"

#include <cstdio>

#include "json.hpp"
#include "partmon/coco_io.hpp"

#ifndef PARTMON_VERSION
#define PARTMON_VERSION "0.0.0"
#endif

namespace partmon {

std::string_view tool_version() noexcept { return PARTMON_VERSION; }

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InputRecord record_input(std::string role, const std::filesystem::path& path) {
  const std::string content = read_file(path);
  return {std::move(role), path.generic_string(), content.size(), fnv1a64_hex(content)};
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : m.inputs) {
    inputs.push_back(
        {{"role", in.role}, {"path", in.path}, {"bytes", in.bytes}, {"fnv1a64", in.fnv1a64}});
  }
  nlohmann::json doc = {{"command", m.command},
                        {"tool_version", std::string(tool_version())},
                        {"inputs", inputs},
                        {"settings", m.settings},
                        {"outputs", m.outputs}};
  if (m.operating_point) {
    doc["operating_point"] = nlohmann::json::parse(operating_point_to_json(*m.operating_point));
  }
  return doc.dump(2) + "\n";
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

}  // namespace partmon
