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
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partmon/calibration.hpp"

namespace partmon {

std::string_view tool_version() noexcept;

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

struct InputRecord {
  std::string role;
  std::string path;
  std::uint64_t bytes = 0;
  std::string fnv1a64;
};

InputRecord record_input(std::string role, const std::filesystem::path& path);

// Provenance for one CLI run. Written next to every output file as
// "<output>.manifest.json".
struct RunManifest {
  std::string command;
  std::vector<InputRecord> inputs;
  std::optional<OperatingPoint> operating_point;
  std::map<std::string, std::string> settings;
  std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& m);

std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace partmon
