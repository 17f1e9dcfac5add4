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

// Byte-stable report rendering. Keys are emitted in sorted order and every
// ratio is printed with exactly four decimals (round half to even).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "partmon/evaluation.hpp"

namespace partmon {

enum class ReportFormat { Json, Csv };

struct PerImageRow {
  std::string system;
  std::string alert;  // "FP" or "FN"
  BinaryCounts counts;
  BinaryMetrics metrics;
};

struct PerImageReport {
  std::string manifest;  // file name of the run manifest
  std::int64_t total_images = 0;
  std::vector<PerImageRow> rows;
};

struct PerObjectRow {
  std::string system;
  ObjectConfusion confusion;
  Balances balances;
};

struct PerObjectReport {
  std::string manifest;
  std::vector<PerObjectRow> rows;
};

std::string format_ratio(double value);

// FP-alert and FN-alert rows for one monitored system.
std::vector<PerImageRow> per_image_rows(const std::string& system,
                                        const AlertCounts& counts);

std::string render_report(const PerImageReport& report, ReportFormat format);
std::string render_report(const PerObjectReport& report, ReportFormat format);

void emit_report(const PerImageReport& report, ReportFormat format,
                 const std::filesystem::path& path);
void emit_report(const PerObjectReport& report, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace partmon
