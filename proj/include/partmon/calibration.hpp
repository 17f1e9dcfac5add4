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

// Operating-point selection: per-class confidence thresholds by maximum F1
// and the two monitor overlap thresholds by maximum per-image MCC.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partmon/data_model.hpp"
#include "partmon/partition.hpp"

namespace partmon {

inline constexpr double kDefaultGridStep = 0.05;

struct OperatingPoint {
  std::map<ClassId, double> conf;
  double alpha_fp = 0.5;
  double alpha_fn = 0.5;
  double tau = kDefaultTau;

  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

// {"alpha_fn": .., "alpha_fp": .., "conf": {"Person": ..}, "tau": ..}
std::string operating_point_to_json(const OperatingPoint& op);
OperatingPoint parse_operating_point(std::string_view text);
OperatingPoint load_operating_point(const std::filesystem::path& path);

// Default keeps score >= threshold; strict keeps score > threshold.
inline bool passes_threshold(double score, double threshold, bool strict) noexcept {
  return strict ? score > threshold : score >= threshold;
}

// Drops detections below their class threshold. Throws ValidationError if a
// detection's class has no threshold.
std::vector<Detection> apply_thresholds(std::span<const Detection> dets,
                                        const OperatingPoint& op, bool strict = false);
Scene apply_thresholds(const Scene& scene, const OperatingPoint& op,
                       bool strict = false);

struct ConfidenceOptions {
  Matching matching = Matching::Existential;
  bool strict = false;
};

struct ThresholdChoice {
  double threshold = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Candidate thresholds in descending order: one value just above the best
// score (keeps nothing), every distinct score, and 0.
std::vector<double> confidence_candidates(std::span<const Detection> dets);

// Sweeps the candidates and returns the one with maximum F1; on ties the
// higher threshold wins. Detections and ground truth may span many images
// and are matched per image id. Throws CalibrationError without ground
// truth.
ThresholdChoice select_confidence_threshold(std::span<const Detection> dets,
                                            std::span<const GtAnnotation> gts,
                                            double tau,
                                            const ConfidenceOptions& options = {});

// {step, 2 step, ...} restricted to the open interval (0, 1).
std::vector<double> alpha_grid(double step);

struct AlphaChoice {
  double alpha_fp = 0.0;
  double alpha_fn = 0.0;
  double mcc_fp = 0.0;
  double mcc_fn = 0.0;
};

// Picks alpha_fp maximising FP-alert MCC and alpha_fn maximising FN-alert
// MCC over the grid; ties go to the smaller alpha. The two searches are
// independent since each alert reads only its own alpha.
AlphaChoice select_alphas(std::span<const Scene> scenes,
                          std::span<const GtPartition> partitions,
                          double grid_step, unsigned threads = 1);

struct CalibrationOptions {
  double tau = kDefaultTau;
  double grid_step = kDefaultGridStep;
  Matching matching = Matching::Existential;
  bool strict_conf = false;
  unsigned threads = 1;
};

struct CalibrationResult {
  OperatingPoint op;
  std::map<ClassId, ThresholdChoice> thresholds;
  AlphaChoice alphas;
};

// Full calibration on raw (unthresholded) scenes. Part classes are scored
// against `part_gt` when given, otherwise against the scenes' own part
// annotations.
CalibrationResult calibrate(
    std::span<const Scene> scenes, const CalibrationOptions& options,
    std::optional<std::span<const GtAnnotation>> part_gt = std::nullopt);

}  // namespace partmon
