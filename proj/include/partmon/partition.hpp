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

#include <span>
#include <vector>

#include "partmon/data_model.hpp"

namespace partmon {

inline constexpr double kDefaultTau = 0.5;

enum class Matching {
  // A detection is a true positive iff some ground-truth box has IoU > tau.
  // One ground-truth box may validate any number of detections.
  Existential,
  // COCO-style: detections in descending score order each claim the
  // highest-IoU unclaimed ground-truth box with IoU > tau.
  Greedy,
};

// Ground-truth-derived sets for one image.
struct GtPartition {
  std::vector<Detection> tp_gt;
  std::vector<Detection> fp_gt;
  std::vector<GtAnnotation> fn_gt;
  double tau = kDefaultTau;
};

// Splits detections into TP/FP and collects missed ground truth. Inputs may
// be of any single class; the caller decides which class is being scored.
// Output lists keep input order. Throws std::invalid_argument unless
// 0 < tau < 1.
GtPartition partition(std::span<const Detection> dets,
                      std::span<const GtAnnotation> gts, double tau,
                      Matching matching = Matching::Existential);

// Greedy assignment: for every detection, the index into `gts` it claimed,
// or -1. Ties in score are broken by detection index.
std::vector<long> greedy_assignment(std::span<const Detection> dets,
                                    std::span<const GtAnnotation> gts,
                                    double tau);

// Partition of one scene's person detections against its person ground truth.
GtPartition partition_scene(const Scene& scene, double tau,
                            Matching matching = Matching::Existential);

}  // namespace partmon
