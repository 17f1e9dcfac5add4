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
#include <span>
#include <utility>

#include "partmon/data_model.hpp"
#include "partmon/monitor.hpp"
#include "partmon/partition.hpp"

namespace partmon {

// Image-level tallies of one alert type against its ground-truth label.
struct BinaryCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const noexcept { return tp + fp + fn + tn; }
  BinaryCounts& operator+=(const BinaryCounts& o) noexcept {
    tp += o.tp; fp += o.fp; fn += o.fn; tn += o.tn;
    return *this;
  }
  friend bool operator==(const BinaryCounts&, const BinaryCounts&) = default;
};

// Rebuilds the four cells from a results-table row: number of images
// evaluated, images whose label is positive, and the alert's correct and
// false firings. Throws std::invalid_argument if the numbers are
// inconsistent.
BinaryCounts counts_from_table(std::int64_t total_images, std::int64_t positives,
                               std::int64_t true_alerts, std::int64_t false_alerts);

struct BinaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double mcc = 0.0;
};

// Precision, recall and Matthews correlation. Any metric whose denominator
// vanishes is reported as 0.
BinaryMetrics binary_metrics(const BinaryCounts& c) noexcept;

double f1_score(double precision, double recall) noexcept;

struct AlertCounts {
  BinaryCounts fp_alert;
  BinaryCounts fn_alert;
};

// Image i is FP-positive iff partitions[i] has a ground-truth FP, and
// FN-positive iff it has a missed person. Throws std::invalid_argument on
// length mismatch.
AlertCounts per_image_counts(std::span<const Scene> scenes,
                             std::span<const GtPartition> partitions,
                             std::span<const AlertPair> alerts);

// Six-cell confusion between ground-truth sets (rows) and monitor sets
// (columns).
struct ObjectConfusion {
  std::int64_t tp_gt_tp_mon = 0;  // correctly kept
  std::int64_t tp_gt_fp_mon = 0;  // wrongly discarded
  std::int64_t fp_gt_tp_mon = 0;  // undetected FP
  std::int64_t fp_gt_fp_mon = 0;  // detected FP
  std::int64_t fn_gt_fn_mon = 0;  // detected FN (missed persons)
  std::int64_t tn_gt_fn_mon = 0;  // ghost parts

  ObjectConfusion& operator+=(const ObjectConfusion& o) noexcept;
  friend bool operator==(const ObjectConfusion&, const ObjectConfusion&) = default;
};

// Which annotations a flagged part must miss to count as a ghost.
enum class GhostReference {
  PersonsOnly,
  AllAnnotations,
};

// Cells for one scene. Detection identity is Detection::index. A missed
// person counts as detected iff some flagged part overlaps it by at least
// alpha_fn of the part's area; a flagged part is a ghost iff it overlaps
// every reference annotation by less than that.
ObjectConfusion object_confusion(const Scene& scene, const GtPartition& partition,
                                 const MonitorVerdict& verdict, double alpha_fn,
                                 GhostReference ghost = GhostReference::PersonsOnly);

ObjectConfusion object_confusion(std::span<const Scene> scenes,
                                 std::span<const GtPartition> partitions,
                                 std::span<const MonitorVerdict> verdicts,
                                 double alpha_fn,
                                 GhostReference ghost = GhostReference::PersonsOnly);

struct Balances {
  std::int64_t fp_balance = 0;
  std::int64_t fn_balance = 0;

  friend bool operator==(const Balances&, const Balances&) = default;
};

// Detected errors minus induced harm; positive means the monitor helps.
Balances balances(const ObjectConfusion& c) noexcept;

}  // namespace partmon
