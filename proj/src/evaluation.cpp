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
#include "partmon/evaluation.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "partmon/geometry.hpp"

namespace partmon {

BinaryCounts counts_from_table(std::int64_t total_images, std::int64_t positives,
                               std::int64_t true_alerts, std::int64_t false_alerts) {
  BinaryCounts c;
  c.tp = true_alerts;
  c.fp = false_alerts;
  c.fn = positives - true_alerts;
  c.tn = total_images - positives - false_alerts;
  if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0) {
    throw std::invalid_argument("inconsistent table row");
  }
  return c;
}

BinaryMetrics binary_metrics(const BinaryCounts& c) noexcept {
  const auto tp = static_cast<double>(c.tp);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const auto tn = static_cast<double>(c.tn);
  BinaryMetrics m;
  if (c.tp + c.fp > 0) m.precision = tp / (tp + fp);
  if (c.tp + c.fn > 0) m.recall = tp / (tp + fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom > 0.0) m.mcc = (tp * tn - fp * fn) / std::sqrt(denom);
  return m;
}

double f1_score(double precision, double recall) noexcept {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

void tally(BinaryCounts& c, bool alert, bool label) {
  if (alert && label) ++c.tp;
  else if (alert) ++c.fp;
  else if (label) ++c.fn;
  else ++c.tn;
}

}  // namespace

AlertCounts per_image_counts(std::span<const Scene> scenes,
                             std::span<const GtPartition> partitions,
                             std::span<const AlertPair> alerts) {
  if (scenes.size() != partitions.size() || scenes.size() != alerts.size()) {
    throw std::invalid_argument("mismatched scene lists");
  }
  AlertCounts out;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    tally(out.fp_alert, alerts[i].alert_fp, !partitions[i].fp_gt.empty());
    tally(out.fn_alert, alerts[i].alert_fn, !partitions[i].fn_gt.empty());
  }
  return out;
}

ObjectConfusion& ObjectConfusion::operator+=(const ObjectConfusion& o) noexcept {
  tp_gt_tp_mon += o.tp_gt_tp_mon;
  tp_gt_fp_mon += o.tp_gt_fp_mon;
  fp_gt_tp_mon += o.fp_gt_tp_mon;
  fp_gt_fp_mon += o.fp_gt_fp_mon;
  fn_gt_fn_mon += o.fn_gt_fn_mon;
  tn_gt_fn_mon += o.tn_gt_fn_mon;
  return *this;
}

namespace {

std::unordered_set<std::size_t> ids_of(std::span<const Detection> dets) {
  std::unordered_set<std::size_t> s;
  for (const auto& d : dets) s.insert(d.index);
  return s;
}

std::int64_t count_in(std::span<const Detection> dets,
                      const std::unordered_set<std::size_t>& ids) {
  std::int64_t n = 0;
  for (const auto& d : dets) n += ids.contains(d.index) ? 1 : 0;
  return n;
}

}  // namespace

ObjectConfusion object_confusion(const Scene& scene, const GtPartition& partition,
                                 const MonitorVerdict& verdict, double alpha_fn,
                                 GhostReference ghost) {
  const auto tp_mon = ids_of(verdict.tp_mon);
  const auto fp_mon = ids_of(verdict.fp_mon);

  ObjectConfusion c;
  c.tp_gt_tp_mon = count_in(partition.tp_gt, tp_mon);
  c.tp_gt_fp_mon = count_in(partition.tp_gt, fp_mon);
  c.fp_gt_tp_mon = count_in(partition.fp_gt, tp_mon);
  c.fp_gt_fp_mon = count_in(partition.fp_gt, fp_mon);

  for (const auto& missed : partition.fn_gt) {
    for (const auto& part : verdict.fn_mon) {
      if (part_overlap_at_least(missed.box, part.box, alpha_fn)) {
        ++c.fn_gt_fn_mon;
        break;
      }
    }
  }

  for (const auto& part : verdict.fn_mon) {
    bool inside_any = false;
    for (const auto& ann : scene.gt) {
      if (ghost == GhostReference::PersonsOnly && ann.cls != ClassId::Person) continue;
      if (part_overlap_at_least(ann.box, part.box, alpha_fn)) {
        inside_any = true;
        break;
      }
    }
    if (!inside_any) ++c.tn_gt_fn_mon;
  }
  return c;
}

ObjectConfusion object_confusion(std::span<const Scene> scenes,
                                 std::span<const GtPartition> partitions,
                                 std::span<const MonitorVerdict> verdicts,
                                 double alpha_fn, GhostReference ghost) {
  if (scenes.size() != partitions.size() || scenes.size() != verdicts.size()) {
    throw std::invalid_argument("mismatched scene lists");
  }
  ObjectConfusion total;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    total += object_confusion(scenes[i], partitions[i], verdicts[i], alpha_fn, ghost);
  }
  return total;
}

Balances balances(const ObjectConfusion& c) noexcept {
  return {c.fp_gt_fp_mon - c.tp_gt_fp_mon, c.fn_gt_fn_mon - c.tn_gt_fn_mon};
}

}  // namespace partmon
