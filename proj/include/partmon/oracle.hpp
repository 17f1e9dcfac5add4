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

// Reference implementations of every decision rule and metric, written as
// literal nested loops over all pairs. Nothing here calls into geometry,
// partition, monitor or evaluation; the point is to disagree loudly when
// those are wrong.

#include <span>
#include <vector>

#include "partmon/data_model.hpp"
#include "partmon/evaluation.hpp"
#include "partmon/monitor.hpp"
#include "partmon/partition.hpp"

namespace partmon::oracle {

double overlap(const Box& a, const Box& b);
double iou(const Box& a, const Box& b);

// Existential matching only.
GtPartition partition(std::span<const Detection> persons,
                      std::span<const GtAnnotation> gt_persons, double tau);

AlertPair per_image(std::span<const Detection> persons,
                    std::span<const Detection> parts, double alpha_fp,
                    double alpha_fn);

MonitorVerdict per_object(std::span<const Detection> persons,
                          std::span<const Detection> parts, double alpha_fp,
                          double alpha_fn);

struct TableOutputs {
  BinaryCounts fp_alert;
  BinaryCounts fn_alert;
  ObjectConfusion confusion;
  Balances balances;
};

// Recount of every per-image and per-object table entry for thresholded
// scenes at one operating point.
TableOutputs metrics(std::span<const Scene> scenes, double tau, double alpha_fp,
                     double alpha_fn,
                     GhostReference ghost = GhostReference::PersonsOnly);

// Precision/recall/F1 of one class at one threshold, recomputed from
// scratch with the reference partition.
struct F1Point {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
F1Point f1_at(std::span<const Detection> dets, std::span<const GtAnnotation> gts,
              double tau, double threshold, bool strict = false);

// Per-image MCC of each alert at alpha (FP alert uses alpha as alpha_fp,
// FN alert as alpha_fn).
struct MccPoint {
  double mcc_fp = 0.0;
  double mcc_fn = 0.0;
};
MccPoint mcc_at(std::span<const Scene> scenes, double tau, double alpha);

}  // namespace partmon::oracle
