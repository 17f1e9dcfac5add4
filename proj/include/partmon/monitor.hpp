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

// Runtime plausibility monitor. A part "belongs" to a person when their
// overlap is at least alpha times the part's own area. Persons without any
// belonging part are suspected false positives; parts belonging to no
// person are suspected false negatives (a missed person around them).
//
// Inputs are assumed to be confidence-filtered already. Quantifiers over
// empty sets follow ordinary logic: a person in a scene without parts is
// flagged, and a scene without parts never raises the FN alert.

#include <span>
#include <vector>

#include "partmon/data_model.hpp"

namespace partmon {

struct AlertPair {
  bool alert_fp = false;
  bool alert_fn = false;

  friend bool operator==(const AlertPair&, const AlertPair&) = default;
};

struct MonitorVerdict {
  std::vector<Detection> tp_mon;  // persons
  std::vector<Detection> fp_mon;  // persons
  std::vector<Detection> fn_mon;  // parts
  double alpha_fp = 0.0;
  double alpha_fn = 0.0;
};

// Per-image decision: does the scene contain at least one suspected FP
// person, and at least one orphan part?
//
// Throws GeometryError if any part has zero area, std::invalid_argument for
// alphas outside (0, 1).
AlertPair per_image_rule(std::span<const Detection> persons,
                         std::span<const Detection> parts, double alpha_fp,
                         double alpha_fn);

// Per-object decision: classify every person as TP/FP and collect orphan
// parts. Output lists keep input order.
MonitorVerdict per_object_rule(std::span<const Detection> persons,
                               std::span<const Detection> parts,
                               double alpha_fp, double alpha_fn);

inline AlertPair per_image_rule(const Scene& s, double alpha_fp, double alpha_fn) {
  return per_image_rule(s.persons, s.parts, alpha_fp, alpha_fn);
}

inline MonitorVerdict per_object_rule(const Scene& s, double alpha_fp,
                                      double alpha_fn) {
  return per_object_rule(s.persons, s.parts, alpha_fp, alpha_fn);
}

}  // namespace partmon
