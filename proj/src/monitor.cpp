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
#include "partmon/monitor.hpp"

#include <algorithm>

#include "partmon/error.hpp"
#include "partmon/geometry.hpp"

namespace partmon {

namespace {

void check_inputs(std::span<const Detection> parts, double alpha_fp,
                  double alpha_fn) {
  check_alpha(alpha_fp, "alpha_fp");
  check_alpha(alpha_fn, "alpha_fn");
  for (const auto& p : parts) {
    if (!(area(p.box) > 0.0)) {
      throw GeometryError("degenerate part box (detection " +
                          std::to_string(p.index) + ")");
    }
  }
}

bool person_has_part(const Detection& person, std::span<const Detection> parts,
                     double alpha) {
  return std::any_of(parts.begin(), parts.end(), [&](const Detection& part) {
    return part_overlap_at_least(person.box, part.box, alpha);
  });
}

bool part_has_person(const Detection& part, std::span<const Detection> persons,
                     double alpha) {
  return std::any_of(persons.begin(), persons.end(), [&](const Detection& person) {
    return part_overlap_at_least(person.box, part.box, alpha);
  });
}

}  // namespace

AlertPair per_image_rule(std::span<const Detection> persons,
                         std::span<const Detection> parts, double alpha_fp,
                         double alpha_fn) {
  check_inputs(parts, alpha_fp, alpha_fn);
  AlertPair out;
  // exists person: forall part: overlap < alpha_fp * A_part
  out.alert_fp = std::any_of(persons.begin(), persons.end(), [&](const Detection& p) {
    return !person_has_part(p, parts, alpha_fp);
  });
  // exists part: forall person: overlap < alpha_fn * A_part
  out.alert_fn = std::any_of(parts.begin(), parts.end(), [&](const Detection& q) {
    return !part_has_person(q, persons, alpha_fn);
  });
  return out;
}

MonitorVerdict per_object_rule(std::span<const Detection> persons,
                               std::span<const Detection> parts,
                               double alpha_fp, double alpha_fn) {
  check_inputs(parts, alpha_fp, alpha_fn);
  MonitorVerdict v;
  v.alpha_fp = alpha_fp;
  v.alpha_fn = alpha_fn;
  for (const auto& p : persons) {
    (person_has_part(p, parts, alpha_fp) ? v.tp_mon : v.fp_mon).push_back(p);
  }
  for (const auto& q : parts) {
    if (!part_has_person(q, persons, alpha_fn)) v.fn_mon.push_back(q);
  }
  return v;
}

}  // namespace partmon
