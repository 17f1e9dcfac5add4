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
#include "partmon/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "partmon/error.hpp"

namespace partmon::oracle {

namespace {

double box_area(const Box& b) { return b.w * b.h; }

void require_alpha(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("alpha outside (0, 1)");
}

void require_parts(std::span<const Detection> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(box_area(parts[i].box) > 0.0)) throw GeometryError("degenerate part box");
  }
}

// overlap(person, part) >= alpha * area(part)
bool belongs(const Box& person, const Box& part, double alpha) {
  return overlap(person, part) >= alpha * box_area(part);
}

bool contains_index(std::span<const Detection> set, std::size_t index) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].index == index) return true;
  }
  return false;
}

double mcc(const BinaryCounts& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  const double d = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (d == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(d);
}

void count(BinaryCounts& c, bool predicted, bool actual) {
  if (predicted) {
    if (actual) c.tp += 1; else c.fp += 1;
  } else {
    if (actual) c.fn += 1; else c.tn += 1;
  }
}

}  // namespace

double overlap(const Box& a, const Box& b) {
  const double ax1 = a.x, ay1 = a.y, ax2 = a.x + a.w, ay2 = a.y + a.h;
  const double bx1 = b.x, by1 = b.y, bx2 = b.x + b.w, by2 = b.y + b.h;
  const double left = ax1 > bx1 ? ax1 : bx1;
  const double right = ax2 < bx2 ? ax2 : bx2;
  const double top = ay1 > by1 ? ay1 : by1;
  const double bottom = ay2 < by2 ? ay2 : by2;
  if (right - left <= 0.0) return 0.0;
  if (bottom - top <= 0.0) return 0.0;
  return (right - left) * (bottom - top);
}

double iou(const Box& a, const Box& b) {
  const double i = overlap(a, b);
  const double u = box_area(a) + box_area(b) - i;
  return u > 0.0 ? i / u : 0.0;
}

GtPartition partition(std::span<const Detection> persons,
                      std::span<const GtAnnotation> gt_persons, double tau) {
  GtPartition out;
  out.tau = tau;
  for (std::size_t d = 0; d < persons.size(); ++d) {
    bool exists = false;
    for (std::size_t g = 0; g < gt_persons.size(); ++g) {
      if (oracle::iou(persons[d].box, gt_persons[g].box) > tau) exists = true;
    }
    if (exists) out.tp_gt.push_back(persons[d]);
    else out.fp_gt.push_back(persons[d]);
  }
  for (std::size_t g = 0; g < gt_persons.size(); ++g) {
    bool all_below = true;
    for (std::size_t d = 0; d < persons.size(); ++d) {
      if (!(oracle::iou(persons[d].box, gt_persons[g].box) <= tau)) all_below = false;
    }
    if (all_below) out.fn_gt.push_back(gt_persons[g]);
  }
  return out;
}

AlertPair per_image(std::span<const Detection> persons,
                    std::span<const Detection> parts, double alpha_fp,
                    double alpha_fn) {
  require_alpha(alpha_fp);
  require_alpha(alpha_fn);
  require_parts(parts);
  AlertPair out;
  for (std::size_t p = 0; p < persons.size(); ++p) {
    bool all_below = true;
    for (std::size_t q = 0; q < parts.size(); ++q) {
      if (!(overlap(persons[p].box, parts[q].box) < alpha_fp * box_area(parts[q].box))) {
        all_below = false;
      }
    }
    if (all_below) out.alert_fp = true;
  }
  for (std::size_t q = 0; q < parts.size(); ++q) {
    bool all_below = true;
    for (std::size_t p = 0; p < persons.size(); ++p) {
      if (!(overlap(persons[p].box, parts[q].box) < alpha_fn * box_area(parts[q].box))) {
        all_below = false;
      }
    }
    if (all_below) out.alert_fn = true;
  }
  return out;
}

MonitorVerdict per_object(std::span<const Detection> persons,
                          std::span<const Detection> parts, double alpha_fp,
                          double alpha_fn) {
  require_alpha(alpha_fp);
  require_alpha(alpha_fn);
  require_parts(parts);
  MonitorVerdict v;
  v.alpha_fp = alpha_fp;
  v.alpha_fn = alpha_fn;
  for (std::size_t p = 0; p < persons.size(); ++p) {
    bool exists = false;
    for (std::size_t q = 0; q < parts.size(); ++q) {
      if (belongs(persons[p].box, parts[q].box, alpha_fp)) exists = true;
    }
    if (exists) v.tp_mon.push_back(persons[p]);
    else v.fp_mon.push_back(persons[p]);
  }
  for (std::size_t q = 0; q < parts.size(); ++q) {
    bool all_below = true;
    for (std::size_t p = 0; p < persons.size(); ++p) {
      if (belongs(persons[p].box, parts[q].box, alpha_fn)) all_below = false;
    }
    if (all_below) v.fn_mon.push_back(parts[q]);
  }
  return v;
}

TableOutputs metrics(std::span<const Scene> scenes, double tau, double alpha_fp,
                     double alpha_fn, GhostReference ghost) {
  TableOutputs t;
  for (const Scene& s : scenes) {
    std::vector<GtAnnotation> gt_persons;
    for (const auto& a : s.gt) {
      if (a.cls == ClassId::Person) gt_persons.push_back(a);
    }
    const GtPartition part = oracle::partition(s.persons, gt_persons, tau);
    const AlertPair alert = per_image(s.persons, s.parts, alpha_fp, alpha_fn);
    const MonitorVerdict v = per_object(s.persons, s.parts, alpha_fp, alpha_fn);

    count(t.fp_alert, alert.alert_fp, part.fp_gt.size() >= 1);
    count(t.fn_alert, alert.alert_fn, part.fn_gt.size() >= 1);

    for (const auto& d : part.tp_gt) {
      if (contains_index(v.tp_mon, d.index)) t.confusion.tp_gt_tp_mon += 1;
      if (contains_index(v.fp_mon, d.index)) t.confusion.tp_gt_fp_mon += 1;
    }
    for (const auto& d : part.fp_gt) {
      if (contains_index(v.tp_mon, d.index)) t.confusion.fp_gt_tp_mon += 1;
      if (contains_index(v.fp_mon, d.index)) t.confusion.fp_gt_fp_mon += 1;
    }
    for (const auto& missed : part.fn_gt) {
      bool detected = false;
      for (const auto& q : v.fn_mon) {
        if (belongs(missed.box, q.box, alpha_fn)) detected = true;
      }
      if (detected) t.confusion.fn_gt_fn_mon += 1;
    }
    for (const auto& q : v.fn_mon) {
      bool all_below = true;
      for (const auto& a : s.gt) {
        if (ghost == GhostReference::PersonsOnly && a.cls != ClassId::Person) continue;
        if (belongs(a.box, q.box, alpha_fn)) all_below = false;
      }
      if (all_below) t.confusion.tn_gt_fn_mon += 1;
    }
  }
  t.balances.fp_balance = t.confusion.fp_gt_fp_mon - t.confusion.tp_gt_fp_mon;
  t.balances.fn_balance = t.confusion.fn_gt_fn_mon - t.confusion.tn_gt_fn_mon;
  return t;
}

F1Point f1_at(std::span<const Detection> dets, std::span<const GtAnnotation> gts,
              double tau, double threshold, bool strict) {
  std::int64_t kept = 0, tp = 0, found = 0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const bool keep = strict ? dets[i].score > threshold : dets[i].score >= threshold;
    if (!keep) continue;
    kept += 1;
    bool hit = false;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gts[g].image_id == dets[i].image_id && oracle::iou(dets[i].box, gts[g].box) > tau) {
        hit = true;
      }
    }
    if (hit) tp += 1;
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    bool hit = false;
    for (std::size_t i = 0; i < dets.size(); ++i) {
      const bool keep = strict ? dets[i].score > threshold : dets[i].score >= threshold;
      if (keep && dets[i].image_id == gts[g].image_id &&
          oracle::iou(dets[i].box, gts[g].box) > tau) {
        hit = true;
      }
    }
    if (hit) found += 1;
  }
  F1Point f;
  f.precision = kept == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(kept);
  f.recall = gts.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(gts.size());
  f.f1 = (f.precision + f.recall) == 0.0
             ? 0.0
             : 2.0 * f.precision * f.recall / (f.precision + f.recall);
  return f;
}

MccPoint mcc_at(std::span<const Scene> scenes, double tau, double alpha) {
  BinaryCounts fp_alert, fn_alert;
  for (const Scene& s : scenes) {
    std::vector<GtAnnotation> gt_persons;
    for (const auto& a : s.gt) {
      if (a.cls == ClassId::Person) gt_persons.push_back(a);
    }
    const GtPartition part = oracle::partition(s.persons, gt_persons, tau);
    const AlertPair alert = per_image(s.persons, s.parts, alpha, alpha);
    count(fp_alert, alert.alert_fp, !part.fp_gt.empty());
    count(fn_alert, alert.alert_fn, !part.fn_gt.empty());
  }
  return {mcc(fp_alert), mcc(fn_alert)};
}

}  // namespace partmon::oracle
