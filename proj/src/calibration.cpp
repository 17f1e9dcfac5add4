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
#include "partmon/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "partmon/coco_io.hpp"
#include "partmon/error.hpp"
#include "partmon/evaluation.hpp"
#include "partmon/geometry.hpp"
#include "partmon/monitor.hpp"
#include "partmon/parallel.hpp"

namespace partmon {

using nlohmann::json;

namespace {

// Largest threshold we ever emit: the "keep nothing" candidate above a
// score of exactly 1.
const double kMaxThreshold = std::nextafter(1.0, 2.0);

double ratio_field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) {
    throw ParseError(std::string("operating point: missing number \"") + key + "\"");
  }
  return it->get<double>();
}

}  // namespace

std::string operating_point_to_json(const OperatingPoint& op) {
  json conf = json::object();
  for (const auto& [cls, t] : op.conf) conf[std::string(class_name(cls))] = t;
  json doc = {{"conf", conf},
              {"alpha_fp", op.alpha_fp},
              {"alpha_fn", op.alpha_fn},
              {"tau", op.tau}};
  return doc.dump(2) + "\n";
}

OperatingPoint parse_operating_point(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("operating point: parse error at byte " + std::to_string(e.byte) +
                         ": " + e.what(),
                     e.byte);
  }
  if (!doc.is_object()) throw ParseError("operating point: expected an object");

  OperatingPoint op;
  op.alpha_fp = ratio_field(doc, "alpha_fp");
  op.alpha_fn = ratio_field(doc, "alpha_fn");
  op.tau = ratio_field(doc, "tau");
  for (auto [name, v] : {std::pair{"alpha_fp", op.alpha_fp},
                         std::pair{"alpha_fn", op.alpha_fn}, std::pair{"tau", op.tau}}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw ValidationError(std::string("operating point: ") + name +
                            " must lie in (0, 1)");
    }
  }
  auto conf = doc.find("conf");
  if (conf == doc.end() || !conf->is_object()) {
    throw ParseError("operating point: missing object \"conf\"");
  }
  for (const auto& [name, v] : conf->items()) {
    auto cls = parse_class_name(name);
    if (!cls) throw TaxonomyError("operating point: unknown class \"" + name + "\"");
    if (!v.is_number()) throw ParseError("operating point: conf." + name + " is not a number");
    const double t = v.get<double>();
    if (!(t >= 0.0 && t <= kMaxThreshold)) {
      throw ValidationError("operating point: conf." + name + " outside [0, 1]");
    }
    op.conf[*cls] = t;
  }
  return op;
}

OperatingPoint load_operating_point(const std::filesystem::path& path) {
  try {
    return parse_operating_point(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

std::vector<Detection> apply_thresholds(std::span<const Detection> dets,
                                        const OperatingPoint& op, bool strict) {
  std::vector<Detection> out;
  for (const auto& d : dets) {
    auto it = op.conf.find(d.cls);
    if (it == op.conf.end()) {
      throw ValidationError("operating point has no confidence threshold for class " +
                            std::string(class_name(d.cls)));
    }
    if (passes_threshold(d.score, it->second, strict)) out.push_back(d);
  }
  return out;
}

Scene apply_thresholds(const Scene& scene, const OperatingPoint& op, bool strict) {
  Scene s;
  s.image_id = scene.image_id;
  s.persons = apply_thresholds(scene.persons, op, strict);
  s.parts = apply_thresholds(scene.parts, op, strict);
  s.gt = scene.gt;
  return s;
}

std::vector<double> confidence_candidates(std::span<const Detection> dets) {
  std::set<double, std::greater<>> scores;
  for (const auto& d : dets) scores.insert(d.score);
  std::vector<double> out;
  if (!scores.empty()) {
    out.push_back(std::nextafter(*scores.begin(), std::numeric_limits<double>::infinity()));
  }
  out.insert(out.end(), scores.begin(), scores.end());
  if (out.empty() || out.back() != 0.0) out.push_back(0.0);
  return out;
}

ThresholdChoice select_confidence_threshold(std::span<const Detection> dets,
                                            std::span<const GtAnnotation> gts,
                                            double tau,
                                            const ConfidenceOptions& options) {
  if (gts.empty()) {
    throw CalibrationError("F1 undefined: no ground-truth instances");
  }
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");

  // matched[i]: ground-truth indices (into gts) validated by dets[i].
  std::vector<std::vector<std::size_t>> matched(dets.size());
  std::map<ImageId, std::vector<std::size_t>> dets_by_image, gts_by_image;
  for (std::size_t i = 0; i < dets.size(); ++i) dets_by_image[dets[i].image_id].push_back(i);
  for (std::size_t g = 0; g < gts.size(); ++g) gts_by_image[gts[g].image_id].push_back(g);

  for (const auto& [image, di] : dets_by_image) {
    auto git = gts_by_image.find(image);
    if (git == gts_by_image.end()) continue;
    const auto& gi = git->second;
    if (options.matching == Matching::Existential) {
      for (std::size_t i : di) {
        for (std::size_t g : gi) {
          if (iou(dets[i].box, gts[g].box) > tau) matched[i].push_back(g);
        }
      }
    } else {
      std::vector<Detection> local;
      std::vector<GtAnnotation> local_gt;
      for (std::size_t i : di) local.push_back(dets[i]);
      for (std::size_t g : gi) local_gt.push_back(gts[g]);
      const auto claim = greedy_assignment(local, local_gt, tau);
      for (std::size_t k = 0; k < di.size(); ++k) {
        if (claim[k] >= 0) matched[di[k]].push_back(gi[static_cast<std::size_t>(claim[k])]);
      }
    }
  }

  // Greedy claims only depend on higher-ranked detections, so the kept set
  // at every threshold is a prefix of this order in both matching modes.
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
    return dets[a].index < dets[b].index;
  });

  std::vector<std::size_t> cover(gts.size(), 0);
  std::size_t kept = 0, tp = 0, covered = 0, next = 0;
  const auto total_gt = static_cast<double>(gts.size());

  ThresholdChoice best;
  bool have_best = false;
  for (double t : confidence_candidates(dets)) {
    while (next < order.size() &&
           passes_threshold(dets[order[next]].score, t, options.strict)) {
      const std::size_t i = order[next++];
      ++kept;
      if (!matched[i].empty()) ++tp;
      for (std::size_t g : matched[i]) {
        if (cover[g]++ == 0) ++covered;
      }
    }
    ThresholdChoice c;
    c.threshold = t;
    c.precision = kept ? static_cast<double>(tp) / static_cast<double>(kept) : 0.0;
    c.recall = static_cast<double>(covered) / total_gt;
    c.f1 = f1_score(c.precision, c.recall);
    if (!have_best || c.f1 > best.f1) {
      best = c;
      have_best = true;
    }
  }
  return best;
}

std::vector<double> alpha_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) {
    throw std::invalid_argument("grid step must lie in (0, 1)");
  }
  std::vector<double> grid;
  for (int k = 1;; ++k) {
    const double v = k * step;
    // Guard against k*step landing a rounding error below 1.
    if (v >= 1.0 - 1e-9) break;
    grid.push_back(v);
  }
  return grid;
}

AlphaChoice select_alphas(std::span<const Scene> scenes,
                          std::span<const GtPartition> partitions,
                          double grid_step, unsigned threads) {
  if (scenes.empty()) throw CalibrationError("cannot select alphas on an empty scene list");
  if (scenes.size() != partitions.size()) {
    throw std::invalid_argument("mismatched scene lists");
  }
  const auto grid = alpha_grid(grid_step);
  std::vector<AlertCounts> counts(grid.size());

  parallel_for(grid.size(), threads, [&](std::size_t k) {
    std::vector<AlertPair> alerts;
    alerts.reserve(scenes.size());
    for (const auto& s : scenes) alerts.push_back(per_image_rule(s, grid[k], grid[k]));
    counts[k] = per_image_counts(scenes, partitions, alerts);
  });

  AlphaChoice best;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double mfp = binary_metrics(counts[k].fp_alert).mcc;
    const double mfn = binary_metrics(counts[k].fn_alert).mcc;
    if (k == 0 || mfp > best.mcc_fp) {
      best.alpha_fp = grid[k];
      best.mcc_fp = mfp;
    }
    if (k == 0 || mfn > best.mcc_fn) {
      best.alpha_fn = grid[k];
      best.mcc_fn = mfn;
    }
  }
  return best;
}

CalibrationResult calibrate(std::span<const Scene> scenes,
                            const CalibrationOptions& options,
                            std::optional<std::span<const GtAnnotation>> part_gt) {
  if (scenes.empty()) throw CalibrationError("calibration needs at least one scene");

  std::map<ClassId, std::vector<Detection>> dets_by_class;
  std::map<ClassId, std::vector<GtAnnotation>> gts_by_class;
  std::set<ImageId> scene_ids;
  for (const auto& s : scenes) {
    scene_ids.insert(s.image_id);
    for (const auto& d : s.persons) dets_by_class[d.cls].push_back(d);
    for (const auto& d : s.parts) dets_by_class[d.cls].push_back(d);
    for (const auto& a : s.gt) {
      if (a.cls == ClassId::Person || !part_gt) gts_by_class[a.cls].push_back(a);
    }
  }
  if (part_gt) {
    for (const auto& a : *part_gt) {
      if (is_part(a.cls) && scene_ids.contains(a.image_id)) gts_by_class[a.cls].push_back(a);
    }
  }

  CalibrationResult result;
  result.op.tau = options.tau;
  const ConfidenceOptions conf_opts{options.matching, options.strict_conf};
  for (const auto& [cls, dets] : dets_by_class) {
    const auto& gts = gts_by_class[cls];
    if (gts.empty()) {
      throw CalibrationError("F1 undefined for class " + std::string(class_name(cls)) +
                             ": no ground-truth instances");
    }
    const auto choice = select_confidence_threshold(dets, gts, options.tau, conf_opts);
    result.thresholds[cls] = choice;
    result.op.conf[cls] = choice.threshold;
  }

  std::vector<Scene> filtered(scenes.size());
  std::vector<GtPartition> partitions(scenes.size());
  parallel_for(scenes.size(), options.threads, [&](std::size_t i) {
    filtered[i] = apply_thresholds(scenes[i], result.op, options.strict_conf);
    partitions[i] = partition_scene(filtered[i], options.tau, options.matching);
  });

  result.alphas = select_alphas(filtered, partitions, options.grid_step, options.threads);
  result.op.alpha_fp = result.alphas.alpha_fp;
  result.op.alpha_fn = result.alphas.alpha_fn;
  return result;
}

}  // namespace partmon
