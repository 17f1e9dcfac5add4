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
#include "partmon/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "partmon/geometry.hpp"

namespace partmon {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
}

}  // namespace

std::vector<long> greedy_assignment(std::span<const Detection> dets,
                                    std::span<const GtAnnotation> gts,
                                    double tau) {
  check_tau(tau);
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
    return dets[a].index < dets[b].index;
  });

  std::vector<long> claimed_by(dets.size(), -1);
  std::vector<bool> taken(gts.size(), false);
  for (std::size_t di : order) {
    long best = -1;
    double best_iou = tau;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double v = iou(dets[di].box, gts[g].box);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<long>(g);
      }
    }
    if (best >= 0) {
      taken[static_cast<std::size_t>(best)] = true;
      claimed_by[di] = best;
    }
  }
  return claimed_by;
}

GtPartition partition(std::span<const Detection> dets,
                      std::span<const GtAnnotation> gts, double tau,
                      Matching matching) {
  check_tau(tau);
  GtPartition out;
  out.tau = tau;
  std::vector<bool> gt_hit(gts.size(), false);

  if (matching == Matching::Existential) {
    for (const auto& d : dets) {
      bool matched = false;
      for (std::size_t g = 0; g < gts.size(); ++g) {
        if (iou(d.box, gts[g].box) > tau) {
          matched = true;
          gt_hit[g] = true;
        }
      }
      (matched ? out.tp_gt : out.fp_gt).push_back(d);
    }
  } else {
    const auto claimed = greedy_assignment(dets, gts, tau);
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (claimed[i] >= 0) {
        gt_hit[static_cast<std::size_t>(claimed[i])] = true;
        out.tp_gt.push_back(dets[i]);
      } else {
        out.fp_gt.push_back(dets[i]);
      }
    }
  }

  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!gt_hit[g]) out.fn_gt.push_back(gts[g]);
  }
  return out;
}

GtPartition partition_scene(const Scene& scene, double tau, Matching matching) {
  const auto persons_gt = scene.gt_persons();
  return partition(scene.persons, persons_gt, tau, matching);
}

}  // namespace partmon
