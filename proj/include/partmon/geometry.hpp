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

namespace partmon {

// Axis-aligned box in COCO convention: top-left corner plus extent, in
// (possibly sub-pixel) image coordinates. w and h are never negative.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const noexcept { return x + w; }
  double bottom() const noexcept { return y + h; }

  friend bool operator==(const Box&, const Box&) = default;
};

double area(const Box& b) noexcept;

// Area of the overlap rectangle; 0 for disjoint or edge-touching boxes.
double intersection_area(const Box& a, const Box& b) noexcept;

// Intersection over union. Two zero-area boxes give 0, never NaN.
double iou(const Box& a, const Box& b) noexcept;

// True iff intersection_area(person, part) >= alpha * area(part).
//
// Throws GeometryError for a zero-area part and std::invalid_argument for
// alpha outside the open interval (0, 1). The comparison is exact; no
// epsilon is applied.
bool part_overlap_at_least(const Box& person, const Box& part, double alpha);

// Throws std::invalid_argument unless 0 < alpha < 1.
void check_alpha(double alpha, const char* name);

}  // namespace partmon
