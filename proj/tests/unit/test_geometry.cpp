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
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "partmon/error.hpp"
#include "partmon/geometry.hpp"
#include "partmon/oracle.hpp"
#include "partmon/synth.hpp"

namespace partmon {
namespace {

TEST(GeometryTest, AreaOfUnitAndEmptyBoxes) {
  EXPECT_EQ(area(Box{0, 0, 1, 1}), 1.0);
  EXPECT_EQ(area(Box{3, 4, 0, 7}), 0.0);
  EXPECT_EQ(area(Box{1.5, 2.5, 2.0, 0.5}), 1.0);
}

TEST(GeometryTest, IntersectionOfNestedBoxes) {
  EXPECT_EQ(intersection_area(Box{0, 0, 10, 10}, Box{2, 2, 3, 4}), 12.0);
}

TEST(GeometryTest, EdgeTouchingBoxesDoNotIntersect) {
  EXPECT_EQ(intersection_area(Box{0, 0, 10, 10}, Box{10, 0, 5, 5}), 0.0);
  EXPECT_EQ(intersection_area(Box{0, 0, 10, 10}, Box{0, 10, 5, 5}), 0.0);
  EXPECT_EQ(iou(Box{0, 0, 10, 10}, Box{10, 10, 5, 5}), 0.0);
}

TEST(GeometryTest, IouOfIdenticalBoxesIsOne) {
  const Box b{7.25, 3.5, 11.0, 4.0};
  EXPECT_EQ(iou(b, b), 1.0);
}

TEST(GeometryTest, IouOfHalfOverlap) {
  // Intersection 50, union 100.
  EXPECT_EQ(iou(Box{0, 0, 10, 10}, Box{0, 0, 10, 5}), 0.5);
  // Intersection 50, union 150.
  EXPECT_DOUBLE_EQ(iou(Box{0, 0, 10, 10}, Box{5, 0, 10, 10}), 1.0 / 3.0);
}

TEST(GeometryTest, IouOfTwoDegenerateBoxesIsZeroNotNan) {
  const double v = iou(Box{1, 1, 0, 0}, Box{1, 1, 0, 0});
  EXPECT_FALSE(std::isnan(v));
  EXPECT_EQ(v, 0.0);
}

TEST(GeometryTest, IouIsSymmetric) {
  synth::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const Box a{rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(0, 30), rng.uniform(0, 30)};
    const Box b{rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(0, 30), rng.uniform(0, 30)};
    EXPECT_EQ(iou(a, b), iou(b, a));
    EXPECT_GE(iou(a, b), 0.0);
    EXPECT_LE(iou(a, b), 1.0);
  }
}

TEST(GeometryTest, AgreesWithOracle) {
  synth::Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const Box a{rng.uniform(-20, 50), rng.uniform(-20, 50), rng.uniform(0, 40), rng.uniform(0, 40)};
    const Box b{rng.uniform(-20, 50), rng.uniform(-20, 50), rng.uniform(0, 40), rng.uniform(0, 40)};
    EXPECT_DOUBLE_EQ(intersection_area(a, b), oracle::overlap(a, b));
    EXPECT_DOUBLE_EQ(iou(a, b), oracle::iou(a, b));
  }
}

TEST(GeometryTest, PartOverlapBoundaryIsInclusive) {
  const Box person{0, 0, 10, 10};
  const Box part{5, 0, 10, 10};  // half inside
  EXPECT_TRUE(part_overlap_at_least(person, part, 0.5));
  EXPECT_FALSE(part_overlap_at_least(person, part, std::nextafter(0.5, 1.0)));
  EXPECT_TRUE(part_overlap_at_least(person, part, 0.25));
}

TEST(GeometryTest, PartFullyInsideSatisfiesEveryAlpha) {
  const Box person{0, 0, 100, 100};
  const Box part{10, 10, 5, 5};
  for (double a = 0.05; a < 1.0; a += 0.05) {
    EXPECT_TRUE(part_overlap_at_least(person, part, a)) << a;
  }
}

TEST(GeometryTest, DisjointPartSatisfiesNoAlpha) {
  EXPECT_FALSE(part_overlap_at_least(Box{0, 0, 10, 10}, Box{20, 20, 5, 5}, 0.01));
}

TEST(GeometryTest, DegeneratePartIsRejected) {
  EXPECT_THROW(part_overlap_at_least(Box{0, 0, 10, 10}, Box{1, 1, 0, 3}, 0.5), GeometryError);
}

TEST(GeometryTest, AlphaOutsideOpenIntervalIsRejected) {
  const Box person{0, 0, 10, 10};
  const Box part{1, 1, 2, 2};
  EXPECT_THROW(part_overlap_at_least(person, part, 0.0), std::invalid_argument);
  EXPECT_THROW(part_overlap_at_least(person, part, 1.0), std::invalid_argument);
  EXPECT_THROW(part_overlap_at_least(person, part, -0.2), std::invalid_argument);
  EXPECT_THROW(part_overlap_at_least(person, part, std::nan("")), std::invalid_argument);
}

}  // namespace
}  // namespace partmon
