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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partmon/geometry.hpp"

namespace partmon {

using ImageId = std::int64_t;
using CategoryId = std::int64_t;

// One holistic class plus eight body-part classes. Left and right limbs
// share a class.
enum class ClassId : std::uint8_t {
  Person,
  Torso,
  Hand,
  Foot,
  UpperLeg,
  LowerLeg,
  UpperArm,
  LowerArm,
  Head,
};

inline constexpr std::array<ClassId, 9> kAllClasses = {
    ClassId::Person,   ClassId::Torso,    ClassId::Hand,
    ClassId::Foot,     ClassId::UpperLeg, ClassId::LowerLeg,
    ClassId::UpperArm, ClassId::LowerArm, ClassId::Head,
};

constexpr bool is_part(ClassId c) noexcept { return c != ClassId::Person; }

std::string_view class_name(ClassId c) noexcept;

// Accepts the canonical names ("UpperLeg") as well as case and separator
// variants ("upper_leg", "Upper Leg").
std::optional<ClassId> parse_class_name(std::string_view name);

struct Detection {
  // Position of the entry in its source file. Identity of a detection across
  // the ground-truth and monitor sets is this index, never the box.
  std::size_t index = 0;
  ImageId image_id = 0;
  CategoryId category_id = 0;
  ClassId cls = ClassId::Person;
  Box box;
  double score = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct GtAnnotation {
  std::int64_t id = 0;
  ImageId image_id = 0;
  CategoryId category_id = 0;
  ClassId cls = ClassId::Person;
  Box box;

  friend bool operator==(const GtAnnotation&, const GtAnnotation&) = default;
};

struct ImageInfo {
  ImageId id = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::string file_name;

  friend bool operator==(const ImageInfo&, const ImageInfo&) = default;
};

struct Category {
  CategoryId id = 0;
  std::string name;

  friend bool operator==(const Category&, const Category&) = default;
};

struct GroundTruth {
  std::vector<ImageInfo> images;
  std::vector<GtAnnotation> annotations;
  std::vector<Category> categories;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

// Source category id -> ClassId. A category mapped to nothing is ignored
// on ingestion; a category absent from the map is a taxonomy error.
class CategoryMap {
 public:
  CategoryMap() = default;

  void set(CategoryId source, std::optional<ClassId> target);

  // Throws TaxonomyError if `source` has no entry.
  std::optional<ClassId> resolve(CategoryId source) const;

  const std::map<CategoryId, std::optional<ClassId>>& entries() const {
    return entries_;
  }

  // Identity-style map over the nine classes using ids 1..9 in kAllClasses
  // order. This is the layout the synthetic generator writes.
  static CategoryMap canonical();

 private:
  std::map<CategoryId, std::optional<ClassId>> entries_;
};

// All detections and annotations of one image.
struct Scene {
  ImageId image_id = 0;
  std::vector<Detection> persons;
  std::vector<Detection> parts;
  std::vector<GtAnnotation> gt;

  std::vector<GtAnnotation> gt_persons() const;
  std::vector<GtAnnotation> gt_parts() const;
};

enum class FilterMode {
  // Keep images that contain at least one person and no person below the
  // minimum area.
  RequireAllAbove,
  // Keep images that contain no person below the minimum area. Images
  // without persons survive.
  DropIfAnyBelow,
};

inline constexpr double kDefaultMinPersonArea = 2247.0;

std::set<ImageId> filter_images_by_min_person_area(const GroundTruth& gt,
                                                   double min_area,
                                                   FilterMode mode);

struct OrphanWarning {
  std::string stream;
  ImageId image_id = 0;
  std::size_t count = 0;
};

struct GroupOptions {
  // When set, only these image ids produce scenes. Detections on known but
  // excluded images are dropped without warning.
  const std::set<ImageId>* retained = nullptr;
  // Orphan detections raise ValidationError instead of a warning.
  bool strict = false;
};

struct SceneSet {
  std::vector<Scene> scenes;  // sorted by image id
  std::vector<OrphanWarning> orphans;
  std::size_t filtered_detections = 0;
};

// One scene per ground-truth image. `persons` must hold only Person
// detections and `parts` only part detections (std::invalid_argument
// otherwise).
SceneSet group_into_scenes(const GroundTruth& gt,
                           std::span<const Detection> persons,
                           std::span<const Detection> parts,
                           const GroupOptions& options = {});

// Runtime grouping without ground truth: one scene per image id seen in
// either detection stream.
std::vector<Scene> group_detections(std::span<const Detection> persons,
                                    std::span<const Detection> parts);

std::vector<Detection> select_persons(std::span<const Detection> dets);
std::vector<Detection> select_parts(std::span<const Detection> dets);

}  // namespace partmon
