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
#include "partmon/data_model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "partmon/error.hpp"

namespace partmon {

namespace {

std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view class_name(ClassId c) noexcept {
  switch (c) {
    case ClassId::Person: return "Person";
    case ClassId::Torso: return "Torso";
    case ClassId::Hand: return "Hand";
    case ClassId::Foot: return "Foot";
    case ClassId::UpperLeg: return "UpperLeg";
    case ClassId::LowerLeg: return "LowerLeg";
    case ClassId::UpperArm: return "UpperArm";
    case ClassId::LowerArm: return "LowerArm";
    case ClassId::Head: return "Head";
  }
  return "?";
}

std::optional<ClassId> parse_class_name(std::string_view name) {
  const std::string key = fold(name);
  for (ClassId c : kAllClasses) {
    if (fold(class_name(c)) == key) return c;
  }
  return std::nullopt;
}

void CategoryMap::set(CategoryId source, std::optional<ClassId> target) {
  entries_[source] = target;
}

std::optional<ClassId> CategoryMap::resolve(CategoryId source) const {
  auto it = entries_.find(source);
  if (it == entries_.end()) {
    throw TaxonomyError("category id " + std::to_string(source) +
                        " is not in the category map");
  }
  return it->second;
}

CategoryMap CategoryMap::canonical() {
  CategoryMap m;
  CategoryId id = 1;
  for (ClassId c : kAllClasses) m.set(id++, c);
  return m;
}

std::vector<GtAnnotation> Scene::gt_persons() const {
  std::vector<GtAnnotation> out;
  for (const auto& a : gt) {
    if (a.cls == ClassId::Person) out.push_back(a);
  }
  return out;
}

std::vector<GtAnnotation> Scene::gt_parts() const {
  std::vector<GtAnnotation> out;
  for (const auto& a : gt) {
    if (is_part(a.cls)) out.push_back(a);
  }
  return out;
}

std::set<ImageId> filter_images_by_min_person_area(const GroundTruth& gt,
                                                   double min_area,
                                                   FilterMode mode) {
  if (min_area < 0.0) throw std::invalid_argument("min_area must be >= 0");
  std::map<ImageId, std::size_t> persons;
  std::set<ImageId> too_small;
  for (const auto& img : gt.images) persons[img.id] = 0;
  for (const auto& a : gt.annotations) {
    if (a.cls != ClassId::Person) continue;
    ++persons[a.image_id];
    if (area(a.box) < min_area) too_small.insert(a.image_id);
  }
  std::set<ImageId> kept;
  for (const auto& [id, n] : persons) {
    if (too_small.contains(id)) continue;
    if (mode == FilterMode::RequireAllAbove && n == 0) continue;
    kept.insert(id);
  }
  return kept;
}

namespace {

void check_roles(std::span<const Detection> persons,
                 std::span<const Detection> parts) {
  for (const auto& d : persons) {
    if (d.cls != ClassId::Person)
      throw std::invalid_argument("person stream holds a part detection");
  }
  for (const auto& d : parts) {
    if (!is_part(d.cls))
      throw std::invalid_argument("part stream holds a person detection");
  }
}

}  // namespace

SceneSet group_into_scenes(const GroundTruth& gt,
                           std::span<const Detection> persons,
                           std::span<const Detection> parts,
                           const GroupOptions& options) {
  check_roles(persons, parts);

  std::map<ImageId, Scene> by_id;
  std::set<ImageId> known;
  for (const auto& img : gt.images) {
    known.insert(img.id);
    if (options.retained && !options.retained->contains(img.id)) continue;
    by_id[img.id].image_id = img.id;
  }
  for (const auto& a : gt.annotations) {
    auto it = by_id.find(a.image_id);
    if (it != by_id.end()) it->second.gt.push_back(a);
  }

  SceneSet out;
  std::map<std::pair<std::string, ImageId>, std::size_t> orphans;
  auto route = [&](std::span<const Detection> dets, const char* stream,
                   std::vector<Detection> Scene::*member) {
    for (const auto& d : dets) {
      auto it = by_id.find(d.image_id);
      if (it != by_id.end()) {
        (it->second.*member).push_back(d);
      } else if (known.contains(d.image_id)) {
        ++out.filtered_detections;
      } else {
        if (options.strict) {
          throw ValidationError(std::string(stream) + " detection " +
                                std::to_string(d.index) +
                                " references unknown image id " +
                                std::to_string(d.image_id));
        }
        ++orphans[{stream, d.image_id}];
      }
    }
  };
  route(persons, "persons", &Scene::persons);
  route(parts, "parts", &Scene::parts);

  out.scenes.reserve(by_id.size());
  for (auto& [id, scene] : by_id) out.scenes.push_back(std::move(scene));
  for (const auto& [key, n] : orphans) {
    out.orphans.push_back({key.first, key.second, n});
  }
  return out;
}

std::vector<Scene> group_detections(std::span<const Detection> persons,
                                    std::span<const Detection> parts) {
  check_roles(persons, parts);
  std::map<ImageId, Scene> by_id;
  for (const auto& d : persons) {
    auto& s = by_id[d.image_id];
    s.image_id = d.image_id;
    s.persons.push_back(d);
  }
  for (const auto& d : parts) {
    auto& s = by_id[d.image_id];
    s.image_id = d.image_id;
    s.parts.push_back(d);
  }
  std::vector<Scene> out;
  out.reserve(by_id.size());
  for (auto& [id, scene] : by_id) out.push_back(std::move(scene));
  return out;
}

std::vector<Detection> select_persons(std::span<const Detection> dets) {
  std::vector<Detection> out;
  std::copy_if(dets.begin(), dets.end(), std::back_inserter(out),
               [](const Detection& d) { return d.cls == ClassId::Person; });
  return out;
}

std::vector<Detection> select_parts(std::span<const Detection> dets) {
  std::vector<Detection> out;
  std::copy_if(dets.begin(), dets.end(), std::back_inserter(out),
               [](const Detection& d) { return is_part(d.cls); });
  return out;
}

}  // namespace partmon
