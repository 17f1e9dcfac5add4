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
#include "partmon/synth.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "partmon/coco_io.hpp"
#include "partmon/geometry.hpp"

namespace partmon::synth {

double Rng::uniform() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<int>(lo + static_cast<std::int64_t>(r % span));
}

void validate(const SynthConfig& c) {
  for (double p : {c.drop_person_prob, c.drop_part_prob, c.ghost_person_prob,
                   c.ghost_part_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("synth probabilities must lie in [0, 1]");
    }
  }
  auto check_range = [](IntRange r, int floor, const char* name) {
    if (r.min < floor || r.max < r.min) {
      throw std::invalid_argument(std::string("invalid range for ") + name);
    }
  };
  check_range(c.persons_per_scene, 0, "persons_per_scene");
  check_range(c.parts_per_person, 0, "parts_per_person");
  check_range(c.person_width, 1, "person_width");
  if (c.parts_per_person.max > 14) {
    throw std::invalid_argument("parts_per_person cannot exceed 14 layout slots");
  }
  if (c.n_scenes < 0) throw std::invalid_argument("n_scenes must be >= 0");
  if (!(c.jitter >= 0.0)) throw std::invalid_argument("jitter must be >= 0");
  if (c.person_width.max > c.image_width || c.image_height < 1) {
    throw std::invalid_argument("person boxes do not fit the image");
  }
}

namespace {

// Fractions (x, y, w, h) of the person box. Head on top, torso in the
// middle band, arms in the flanking 15% columns, legs below the torso.
struct Slot {
  ClassId cls;
  double fx, fy, fw, fh;
};

constexpr std::array<Slot, 14> kLayout = {{
    {ClassId::Head, 0.35, 0.00, 0.30, 0.20},
    {ClassId::Torso, 0.30, 0.20, 0.40, 0.40},
    {ClassId::UpperArm, 0.15, 0.20, 0.15, 0.20},
    {ClassId::UpperArm, 0.70, 0.20, 0.15, 0.20},
    {ClassId::LowerArm, 0.15, 0.40, 0.15, 0.15},
    {ClassId::LowerArm, 0.70, 0.40, 0.15, 0.15},
    {ClassId::Hand, 0.15, 0.55, 0.15, 0.08},
    {ClassId::Hand, 0.70, 0.55, 0.15, 0.08},
    {ClassId::UpperLeg, 0.30, 0.60, 0.18, 0.20},
    {ClassId::UpperLeg, 0.52, 0.60, 0.18, 0.20},
    {ClassId::LowerLeg, 0.30, 0.80, 0.18, 0.15},
    {ClassId::LowerLeg, 0.52, 0.80, 0.18, 0.15},
    {ClassId::Foot, 0.30, 0.95, 0.18, 0.05},
    {ClassId::Foot, 0.52, 0.95, 0.18, 0.05},
}};

// Max IoU between any two ground-truth persons, or between a ghost and a
// ground-truth person. Kept below the default tau so labels stay sound.
constexpr double kSeparationIou = 0.3;
constexpr int kPlacementTries = 50;

CategoryId category_of(ClassId cls) {
  return static_cast<CategoryId>(static_cast<int>(cls) + 1);
}

Box jittered(const Box& b, double j, Rng& rng) {
  if (j <= 0.0) return b;
  Box out{b.x + rng.uniform(-j, j), b.y + rng.uniform(-j, j), b.w + rng.uniform(-j, j),
          b.h + rng.uniform(-j, j)};
  out.w = std::max(out.w, 1.0);
  out.h = std::max(out.h, 1.0);
  return out;
}

}  // namespace

SynthCorpus generate(const SynthConfig& config) {
  validate(config);
  Rng rng(config.seed);
  SynthCorpus corpus;
  for (ClassId c : kAllClasses) {
    std::string name(class_name(c));
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    corpus.gt.categories.push_back({category_of(c), name});
  }

  std::int64_t next_ann = 1;
  const double W = config.image_width, H = config.image_height;

  for (int s = 0; s < config.n_scenes; ++s) {
    const ImageId image_id = s + 1;
    corpus.gt.images.push_back({image_id, config.image_width, config.image_height,
                                "synth_" + std::to_string(image_id) + ".png"});
    SceneLabels labels;
    labels.image_id = image_id;

    std::vector<Box> placed;
    const int n_persons =
        rng.integer(config.persons_per_scene.min, config.persons_per_scene.max);
    for (int p = 0; p < n_persons; ++p) {
      const double w = rng.integer(config.person_width.min, config.person_width.max);
      const double h = std::min(std::floor(w * rng.uniform(1.8, 2.6)), H);
      Box box;
      bool ok = false;
      for (int t = 0; t < kPlacementTries && !ok; ++t) {
        box = {std::floor(rng.uniform(0.0, W - w + 1.0)),
               std::floor(rng.uniform(0.0, H - h + 1.0)), w, h};
        ok = std::none_of(placed.begin(), placed.end(),
                          [&](const Box& o) { return iou(o, box) > kSeparationIou; });
      }
      if (!ok) continue;
      placed.push_back(box);

      GtAnnotation person{next_ann++, image_id, category_of(ClassId::Person),
                          ClassId::Person, box};
      corpus.gt.annotations.push_back(person);

      if (rng.bernoulli(config.drop_person_prob)) {
        labels.fn_gt.push_back(person.id);
      } else {
        Detection d;
        d.index = corpus.persons.size();
        d.image_id = image_id;
        d.category_id = person.category_id;
        d.cls = ClassId::Person;
        d.box = jittered(box, config.jitter, rng);
        d.score = rng.uniform(0.5, 1.0);
        labels.tp_persons.push_back(d.index);
        corpus.persons.push_back(d);
      }

      // Partial Fisher-Yates over the layout slots.
      std::array<std::size_t, kLayout.size()> slots;
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
      const int k = rng.integer(config.parts_per_person.min, config.parts_per_person.max);
      for (int i = 0; i < k; ++i) {
        const int j = rng.integer(i, static_cast<int>(slots.size()) - 1);
        std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(j)]);
        const Slot& slot = kLayout[slots[static_cast<std::size_t>(i)]];
        const Box pb{box.x + slot.fx * box.w, box.y + slot.fy * box.h, slot.fw * box.w,
                     slot.fh * box.h};
        GtAnnotation part{next_ann++, image_id, category_of(slot.cls), slot.cls, pb};
        corpus.gt.annotations.push_back(part);
        if (rng.bernoulli(config.drop_part_prob)) continue;
        Detection d;
        d.index = corpus.parts.size();
        d.image_id = image_id;
        d.category_id = part.category_id;
        d.cls = slot.cls;
        d.box = jittered(pb, config.jitter, rng);
        d.score = rng.uniform(0.4, 1.0);
        corpus.parts.push_back(d);
      }
    }

    if (rng.bernoulli(config.ghost_person_prob)) {
      const double w = rng.integer(config.person_width.min, config.person_width.max);
      const double h = std::min(std::floor(w * rng.uniform(1.8, 2.6)), H);
      for (int t = 0; t < kPlacementTries; ++t) {
        const Box box{std::floor(rng.uniform(0.0, W - w + 1.0)),
                      std::floor(rng.uniform(0.0, H - h + 1.0)), w, h};
        if (std::any_of(placed.begin(), placed.end(),
                        [&](const Box& o) { return iou(o, box) > kSeparationIou; })) {
          continue;
        }
        Detection d;
        d.index = corpus.persons.size();
        d.image_id = image_id;
        d.category_id = category_of(ClassId::Person);
        d.cls = ClassId::Person;
        d.box = box;
        d.score = rng.uniform(0.3, 0.95);
        labels.fp_persons.push_back(d.index);
        corpus.persons.push_back(d);
        break;
      }
    }

    if (rng.bernoulli(config.ghost_part_prob)) {
      const auto cls = kAllClasses[static_cast<std::size_t>(rng.integer(1, 8))];
      const double w = rng.integer(10, 30), h = rng.integer(10, 30);
      for (int t = 0; t < kPlacementTries; ++t) {
        const Box box{std::floor(rng.uniform(0.0, W - w + 1.0)),
                      std::floor(rng.uniform(0.0, H - h + 1.0)), w, h};
        if (std::any_of(placed.begin(), placed.end(),
                        [&](const Box& o) { return intersection_area(o, box) > 0.0; })) {
          continue;
        }
        Detection d;
        d.index = corpus.parts.size();
        d.image_id = image_id;
        d.category_id = category_of(cls);
        d.cls = cls;
        d.box = box;
        d.score = rng.uniform(0.3, 0.95);
        labels.ghost_parts.push_back(d.index);
        corpus.parts.push_back(d);
        break;
      }
    }
    corpus.labels.push_back(std::move(labels));
  }
  return corpus;
}

std::vector<Scene> SynthCorpus::scenes() const {
  return group_into_scenes(gt, persons, parts).scenes;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  write_file(dir / "gt.json", ground_truth_to_json(corpus.gt));
  write_file(dir / "persons.json", detections_to_json(corpus.persons));
  write_file(dir / "parts.json", detections_to_json(corpus.parts));
  write_file(dir / "category_map.json", category_map_to_json(CategoryMap::canonical()));

  nlohmann::json labels = nlohmann::json::array();
  for (const auto& l : corpus.labels) {
    labels.push_back({{"image_id", l.image_id},
                      {"tp_persons", l.tp_persons},
                      {"fp_persons", l.fp_persons},
                      {"fn_gt", l.fn_gt},
                      {"ghost_parts", l.ghost_parts}});
  }
  write_file(dir / "labels.json", labels.dump() + "\n");
}

}  // namespace partmon::synth
