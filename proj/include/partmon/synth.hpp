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

// Seeded synthetic corpora with a known error taxonomy: dropped persons
// (missed detections), ghost persons (detections without a person), ghost
// parts and coordinate jitter. Randomness comes from std::mt19937_64 with
// hand-written real/integer mapping so corpora are identical on every
// platform.

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "partmon/data_model.hpp"

namespace partmon::synth {

struct IntRange {
  int min = 0;
  int max = 0;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  int n_scenes = 100;
  IntRange persons_per_scene{1, 4};
  IntRange parts_per_person{2, 6};
  double drop_person_prob = 0.1;
  double drop_part_prob = 0.2;
  double ghost_person_prob = 0.1;
  double ghost_part_prob = 0.1;
  double jitter = 2.0;  // pixels, uniform in [-jitter, jitter]
  int image_width = 640;
  int image_height = 480;
  IntRange person_width{50, 120};
};

// Throws std::invalid_argument on probabilities outside [0, 1], empty
// ranges or negative sizes.
void validate(const SynthConfig& config);

// Ground-truth error labels as constructed, by image.
struct SceneLabels {
  ImageId image_id = 0;
  std::vector<std::size_t> tp_persons;  // person detection indices
  std::vector<std::size_t> fp_persons;  // ghost person detection indices
  std::vector<std::int64_t> fn_gt;      // annotation ids of dropped persons
  std::vector<std::size_t> ghost_parts; // part detection indices

  friend bool operator==(const SceneLabels&, const SceneLabels&) = default;
};

struct SynthCorpus {
  GroundTruth gt;
  std::vector<Detection> persons;
  std::vector<Detection> parts;
  std::vector<SceneLabels> labels;

  // Scenes built from the corpus with the canonical category ids.
  std::vector<Scene> scenes() const;
};

SynthCorpus generate(const SynthConfig& config);

// Writes gt.json, persons.json, parts.json, category_map.json and
// labels.json into `dir` (created if needed).
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

// Portable mappings on top of the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  int integer(int lo, int hi);            // [lo, hi], inclusive
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace partmon::synth
