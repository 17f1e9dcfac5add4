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

// COCO-style JSON ingestion and serialization.
//
//   ground truth   {"images": [{id, width, height, file_name}],
//                   "annotations": [{id, image_id, category_id, bbox}],
//                   "categories": [{id, name}]}
//   detections     [{image_id, category_id, bbox, score}]
//   category map   {"<source id>": "<class name>" | null}
//
// Boxes are [x, y, w, h]. Errors are ParseError (syntax, with byte offset;
// or structure), TaxonomyError (unmapped category) and ValidationError
// (bad box or score).

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partmon/data_model.hpp"

namespace partmon {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

CategoryMap parse_category_map(std::string_view text);
CategoryMap load_category_map(const std::filesystem::path& path);
std::string category_map_to_json(const CategoryMap& map);

GroundTruth parse_ground_truth(std::string_view text, const CategoryMap& map);
GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const CategoryMap& map);
std::string ground_truth_to_json(const GroundTruth& gt);

std::vector<Detection> parse_detections(std::string_view text,
                                        const CategoryMap& map);
std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const CategoryMap& map);
std::string detections_to_json(std::span<const Detection> dets);

}  // namespace partmon
