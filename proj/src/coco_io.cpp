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
#include "partmon/coco_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "partmon/error.hpp"

namespace partmon {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": parse error at byte " +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
}

[[noreturn]] void structure_error(const std::string& where,
                                  const std::string& msg) {
  throw ParseError(where + ": " + msg);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) structure_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) structure_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    const auto i = static_cast<std::int64_t>(d);
    if (static_cast<double>(i) == d) return i;
  }
  structure_error(where, "expected an integer");
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) structure_error(where, "expected a number");
  return v.get<double>();
}

Box as_bbox(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) {
    structure_error(where, "bbox must be an array [x, y, w, h]");
  }
  return Box{as_number(v[0], where), as_number(v[1], where),
             as_number(v[2], where), as_number(v[3], where)};
}

json bbox_json(const Box& b) { return json::array({b.x, b.y, b.w, b.h}); }

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

CategoryMap parse_category_map(std::string_view text) {
  const json doc = parse_json(text, "category map");
  if (!doc.is_object()) structure_error("category map", "expected an object");
  CategoryMap map;
  for (const auto& [key, value] : doc.items()) {
    std::int64_t id = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size()) {
      structure_error("category map", "key \"" + key + "\" is not an integer id");
    }
    if (value.is_null()) {
      map.set(id, std::nullopt);
      continue;
    }
    if (!value.is_string()) {
      structure_error("category map[" + key + "]", "expected a class name or null");
    }
    auto cls = parse_class_name(value.get<std::string>());
    if (!cls) {
      throw TaxonomyError("category map[" + key + "]: unknown class name \"" +
                          value.get<std::string>() + "\"");
    }
    map.set(id, *cls);
  }
  return map;
}

CategoryMap load_category_map(const std::filesystem::path& path) {
  return parse_category_map(read_file(path));
}

std::string category_map_to_json(const CategoryMap& map) {
  json doc = json::object();
  for (const auto& [id, cls] : map.entries()) {
    doc[std::to_string(id)] = cls ? json(std::string(class_name(*cls))) : json(nullptr);
  }
  return doc.dump(2) + "\n";
}

GroundTruth parse_ground_truth(std::string_view text, const CategoryMap& map) {
  const json doc = parse_json(text, "ground truth");
  if (!doc.is_object()) structure_error("ground truth", "expected an object");

  GroundTruth gt;
  std::set<ImageId> image_ids;
  const json& images = field(doc, "images", "ground truth");
  if (!images.is_array()) structure_error("images", "expected an array");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = "images[" + std::to_string(i) + "]";
    const json& img = images[i];
    ImageInfo info;
    info.id = as_int(field(img, "id", where), where + ".id");
    if (auto it = img.find("width"); it != img.end()) info.width = as_int(*it, where + ".width");
    if (auto it = img.find("height"); it != img.end()) info.height = as_int(*it, where + ".height");
    if (auto it = img.find("file_name"); it != img.end() && it->is_string()) {
      info.file_name = it->get<std::string>();
    }
    if (!image_ids.insert(info.id).second) {
      throw ValidationError(where + ": duplicate image id " + std::to_string(info.id));
    }
    gt.images.push_back(std::move(info));
  }

  const json& anns = field(doc, "annotations", "ground truth");
  if (!anns.is_array()) structure_error("annotations", "expected an array");
  for (std::size_t i = 0; i < anns.size(); ++i) {
    const std::string where = "annotations[" + std::to_string(i) + "]";
    const json& a = anns[i];
    GtAnnotation ann;
    ann.id = as_int(field(a, "id", where), where + ".id");
    ann.image_id = as_int(field(a, "image_id", where), where + ".image_id");
    ann.category_id = as_int(field(a, "category_id", where), where + ".category_id");
    ann.box = as_bbox(field(a, "bbox", where), where + ".bbox");
    auto cls = map.resolve(ann.category_id);
    if (!cls) continue;
    ann.cls = *cls;
    if (!(ann.box.w > 0.0) || !(ann.box.h > 0.0)) {
      throw ValidationError("annotation " + std::to_string(ann.id) +
                            ": bbox width and height must be positive");
    }
    if (!image_ids.contains(ann.image_id)) {
      throw ValidationError("annotation " + std::to_string(ann.id) +
                            ": unknown image id " + std::to_string(ann.image_id));
    }
    gt.annotations.push_back(ann);
  }

  if (auto it = doc.find("categories"); it != doc.end()) {
    if (!it->is_array()) structure_error("categories", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "categories[" + std::to_string(i) + "]";
      const json& c = (*it)[i];
      Category cat;
      cat.id = as_int(field(c, "id", where), where + ".id");
      if (auto n = c.find("name"); n != c.end() && n->is_string()) {
        cat.name = n->get<std::string>();
      }
      gt.categories.push_back(std::move(cat));
    }
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const CategoryMap& map) {
  try {
    return parse_ground_truth(read_file(path), map);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

std::string ground_truth_to_json(const GroundTruth& gt) {
  json images = json::array();
  for (const auto& img : gt.images) {
    images.push_back({{"id", img.id},
                      {"width", img.width},
                      {"height", img.height},
                      {"file_name", img.file_name}});
  }
  json anns = json::array();
  for (const auto& a : gt.annotations) {
    anns.push_back({{"id", a.id},
                    {"image_id", a.image_id},
                    {"category_id", a.category_id},
                    {"bbox", bbox_json(a.box)},
                    {"area", area(a.box)},
                    {"iscrowd", 0}});
  }
  json cats = json::array();
  for (const auto& c : gt.categories) cats.push_back({{"id", c.id}, {"name", c.name}});
  json doc = {{"images", images}, {"annotations", anns}, {"categories", cats}};
  return doc.dump() + "\n";
}

std::vector<Detection> parse_detections(std::string_view text,
                                        const CategoryMap& map) {
  const json doc = parse_json(text, "detections");
  if (!doc.is_array()) structure_error("detections", "expected an array");
  std::vector<Detection> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "detections[" + std::to_string(i) + "]";
    const json& e = doc[i];
    Detection d;
    d.index = i;
    d.image_id = as_int(field(e, "image_id", where), where + ".image_id");
    d.category_id = as_int(field(e, "category_id", where), where + ".category_id");
    d.box = as_bbox(field(e, "bbox", where), where + ".bbox");
    d.score = as_number(field(e, "score", where), where + ".score");
    auto cls = map.resolve(d.category_id);
    if (!cls) continue;
    d.cls = *cls;
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw ValidationError(where + ": score " + std::to_string(d.score) +
                            " outside [0, 1]");
    }
    if (!(d.box.w > 0.0) || !(d.box.h > 0.0)) {
      throw ValidationError(where + ": bbox width and height must be positive");
    }
    out.push_back(d);
  }
  return out;
}

std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const CategoryMap& map) {
  try {
    return parse_detections(read_file(path), map);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

std::string detections_to_json(std::span<const Detection> dets) {
  json doc = json::array();
  for (const auto& d : dets) {
    doc.push_back({{"image_id", d.image_id},
                   {"category_id", d.category_id},
                   {"bbox", bbox_json(d.box)},
                   {"score", d.score}});
  }
  return doc.dump() + "\n";
}

}  // namespace partmon
