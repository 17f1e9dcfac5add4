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
#include "partmon/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "partmon/calibration.hpp"
#include "partmon/coco_io.hpp"
#include "partmon/error.hpp"
#include "partmon/evaluation.hpp"
#include "partmon/manifest.hpp"
#include "partmon/monitor.hpp"
#include "partmon/parallel.hpp"
#include "partmon/partition.hpp"
#include "partmon/report.hpp"
#include "partmon/synth.hpp"

namespace partmon::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string gt;
  std::string persons;
  std::string parts;
  std::string category_map;
  std::string parts_category_map;
  std::string operating_point;
  double tau = kDefaultTau;
  double grid_step = kDefaultGridStep;
  double min_area = kDefaultMinPersonArea;
  std::string filter_mode = "drop-if-any-below";
  std::string matching = "existential";
  std::string ghost_reference = "persons";
  unsigned threads = 1;
  std::string format = "json";
  std::string out;
  std::string mode = "image";
  std::string protocol = "per-image";
  std::string system = "monitor";
  bool strict_conf = false;
  bool strict_orphans = false;

  synth::SynthConfig synth;
};

std::string num(double v) { return nlohmann::json(v).dump(); }

const CLI::Validator kOpenUnit(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (...) {
        return "not a number: " + s;
      }
      return (v > 0.0 && v < 1.0) ? std::string() : "value must lie in (0, 1): " + s;
    },
    "(0,1)");

const CLI::Validator kProbability = CLI::Range(0.0, 1.0);

Matching matching_of(const Options& o) {
  return o.matching == "greedy" ? Matching::Greedy : Matching::Existential;
}

GhostReference ghost_of(const Options& o) {
  return o.ghost_reference == "all" ? GhostReference::AllAnnotations
                                    : GhostReference::PersonsOnly;
}

// Everything the calibrate/evaluate/monitor commands read from disk.
struct Corpus {
  std::optional<GroundTruth> gt;
  std::optional<std::vector<GtAnnotation>> part_gt;
  std::vector<Scene> scenes;
  std::vector<InputRecord> inputs;
};

Corpus load_corpus(const Options& o, bool need_gt, std::ostream& err) {
  if (need_gt && o.gt.empty()) throw ValidationError("--gt is required");
  if (o.category_map.empty()) throw ValidationError("--category-map is required");
  if (o.persons.empty()) throw ValidationError("--persons is required");
  if (o.parts.empty()) throw ValidationError("--parts is required");

  Corpus c;
  const CategoryMap map = load_category_map(o.category_map);
  c.inputs.push_back(record_input("category-map", o.category_map));
  CategoryMap parts_map = map;
  if (!o.parts_category_map.empty()) {
    parts_map = load_category_map(o.parts_category_map);
    c.inputs.push_back(record_input("parts-category-map", o.parts_category_map));
  }

  const auto persons = select_persons(load_detections(o.persons, map));
  c.inputs.push_back(record_input("persons", o.persons));
  const auto parts = select_parts(load_detections(o.parts, parts_map));
  c.inputs.push_back(record_input("parts", o.parts));

  if (o.gt.empty()) {
    c.scenes = group_detections(persons, parts);
    return c;
  }

  c.gt = load_ground_truth(o.gt, map);
  c.inputs.push_back(record_input("gt", o.gt));
  if (!o.parts_category_map.empty()) {
    auto pg = load_ground_truth(o.gt, parts_map);
    std::vector<GtAnnotation> only_parts;
    for (const auto& a : pg.annotations) {
      if (is_part(a.cls)) only_parts.push_back(a);
    }
    c.part_gt = std::move(only_parts);
  }

  std::optional<std::set<ImageId>> retained;
  if (o.filter_mode != "none") {
    const auto mode = o.filter_mode == "require-all-above" ? FilterMode::RequireAllAbove
                                                           : FilterMode::DropIfAnyBelow;
    retained = filter_images_by_min_person_area(*c.gt, o.min_area, mode);
  }
  GroupOptions group;
  group.retained = retained ? &*retained : nullptr;
  group.strict = o.strict_orphans;
  auto set = group_into_scenes(*c.gt, persons, parts, group);
  for (const auto& w : set.orphans) {
    err << "warning: " << w.count << " " << w.stream
        << " detection(s) reference unknown image id " << w.image_id << "\n";
  }
  c.scenes = std::move(set.scenes);
  return c;
}

void record_common_settings(const Options& o, RunManifest& m) {
  m.settings["filter_mode"] = o.filter_mode;
  m.settings["min_area"] = num(o.min_area);
  m.settings["matching"] = o.matching;
  m.settings["strict_conf"] = o.strict_conf ? "true" : "false";
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw ValidationError("--out is required");
  Corpus c = load_corpus(o, true, err);

  CalibrationOptions opts;
  opts.tau = o.tau;
  opts.grid_step = o.grid_step;
  opts.matching = matching_of(o);
  opts.strict_conf = o.strict_conf;
  opts.threads = o.threads;
  std::optional<std::span<const GtAnnotation>> part_gt;
  if (c.part_gt) part_gt = std::span<const GtAnnotation>(*c.part_gt);
  const auto result = calibrate(c.scenes, opts, part_gt);

  write_file(o.out, operating_point_to_json(result.op));
  RunManifest m;
  m.command = "calibrate";
  m.inputs = c.inputs;
  m.operating_point = result.op;
  record_common_settings(o, m);
  m.settings["tau"] = num(o.tau);
  m.settings["alpha_grid_step"] = num(o.grid_step);
  m.settings["scenes"] = std::to_string(c.scenes.size());
  m.settings["mcc_fp"] = num(result.alphas.mcc_fp);
  m.settings["mcc_fn"] = num(result.alphas.mcc_fn);
  for (const auto& [cls, t] : result.thresholds) {
    m.settings["f1." + std::string(class_name(cls))] = num(t.f1);
  }
  m.outputs.push_back(fs::path(o.out).filename().string());
  write_file(manifest_path_for(o.out), manifest_to_json(m));

  out << "scenes: " << c.scenes.size() << "\n";
  for (const auto& [cls, t] : result.thresholds) {
    out << "conf " << class_name(cls) << ": " << format_ratio(t.threshold)
        << " (F1 " << format_ratio(t.f1) << ")\n";
  }
  out << "alpha_fp: " << format_ratio(result.op.alpha_fp) << " (MCC "
      << format_ratio(result.alphas.mcc_fp) << ")\n"
      << "alpha_fn: " << format_ratio(result.op.alpha_fn) << " (MCC "
      << format_ratio(result.alphas.mcc_fn) << ")\n";
  return kSuccess;
}

std::vector<Scene> thresholded(const std::vector<Scene>& scenes, const OperatingPoint& op,
                               const Options& o) {
  std::vector<Scene> out(scenes.size());
  parallel_for(scenes.size(), o.threads,
               [&](std::size_t i) { out[i] = apply_thresholds(scenes[i], op, o.strict_conf); });
  return out;
}

nlohmann::json indices(const std::vector<Detection>& dets) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& d : dets) a.push_back(d.index);
  return a;
}

int cmd_monitor(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.operating_point.empty()) throw ValidationError("--operating-point is required");
  const OperatingPoint op = load_operating_point(o.operating_point);
  Corpus c = load_corpus(o, false, err);
  c.inputs.push_back(record_input("operating-point", o.operating_point));
  const auto scenes = thresholded(c.scenes, op, o);

  std::vector<std::string> lines(scenes.size());
  parallel_for(scenes.size(), o.threads, [&](std::size_t i) {
    nlohmann::ordered_json line;
    line["image_id"] = scenes[i].image_id;
    if (o.mode == "image") {
      const auto a = per_image_rule(scenes[i], op.alpha_fp, op.alpha_fn);
      line["alert_fp"] = a.alert_fp;
      line["alert_fn"] = a.alert_fn;
    } else {
      const auto v = per_object_rule(scenes[i], op.alpha_fp, op.alpha_fn);
      line["tp_mon"] = indices(v.tp_mon);
      line["fp_mon"] = indices(v.fp_mon);
      line["fn_mon"] = indices(v.fn_mon);
    }
    lines[i] = line.dump();
  });

  std::string body;
  for (const auto& l : lines) body += l + "\n";
  if (o.out.empty()) {
    out << body;
    return kSuccess;
  }
  write_file(o.out, body);
  RunManifest m;
  m.command = "monitor";
  m.inputs = c.inputs;
  m.operating_point = op;
  record_common_settings(o, m);
  m.settings["mode"] = o.mode;
  m.outputs.push_back(fs::path(o.out).filename().string());
  write_file(manifest_path_for(o.out), manifest_to_json(m));
  return kSuccess;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err,
                 bool tau_given) {
  if (o.operating_point.empty()) throw ValidationError("--operating-point is required");
  OperatingPoint op = load_operating_point(o.operating_point);
  if (tau_given) op.tau = o.tau;
  Corpus c = load_corpus(o, true, err);
  c.inputs.push_back(record_input("operating-point", o.operating_point));
  const auto scenes = thresholded(c.scenes, op, o);

  std::vector<GtPartition> partitions(scenes.size());
  parallel_for(scenes.size(), o.threads, [&](std::size_t i) {
    partitions[i] = partition_scene(scenes[i], op.tau, matching_of(o));
  });

  const fs::path out_path = o.out;
  const std::string manifest_name =
      o.out.empty() ? std::string() : manifest_path_for(out_path).filename().string();
  const ReportFormat format = o.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;

  std::string rendered;
  if (o.protocol == "per-image") {
    std::vector<AlertPair> alerts(scenes.size());
    parallel_for(scenes.size(), o.threads, [&](std::size_t i) {
      alerts[i] = per_image_rule(scenes[i], op.alpha_fp, op.alpha_fn);
    });
    PerImageReport report;
    report.manifest = manifest_name;
    report.total_images = static_cast<std::int64_t>(scenes.size());
    report.rows = per_image_rows(o.system, per_image_counts(scenes, partitions, alerts));
    rendered = render_report(report, format);
  } else {
    std::vector<MonitorVerdict> verdicts(scenes.size());
    parallel_for(scenes.size(), o.threads, [&](std::size_t i) {
      verdicts[i] = per_object_rule(scenes[i], op.alpha_fp, op.alpha_fn);
    });
    const auto conf = object_confusion(scenes, partitions, verdicts, op.alpha_fn, ghost_of(o));
    PerObjectReport report;
    report.manifest = manifest_name;
    report.rows.push_back({o.system, conf, balances(conf)});
    rendered = render_report(report, format);
  }

  if (o.out.empty()) {
    out << rendered;
    return kSuccess;
  }
  write_file(out_path, rendered);
  RunManifest m;
  m.command = "evaluate";
  m.inputs = c.inputs;
  m.operating_point = op;
  record_common_settings(o, m);
  m.settings["protocol"] = o.protocol;
  m.settings["ghost_reference"] = o.ghost_reference;
  m.settings["system"] = o.system;
  m.settings["total_images"] = std::to_string(scenes.size());
  m.outputs.push_back(out_path.filename().string());
  write_file(manifest_path_for(out_path), manifest_to_json(m));
  return kSuccess;
}

int cmd_synth(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ValidationError("--out is required");
  try {
    synth::validate(o.synth);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const auto corpus = synth::generate(o.synth);
  const fs::path dir = o.out;
  synth::write_corpus(corpus, dir);

  RunManifest m;
  m.command = "synth";
  const auto& s = o.synth;
  m.settings = {{"seed", std::to_string(s.seed)},
                {"n_scenes", std::to_string(s.n_scenes)},
                {"persons_per_scene", std::to_string(s.persons_per_scene.min) + "," +
                                          std::to_string(s.persons_per_scene.max)},
                {"parts_per_person", std::to_string(s.parts_per_person.min) + "," +
                                         std::to_string(s.parts_per_person.max)},
                {"drop_person_prob", num(s.drop_person_prob)},
                {"drop_part_prob", num(s.drop_part_prob)},
                {"ghost_person_prob", num(s.ghost_person_prob)},
                {"ghost_part_prob", num(s.ghost_part_prob)},
                {"jitter", num(s.jitter)}};
  m.outputs = {"gt.json", "persons.json", "parts.json", "category_map.json", "labels.json"};
  write_file(dir / "synth.manifest.json", manifest_to_json(m));
  out << "wrote " << corpus.gt.images.size() << " images, " << corpus.persons.size()
      << " person and " << corpus.parts.size() << " part detections to "
      << dir.generic_string() << "\n";
  return kSuccess;
}

int cmd_validate(const Options& o, std::ostream& out) {
  bool any = false;
  std::optional<CategoryMap> map;
  if (!o.category_map.empty()) {
    map = load_category_map(o.category_map);
    out << "category map: " << map->entries().size() << " entries\n";
    any = true;
  }
  CategoryMap parts_map = map.value_or(CategoryMap{});
  if (!o.parts_category_map.empty()) {
    parts_map = load_category_map(o.parts_category_map);
    out << "parts category map: " << parts_map.entries().size() << " entries\n";
  }
  auto need_map = [&]() -> const CategoryMap& {
    if (!map) throw ValidationError("--category-map is required to read annotations");
    return *map;
  };
  if (!o.gt.empty()) {
    const auto gt = load_ground_truth(o.gt, need_map());
    out << "ground truth: " << gt.images.size() << " images, " << gt.annotations.size()
        << " annotations\n";
    any = true;
  }
  if (!o.persons.empty()) {
    const auto d = load_detections(o.persons, need_map());
    out << "persons: " << select_persons(d).size() << " person detections\n";
    any = true;
  }
  if (!o.parts.empty()) {
    if (!map) need_map();
    const auto d = load_detections(o.parts, parts_map);
    out << "parts: " << select_parts(d).size() << " part detections\n";
    any = true;
  }
  if (!o.operating_point.empty()) {
    const auto op = load_operating_point(o.operating_point);
    out << "operating point: " << op.conf.size() << " class thresholds, alpha_fp "
        << format_ratio(op.alpha_fp) << ", alpha_fn " << format_ratio(op.alpha_fn)
        << ", tau " << format_ratio(op.tau) << "\n";
    any = true;
  }
  if (!any) throw ValidationError("nothing to validate");
  out << "ok\n";
  return kSuccess;
}

void add_inputs(CLI::App* sub, Options& o, bool with_op) {
  sub->add_option("--gt", o.gt, "Ground-truth annotations (COCO JSON)");
  sub->add_option("--persons", o.persons, "Person detections (COCO results JSON)");
  sub->add_option("--parts", o.parts, "Part detections (COCO results JSON)");
  sub->add_option("--category-map", o.category_map, "Source category id -> class name");
  sub->add_option("--parts-category-map", o.parts_category_map,
                  "Category map for the part stream (defaults to --category-map)");
  if (with_op) {
    sub->add_option("--operating-point", o.operating_point, "Operating point JSON");
  }
  sub->add_option("--min-area", o.min_area, "Minimum person box area in pixels^2")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--filter-mode", o.filter_mode, "Image filter rule")
      ->check(CLI::IsMember({"require-all-above", "drop-if-any-below", "none"}))
      ->capture_default_str();
  sub->add_option("--matching", o.matching, "Detection-to-ground-truth matching")
      ->check(CLI::IsMember({"existential", "greedy"}))
      ->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  sub->add_flag("--strict-conf", o.strict_conf, "Keep detections with score > threshold");
  sub->add_flag("--strict-orphans", o.strict_orphans,
                "Fail on detections for unknown image ids");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Part-based plausibility monitor for person detections", "partmon"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Select the operating point");
  add_inputs(calibrate_cmd, o, false);
  calibrate_cmd->add_option("--tau", o.tau, "IoU threshold")->check(kOpenUnit)->capture_default_str();
  calibrate_cmd->add_option("--alpha-grid-step", o.grid_step, "Alpha grid spacing")
      ->check(kOpenUnit)
      ->capture_default_str();
  calibrate_cmd->add_option("--out", o.out, "Operating point JSON to write");

  auto* monitor_cmd = app.add_subcommand("monitor", "Run the monitor per scene (JSON lines)");
  add_inputs(monitor_cmd, o, true);
  monitor_cmd->add_option("--mode", o.mode, "Decision rule")
      ->check(CLI::IsMember({"image", "object"}))
      ->capture_default_str();
  monitor_cmd->add_option("--out", o.out, "Output file (stdout when omitted)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score the monitor against ground truth");
  add_inputs(evaluate_cmd, o, true);
  auto* tau_opt = evaluate_cmd->add_option("--tau", o.tau, "Override the operating point's tau")
                      ->check(kOpenUnit);
  evaluate_cmd->add_option("--protocol", o.protocol, "Evaluation protocol")
      ->check(CLI::IsMember({"per-image", "per-object"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--ghost-reference", o.ghost_reference,
                           "Annotations a ghost part must miss")
      ->check(CLI::IsMember({"persons", "all"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--system", o.system, "System name for report rows")
      ->capture_default_str();
  evaluate_cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--out", o.out, "Report file (stdout when omitted)");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  auto& s = o.synth;
  synth_cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--n-scenes", s.n_scenes, "Number of images")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--persons-min", s.persons_per_scene.min)->capture_default_str();
  synth_cmd->add_option("--persons-max", s.persons_per_scene.max)->capture_default_str();
  synth_cmd->add_option("--parts-min", s.parts_per_person.min)->capture_default_str();
  synth_cmd->add_option("--parts-max", s.parts_per_person.max)->capture_default_str();
  synth_cmd->add_option("--drop-person", s.drop_person_prob)->check(kProbability)->capture_default_str();
  synth_cmd->add_option("--drop-part", s.drop_part_prob)->check(kProbability)->capture_default_str();
  synth_cmd->add_option("--ghost-person", s.ghost_person_prob)->check(kProbability)->capture_default_str();
  synth_cmd->add_option("--ghost-part", s.ghost_part_prob)->check(kProbability)->capture_default_str();
  synth_cmd->add_option("--jitter", s.jitter, "Box jitter in pixels")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--out", o.out, "Output directory");

  auto* validate_cmd = app.add_subcommand("validate", "Check input files without running");
  add_inputs(validate_cmd, o, true);

  std::vector<const char*> argv;
  argv.push_back("partmon");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*calibrate_cmd) return cmd_calibrate(o, out, err);
    if (*monitor_cmd) return cmd_monitor(o, out, err);
    if (*evaluate_cmd) return cmd_evaluate(o, out, err, tau_opt->count() > 0);
    if (*synth_cmd) return cmd_synth(o, out);
    if (*validate_cmd) return cmd_validate(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace partmon::cli
