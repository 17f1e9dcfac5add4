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
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "partmon/calibration.hpp"
#include "partmon/cli.hpp"
#include "partmon/coco_io.hpp"
#include "partmon/error.hpp"
#include "partmon/evaluation.hpp"
#include "partmon/geometry.hpp"
#include "partmon/monitor.hpp"
#include "partmon/partition.hpp"
#include "partmon/report.hpp"
#include "partmon/synth.hpp"

namespace py = pybind11;
using namespace partmon;

namespace {

std::vector<std::size_t> indices(const std::vector<Detection>& dets) {
  std::vector<std::size_t> out;
  out.reserve(dets.size());
  for (const auto& d : dets) out.push_back(d.index);
  return out;
}

}  // namespace

PYBIND11_MODULE(_partmon, m) {
  m.doc() = "Part-based plausibility monitor for person detections";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", input_error.ptr());
  py::register_exception<TaxonomyError>(m, "TaxonomyError", input_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", input_error.ptr());
  py::register_exception<IoError>(m, "IoError", input_error.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", input_error.ptr());
  py::register_exception<CalibrationError>(m, "CalibrationError", input_error.ptr());

  py::class_<Box>(m, "Box")
      .def(py::init<>())
      .def(py::init([](double x, double y, double w, double h) { return Box{x, y, w, h}; }),
           py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readwrite("x", &Box::x)
      .def_readwrite("y", &Box::y)
      .def_readwrite("w", &Box::w)
      .def_readwrite("h", &Box::h)
      .def(py::self == py::self)
      .def("__repr__", [](const Box& b) {
        std::ostringstream s;
        s << "Box(" << b.x << ", " << b.y << ", " << b.w << ", " << b.h << ")";
        return s.str();
      });

  m.def("area", &area);
  m.def("intersection_area", &intersection_area);
  m.def("iou", &iou);
  m.def("part_overlap_at_least", &part_overlap_at_least, py::arg("person"), py::arg("part"),
        py::arg("alpha"));

  py::enum_<ClassId>(m, "ClassId")
      .value("Person", ClassId::Person)
      .value("Torso", ClassId::Torso)
      .value("Hand", ClassId::Hand)
      .value("Foot", ClassId::Foot)
      .value("UpperLeg", ClassId::UpperLeg)
      .value("LowerLeg", ClassId::LowerLeg)
      .value("UpperArm", ClassId::UpperArm)
      .value("LowerArm", ClassId::LowerArm)
      .value("Head", ClassId::Head);

  py::class_<Detection>(m, "Detection")
      .def(py::init([](std::size_t index, ImageId image_id, ClassId cls, Box box, double score) {
             Detection d;
             d.index = index;
             d.image_id = image_id;
             d.cls = cls;
             d.box = box;
             d.score = score;
             return d;
           }),
           py::arg("index"), py::arg("image_id"), py::arg("cls"), py::arg("box"),
           py::arg("score") = 1.0)
      .def_readwrite("index", &Detection::index)
      .def_readwrite("image_id", &Detection::image_id)
      .def_readwrite("category_id", &Detection::category_id)
      .def_readwrite("cls", &Detection::cls)
      .def_readwrite("box", &Detection::box)
      .def_readwrite("score", &Detection::score);

  py::class_<GtAnnotation>(m, "GtAnnotation")
      .def(py::init([](std::int64_t id, ImageId image_id, ClassId cls, Box box) {
             return GtAnnotation{id, image_id, 0, cls, box};
           }),
           py::arg("id"), py::arg("image_id"), py::arg("cls"), py::arg("box"))
      .def_readwrite("id", &GtAnnotation::id)
      .def_readwrite("image_id", &GtAnnotation::image_id)
      .def_readwrite("cls", &GtAnnotation::cls)
      .def_readwrite("box", &GtAnnotation::box);

  py::class_<Scene>(m, "Scene")
      .def(py::init<>())
      .def_readwrite("image_id", &Scene::image_id)
      .def_readwrite("persons", &Scene::persons)
      .def_readwrite("parts", &Scene::parts)
      .def_readwrite("gt", &Scene::gt);

  py::class_<AlertPair>(m, "AlertPair")
      .def_readonly("alert_fp", &AlertPair::alert_fp)
      .def_readonly("alert_fn", &AlertPair::alert_fn);

  m.def("per_image_rule",
        py::overload_cast<const Scene&, double, double>(&per_image_rule),
        py::arg("scene"), py::arg("alpha_fp"), py::arg("alpha_fn"));
  m.def(
      "per_object_rule",
      [](const Scene& s, double afp, double afn) {
        const auto v = per_object_rule(s, afp, afn);
        py::dict out;
        out["tp_mon"] = indices(v.tp_mon);
        out["fp_mon"] = indices(v.fp_mon);
        out["fn_mon"] = indices(v.fn_mon);
        return out;
      },
      py::arg("scene"), py::arg("alpha_fp"), py::arg("alpha_fn"),
      "Detection indices of the monitor's TP, FP and FN sets.");

  m.def(
      "partition",
      [](const Scene& s, double tau, bool greedy) {
        const auto p = partition_scene(s, tau, greedy ? Matching::Greedy : Matching::Existential);
        std::vector<std::int64_t> fn;
        for (const auto& a : p.fn_gt) fn.push_back(a.id);
        py::dict out;
        out["tp_gt"] = indices(p.tp_gt);
        out["fp_gt"] = indices(p.fp_gt);
        out["fn_gt"] = fn;
        return out;
      },
      py::arg("scene"), py::arg("tau") = kDefaultTau, py::arg("greedy") = false);

  py::class_<BinaryCounts>(m, "BinaryCounts")
      .def(py::init([](std::int64_t tp, std::int64_t fp, std::int64_t fn, std::int64_t tn) {
             return BinaryCounts{tp, fp, fn, tn};
           }),
           py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"))
      .def_readonly("tp", &BinaryCounts::tp)
      .def_readonly("fp", &BinaryCounts::fp)
      .def_readonly("fn", &BinaryCounts::fn)
      .def_readonly("tn", &BinaryCounts::tn);

  py::class_<BinaryMetrics>(m, "BinaryMetrics")
      .def_readonly("precision", &BinaryMetrics::precision)
      .def_readonly("recall", &BinaryMetrics::recall)
      .def_readonly("mcc", &BinaryMetrics::mcc);

  m.def("counts_from_table", &counts_from_table, py::arg("total_images"), py::arg("positives"),
        py::arg("true_alerts"), py::arg("false_alerts"));
  m.def("binary_metrics", &binary_metrics);
  m.def("format_ratio", &format_ratio);
  m.def(
      "balances",
      [](std::int64_t tp_gt_fp_mon, std::int64_t fp_gt_fp_mon, std::int64_t fn_gt_fn_mon,
         std::int64_t tn_gt_fn_mon) {
        ObjectConfusion c;
        c.tp_gt_fp_mon = tp_gt_fp_mon;
        c.fp_gt_fp_mon = fp_gt_fp_mon;
        c.fn_gt_fn_mon = fn_gt_fn_mon;
        c.tn_gt_fn_mon = tn_gt_fn_mon;
        const auto b = balances(c);
        return py::make_tuple(b.fp_balance, b.fn_balance);
      },
      py::arg("tp_gt_fp_mon"), py::arg("fp_gt_fp_mon"), py::arg("fn_gt_fn_mon"),
      py::arg("tn_gt_fn_mon"), "(fp_balance, fn_balance) from the four balance cells.");

  m.def(
      "synth_scenes",
      [](std::uint64_t seed, int n_scenes) {
        synth::SynthConfig cfg;
        cfg.seed = seed;
        cfg.n_scenes = n_scenes;
        return synth::generate(cfg).scenes();
      },
      py::arg("seed") = 1, py::arg("n_scenes") = 100);
  m.def(
      "write_synth_corpus",
      [](const std::filesystem::path& dir, std::uint64_t seed, int n_scenes) {
        synth::SynthConfig cfg;
        cfg.seed = seed;
        cfg.n_scenes = n_scenes;
        synth::write_corpus(synth::generate(cfg), dir);
      },
      py::arg("dir"), py::arg("seed") = 1, py::arg("n_scenes") = 100);

  m.def(
      "calibrate",
      [](const std::vector<Scene>& scenes, double tau, double grid_step, unsigned threads) {
        CalibrationOptions opts;
        opts.tau = tau;
        opts.grid_step = grid_step;
        opts.threads = threads;
        CalibrationResult r;
        {
          py::gil_scoped_release release;
          r = calibrate(scenes, opts);
        }
        py::dict conf;
        for (const auto& [cls, t] : r.op.conf) conf[py::str(std::string(class_name(cls)))] = t;
        py::dict out;
        out["conf"] = conf;
        out["alpha_fp"] = r.op.alpha_fp;
        out["alpha_fn"] = r.op.alpha_fn;
        out["tau"] = r.op.tau;
        out["mcc_fp"] = r.alphas.mcc_fp;
        out["mcc_fn"] = r.alphas.mcc_fn;
        return out;
      },
      py::arg("scenes"), py::arg("tau") = kDefaultTau, py::arg("grid_step") = kDefaultGridStep,
      py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the partmon command line; returns (exit_code, stdout, stderr).");
}
