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
#include <vector>

#include <gtest/gtest.h>

#include "partmon/evaluation.hpp"
#include "partmon/oracle.hpp"
#include "partmon/report.hpp"
#include "partmon/synth.hpp"

namespace partmon {
namespace {

TEST(MetricsTest, CountsFromTableRow) {
  const BinaryCounts c = counts_from_table(11691, 1478, 545, 751);
  EXPECT_EQ(c, (BinaryCounts{545, 751, 933, 9462}));
  EXPECT_EQ(c.total(), 11691);
  EXPECT_THROW(counts_from_table(10, 5, 6, 0), std::invalid_argument);
  EXPECT_THROW(counts_from_table(10, 5, 1, 6), std::invalid_argument);
}

TEST(MetricsTest, HandComputedValues) {
  const auto m = binary_metrics(BinaryCounts{6, 2, 3, 9});
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 6.0 / 9.0);
  EXPECT_DOUBLE_EQ(m.mcc, (6.0 * 9.0 - 2.0 * 3.0) / std::sqrt(8.0 * 9.0 * 11.0 * 12.0));
}

TEST(MetricsTest, ZeroDenominatorsGiveZero) {
  const auto none = binary_metrics(BinaryCounts{0, 0, 0, 10});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.mcc, 0.0);
  const auto all = binary_metrics(BinaryCounts{4, 0, 0, 0});
  EXPECT_EQ(all.precision, 1.0);
  EXPECT_EQ(all.recall, 1.0);
  EXPECT_EQ(all.mcc, 0.0);
  EXPECT_EQ(f1_score(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(f1_score(0.5, 1.0), 2.0 / 3.0);
}

TEST(MetricsTest, PerfectAndInvertedMcc) {
  EXPECT_DOUBLE_EQ(binary_metrics(BinaryCounts{5, 0, 0, 5}).mcc, 1.0);
  EXPECT_DOUBLE_EQ(binary_metrics(BinaryCounts{0, 5, 5, 0}).mcc, -1.0);
}

TEST(PerImageCountsTest, LengthMismatchIsRejected) {
  std::vector<Scene> scenes(2);
  std::vector<GtPartition> parts(1);
  std::vector<AlertPair> alerts(2);
  EXPECT_THROW(per_image_counts(scenes, parts, alerts), std::invalid_argument);
}

Detection make(std::size_t index, ClassId cls, Box box) {
  Detection d;
  d.index = index;
  d.image_id = 1;
  d.cls = cls;
  d.box = box;
  d.score = 0.9;
  return d;
}

Scene fixture_scene() {
  Scene s;
  s.image_id = 1;
  // Ground truth: persons A (matched) and B (missed), plus a torso annotation
  // in open space.
  s.gt = {{1, 1, 1, ClassId::Person, {0, 0, 20, 40}},
          {2, 1, 1, ClassId::Person, {100, 0, 20, 40}},
          {3, 1, 2, ClassId::Torso, {300, 0, 10, 10}}};
  s.persons = {make(0, ClassId::Person, {0, 0, 20, 40}),     // TP_gt, has a part
               make(1, ClassId::Person, {200, 0, 20, 40})};  // FP_gt, no parts
  s.parts = {make(0, ClassId::Head, {5, 0, 8, 8}),           // belongs to person 0
             make(1, ClassId::Hand, {105, 10, 4, 4}),        // inside missed B
             make(2, ClassId::Foot, {400, 0, 4, 4}),         // ghost
             make(3, ClassId::Torso, {300, 0, 10, 10})};     // on the torso annotation
  return s;
}

TEST(ObjectConfusionTest, HandBuiltScene) {
  const Scene s = fixture_scene();
  const auto p = oracle::partition(s.persons, s.gt_persons(), 0.5);
  const auto v = per_object_rule(s, 0.5, 0.5);
  const auto c = object_confusion(s, p, v, 0.5);
  EXPECT_EQ(c.tp_gt_tp_mon, 1);
  EXPECT_EQ(c.tp_gt_fp_mon, 0);
  EXPECT_EQ(c.fp_gt_tp_mon, 0);
  EXPECT_EQ(c.fp_gt_fp_mon, 1);
  EXPECT_EQ(c.fn_gt_fn_mon, 1);
  EXPECT_EQ(c.tn_gt_fn_mon, 2);  // foot and torso miss every person
  EXPECT_EQ(balances(c), (Balances{1, -1}));

  const auto all = object_confusion(s, p, v, 0.5, GhostReference::AllAnnotations);
  EXPECT_EQ(all.tn_gt_fn_mon, 1);  // the torso now lands on an annotation
}

TEST(ObjectConfusionTest, AgreesWithOracleOnSyntheticCorpus) {
  synth::SynthConfig cfg;
  cfg.seed = 41;
  cfg.n_scenes = 250;
  cfg.ghost_part_prob = 0.4;
  const auto scenes = synth::generate(cfg).scenes();
  for (double a : {0.2, 0.5, 0.8}) {
    std::vector<GtPartition> parts;
    std::vector<MonitorVerdict> verdicts;
    std::vector<AlertPair> alerts;
    for (const auto& s : scenes) {
      parts.push_back(partition_scene(s, 0.5));
      verdicts.push_back(per_object_rule(s, a, a));
      alerts.push_back(per_image_rule(s, a, a));
    }
    for (GhostReference g : {GhostReference::PersonsOnly, GhostReference::AllAnnotations}) {
      const auto expect = oracle::metrics(scenes, 0.5, a, a, g);
      const auto c = object_confusion(scenes, parts, verdicts, a, g);
      EXPECT_EQ(c, expect.confusion);
      EXPECT_EQ(balances(c), expect.balances);
    }
    const auto expect = oracle::metrics(scenes, 0.5, a, a);
    const auto counts = per_image_counts(scenes, parts, alerts);
    EXPECT_EQ(counts.fp_alert, expect.fp_alert);
    EXPECT_EQ(counts.fn_alert, expect.fn_alert);
    EXPECT_EQ(counts.fp_alert.total(), static_cast<std::int64_t>(scenes.size()));
  }
}

TEST(ReportTest, RatioFormattingRoundsHalfToEven) {
  EXPECT_EQ(format_ratio(0.0), "0.0000");
  EXPECT_EQ(format_ratio(1.0), "1.0000");
  EXPECT_EQ(format_ratio(0.03125), "0.0312");
  EXPECT_EQ(format_ratio(0.09375), "0.0938");
  EXPECT_EQ(format_ratio(-0.25), "-0.2500");
  EXPECT_EQ(format_ratio(2.0 / 3.0), "0.6667");
  EXPECT_EQ(format_ratio(std::nan("")), "0.0000");
}

TEST(ReportTest, PerImageCsv) {
  AlertCounts counts;
  counts.fp_alert = {6, 2, 3, 9};
  counts.fn_alert = {0, 0, 0, 20};
  PerImageReport r;
  r.manifest = "out.csv.manifest.json";
  r.total_images = 20;
  r.rows = per_image_rows("MultiDet", counts);
  EXPECT_EQ(render_report(r, ReportFormat::Csv),
            "system,alert,tp,fp,fn,tn,precision,recall,mcc\n"
            "MultiDet,FP,6,2,3,9,0.7500,0.6667,0.4924\n"
            "MultiDet,FN,0,0,0,20,0.0000,0.0000,0.0000\n");
}

TEST(ReportTest, PerObjectJsonHasSortedKeys) {
  PerObjectReport r;
  r.manifest = "m.json";
  ObjectConfusion c{10, 2, 3, 4, 5, 1};
  r.rows.push_back({"B", c, balances(c)});
  EXPECT_EQ(render_report(r, ReportFormat::Json),
            "{\n  \"manifest\": \"m.json\",\n  \"protocol\": \"per-object\",\n  \"rows\": [\n"
            "    {\"fn_balance\": 4, \"fn_gt_fn_mon\": 5, \"fp_balance\": 2, "
            "\"fp_gt_fp_mon\": 4, \"fp_gt_tp_mon\": 3, \"system\": \"B\", "
            "\"tn_gt_fn_mon\": 1, \"tp_gt_fp_mon\": 2, \"tp_gt_tp_mon\": 10}\n  ]\n}\n");
}

}  // namespace
}  // namespace partmon
