# Copyright 2026 The partmon Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import json
import math

import pytest

import partmon


def test_iou_boundary():
    assert partmon.iou(partmon.Box(0, 0, 10, 10), partmon.Box(0, 0, 10, 5)) == 0.5
    assert partmon.iou(partmon.Box(1, 1, 0, 0), partmon.Box(1, 1, 0, 0)) == 0.0


def test_part_overlap_rejects_degenerate_part():
    with pytest.raises(partmon.GeometryError):
        partmon.part_overlap_at_least(partmon.Box(0, 0, 5, 5), partmon.Box(0, 0, 0, 1), 0.5)
    with pytest.raises(ValueError):
        partmon.part_overlap_at_least(partmon.Box(0, 0, 5, 5), partmon.Box(0, 0, 1, 1), 1.0)


def test_monitor_rules_on_a_scene():
    scene = partmon.Scene()
    scene.image_id = 1
    scene.persons = [
        partmon.Detection(0, 1, partmon.ClassId.Person, partmon.Box(0, 0, 10, 20)),
        partmon.Detection(1, 1, partmon.ClassId.Person, partmon.Box(100, 0, 10, 20)),
    ]
    scene.parts = [
        partmon.Detection(0, 1, partmon.ClassId.Head, partmon.Box(2, 0, 4, 4)),
        partmon.Detection(1, 1, partmon.ClassId.Foot, partmon.Box(300, 0, 3, 3)),
    ]
    verdict = partmon.per_object_rule(scene, 0.5, 0.5)
    assert verdict == {"tp_mon": [0], "fp_mon": [1], "fn_mon": [1]}
    alerts = partmon.per_image_rule(scene, 0.5, 0.5)
    assert alerts.alert_fp and alerts.alert_fn


def test_table_arithmetic():
    m = partmon.binary_metrics(partmon.counts_from_table(11691, 1478, 545, 751))
    assert abs(m.precision - 0.42) <= 0.005
    assert abs(m.recall - 0.37) <= 0.005
    assert abs(m.mcc - 0.31) <= 0.005
    assert partmon.balances(138, 309, 2352, 620) == (171, 1732)
    assert partmon.format_ratio(0.03125) == "0.0312"


def test_partition_matches_labels_and_calibrate_is_thread_stable():
    scenes = partmon.synth_scenes(seed=3, n_scenes=80)
    assert len(scenes) == 80
    for s in scenes:
        p = partmon.partition(s)
        assert len(p["tp_gt"]) + len(p["fp_gt"]) == len(s.persons)
    one = partmon.calibrate(scenes, threads=1)
    four = partmon.calibrate(scenes, threads=4)
    assert one == four
    assert 0.0 < one["alpha_fp"] < 1.0
    assert set(one["conf"]) == {
        "Person", "Torso", "Hand", "Foot", "UpperLeg", "LowerLeg", "UpperArm", "LowerArm", "Head"
    }
    assert not math.isnan(one["mcc_fp"])


def test_cli_round_trip(tmp_path):
    corpus = tmp_path / "corpus"
    partmon.write_synth_corpus(corpus, seed=9, n_scenes=40)
    inputs = [
        "--gt", str(corpus / "gt.json"),
        "--persons", str(corpus / "persons.json"),
        "--parts", str(corpus / "parts.json"),
        "--category-map", str(corpus / "category_map.json"),
    ]
    op = tmp_path / "op.json"
    code, _, err = partmon.run_cli(["calibrate", *inputs, "--out", str(op)])
    assert code == 0, err
    code, out, err = partmon.run_cli(
        ["evaluate", *inputs, "--operating-point", str(op), "--protocol", "per-object"])
    assert code == 0, err
    report = json.loads(out)
    assert report["protocol"] == "per-object"
    code, _, err = partmon.run_cli(["calibrate", "--gt", str(tmp_path / "missing.json")])
    assert code == 2
