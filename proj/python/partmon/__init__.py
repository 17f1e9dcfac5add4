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
"""Python bindings for the partmon runtime monitor."""

from partmon._partmon import (
    AlertPair,
    BinaryCounts,
    BinaryMetrics,
    Box,
    CalibrationError,
    ClassId,
    Detection,
    GeometryError,
    GtAnnotation,
    InputError,
    IoError,
    ParseError,
    Scene,
    TaxonomyError,
    ValidationError,
    area,
    balances,
    binary_metrics,
    calibrate,
    counts_from_table,
    format_ratio,
    intersection_area,
    iou,
    part_overlap_at_least,
    partition,
    per_image_rule,
    per_object_rule,
    run_cli,
    synth_scenes,
    write_synth_corpus,
)

__all__ = [
    "AlertPair",
    "BinaryCounts",
    "BinaryMetrics",
    "Box",
    "CalibrationError",
    "ClassId",
    "Detection",
    "GeometryError",
    "GtAnnotation",
    "InputError",
    "IoError",
    "ParseError",
    "Scene",
    "TaxonomyError",
    "ValidationError",
    "area",
    "balances",
    "binary_metrics",
    "calibrate",
    "counts_from_table",
    "format_ratio",
    "intersection_area",
    "iou",
    "part_overlap_at_least",
    "partition",
    "per_image_rule",
    "per_object_rule",
    "run_cli",
    "synth_scenes",
    "write_synth_corpus",
]
