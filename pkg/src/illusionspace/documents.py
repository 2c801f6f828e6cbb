"""Canonical JSON documents shared by the CLI and the HTTP API.

Both front ends must emit byte-identical bodies for the same query, so every
document goes through :func:`canonical_json`: sorted keys, two-space indent,
UTF-8, no NaN/Infinity. Report documents round floats to six significant
digits for readability; machine documents (store entries, space/check/inverse
bodies) keep full precision.
"""

from __future__ import annotations

import json
from typing import Any

from .model import (
    VERTEX_LABELS,
    ContainmentReport,
    IllusionSpace,
    RegionMask,
)
from .pipeline import StudyFitReport
from .study import ConditionSchedule, ParseIssue

FORMAT_VERSION = 1


def canonical_json(doc: Any) -> str:
    """Serialize a document in the toolkit's canonical JSON form (no trailing newline)."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)


def round_sig(value: float, digits: int = 6) -> float:
    """Round to a fixed number of significant digits (report documents only)."""
    return float(f"{value:.{digits}g}")


def space_document(space: IllusionSpace) -> dict:
    vertices = {}
    for label in VERTEX_LABELS:
        s, a = space.vertices[label]
        abs_s, abs_a = space.vertex_absolute(label)
        vertices[label] = {
            "size_incongruence": s,
            "angle_incongruence": a,
            "virtual_size_cm": abs_s,
            "virtual_angle_deg": abs_a,
        }
    bounds = {
        role.value: {
            "slope": line.k,
            "intercept": line.b,
            "input": line.independent_axis.value,
        }
        for role, line in space.bounds.items()
    }
    return {
        "format_version": FORMAT_VERSION,
        "kind": "illusion_space",
        "physical": {
            "size_cm": space.physical.width_mid,
            "angle_deg": space.physical.taper_angle,
        },
        "bounds": bounds,
        "vertices": vertices,
        "congruent_inside": space.contains_ratio(1.0, 1.0),
        "extrapolation_warning": space.extrapolated,
    }


def check_document(
    report: ContainmentReport, s_p: float, a_p: float, virtual_size: float, virtual_angle: float
) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "containment_check",
        "physical": {"size_cm": s_p, "angle_deg": a_p},
        "virtual": {"size_cm": virtual_size, "angle_deg": virtual_angle},
        "incongruence": {"size": report.size_ratio, "angle": report.angle_ratio},
        "inside": report.inside,
        "margins": dict(report.margins),
        "extrapolation_warning": report.extrapolated,
    }


def inverse_document(region: RegionMask) -> dict:
    box = None
    if region.bounding_box is not None:
        size_lo, size_hi, angle_lo, angle_hi = region.bounding_box
        box = {
            "size_min_cm": size_lo,
            "size_max_cm": size_hi,
            "angle_min_deg": angle_lo,
            "angle_max_deg": angle_hi,
        }
    return {
        "format_version": FORMAT_VERSION,
        "kind": "inverse_region",
        "virtual": {"size_cm": region.virtual_size, "angle_deg": region.virtual_angle},
        "grid": {
            "size_min_cm": region.grid.size_min,
            "size_max_cm": region.grid.size_max,
            "size_step_cm": region.grid.size_step,
            "angle_min_deg": region.grid.angle_min,
            "angle_max_deg": region.grid.angle_max,
            "angle_step_deg": region.grid.angle_step,
        },
        "sizes_cm": list(region.sizes),
        "angles_deg": list(region.angles),
        # mask[i][j] pairs sizes_cm[i] with angles_deg[j]
        "mask": [[int(v) for v in row] for row in region.mask],
        "true_cell_count": region.true_cell_count,
        "bounding_box": box,
    }


def schedule_document(schedule: ConditionSchedule) -> dict:
    first, second = schedule.split
    return {
        "format_version": FORMAT_VERSION,
        "kind": "condition_schedule",
        "seed": schedule.seed,
        "condition_count": len(schedule.conditions),
        "split_sizes": [len(first), len(second)],
        "conditions": [
            {
                "object_id": c.object_id,
                "physical_size_cm": c.physical.width_mid,
                "physical_angle_deg": c.physical.taper_angle,
                "virtual_size_cm": c.virtual_size,
                "virtual_angle_deg": c.virtual_angle,
            }
            for c in schedule.conditions
        ],
    }


def _threshold_fields(cell, rounded: bool) -> dict:
    t = cell.thresholds
    conv = round_sig if rounded else (lambda v: v)
    fields = {
        "fixed_other": conv(cell.fixed_other),
        "dt": conv(t.dt),
        "pse": conv(t.pse),
        "ut": conv(t.ut),
        "jnd": conv(t.jnd),
        "weber_fraction": conv(t.weber_fraction),
        "units": t.units.value,
        "fit": {
            "a": conv(cell.fit.a),
            "b": conv(cell.fit.b),
            "r_squared": conv(cell.fit.r_squared),
            "n_points": cell.fit.n_points,
        },
    }
    if cell.incongruence is not None:
        fields["incongruence"] = conv(cell.incongruence)
    return fields


def _axis_fields(summary, rounded: bool) -> dict:
    return {
        "reference": summary.reference,
        "units": summary.units.value,
        "cells": [_threshold_fields(c, rounded) for c in summary.cells],
        "skipped": [{"fixed_other": s.fixed_other, "reason": s.reason} for s in summary.skipped],
    }


def _line_fields(lines, rounded: bool) -> dict:
    conv = round_sig if rounded else (lambda v: v)
    return {
        role.value: {
            "slope": conv(line.k),
            "intercept": conv(line.b),
            "se_slope": conv(line.se_k),
            "se_intercept": conv(line.se_b),
            "input": line.independent_axis.value,
        }
        for role, line in lines.items()
    }


def fit_report_document(
    report: StudyFitReport,
    model_id: str,
    input_digest: str,
    issues: list[ParseIssue],
    trial_count: int,
    *,
    rounded: bool = True,
) -> dict:
    """The fit report printed by the CLI and returned by POST fits.

    With ``rounded=False`` this doubles as the full-precision store entry body.
    """
    objects = {}
    for result in report.objects:
        objects[result.object_id] = {
            "physical": {
                "size_cm": result.physical.width_mid,
                "angle_deg": result.physical.taper_angle,
            },
            "size_axis": _axis_fields(result.size_axis, rounded) if result.size_axis else None,
            "angle_axis": _axis_fields(result.angle_axis, rounded) if result.angle_axis else None,
            "threshold_lines": _line_fields(result.lines, rounded),
            "notes": list(result.notes),
        }
    return {
        "format_version": FORMAT_VERSION,
        "kind": "fit_report",
        "model_id": model_id,
        "source": "fitted_from_data",
        "input_digest": input_digest,
        "trial_count": trial_count,
        "issues": [
            {"line": i.line, "code": i.code, "message": i.message, "severity": i.severity}
            for i in issues
        ],
        "objects": objects,
    }
