"""Trial data to thresholds: the full per-object fitting pipeline.

For every physical object in a dataset the pipeline fits one sigmoid per
fixed level of the non-analyzed axis (e.g. size judgments at each virtual
angle), derives a :class:`~illusionspace.psychometry.ThresholdSet` per fit,
and regresses threshold ratios against the incongruence of the fixed axis to
obtain the four bound lines. Cells that cannot be fit are skipped with a
recorded reason, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DegenerateFitError
from .model import LineRole, ThresholdLine, fit_threshold_line
from .psychometry import (
    Axis,
    SigmoidFit,
    ThresholdSet,
    Units,
    aggregate_proportions,
    derive_thresholds,
    fit_sigmoid,
)
from .study import ObjectSpec, TrialRecord


@dataclass(frozen=True)
class AxisCell:
    """One fitted response curve at a fixed value of the other axis."""

    fixed_other: float
    incongruence: float | None  # fixed_other over its physical reference
    fit: SigmoidFit
    thresholds: ThresholdSet


@dataclass(frozen=True)
class SkippedCell:
    fixed_other: float
    reason: str


@dataclass(frozen=True)
class AxisSummary:
    axis: Axis
    reference: float
    units: Units
    cells: tuple[AxisCell, ...]
    skipped: tuple[SkippedCell, ...]


@dataclass(frozen=True)
class ObjectFitResult:
    object_id: str
    physical: ObjectSpec
    size_axis: AxisSummary | None
    angle_axis: AxisSummary | None
    lines: Mapping[LineRole, ThresholdLine]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class StudyFitReport:
    objects: tuple[ObjectFitResult, ...]

    def object_result(self, object_id: str) -> ObjectFitResult:
        for result in self.objects:
            if result.object_id == object_id:
                return result
        raise KeyError(object_id)


def _fit_axis(
    trials: Sequence[TrialRecord],
    axis: Axis,
    object_id: str,
    physical: ObjectSpec,
) -> AxisSummary:
    if axis is Axis.SIZE:
        fixed_values = sorted({t.virtual_angle for t in trials})
        reference, units = physical.width_mid, Units.CENTIMETERS
        other_reference = physical.taper_angle
    else:
        fixed_values = sorted({t.virtual_size for t in trials})
        reference, units = physical.taper_angle, Units.DEGREES
        other_reference = physical.width_mid

    cells: list[AxisCell] = []
    skipped: list[SkippedCell] = []
    for fixed in fixed_values:
        points = aggregate_proportions(trials, axis, object_id, fixed)
        if len(points) < 3:
            skipped.append(
                SkippedCell(fixed, f"only {len(points)} stimulus level(s); need at least 3")
            )
            continue
        try:
            fit = fit_sigmoid(points, axis)
        except DegenerateFitError as err:
            skipped.append(SkippedCell(fixed, f"degenerate fit: {err}"))
            continue
        thresholds = derive_thresholds(fit, reference, units)
        incongruence = fixed / other_reference if other_reference != 0.0 else None
        cells.append(AxisCell(fixed, incongruence, fit, thresholds))
    return AxisSummary(axis, reference, units, tuple(cells), tuple(skipped))


def _axis_lines(
    summary: AxisSummary, ut_role: LineRole, dt_role: LineRole, notes: list[str]
) -> dict[LineRole, ThresholdLine]:
    usable = [c for c in summary.cells if c.incongruence is not None]
    lines: dict[LineRole, ThresholdLine] = {}
    for role, pick in ((ut_role, lambda c: c.thresholds.ut), (dt_role, lambda c: c.thresholds.dt)):
        points = [(c.incongruence, pick(c) / summary.reference) for c in usable]
        if len({x for x, _ in points}) < 2:
            notes.append(
                f"{role.value} line skipped: fewer than 2 distinct incongruence levels"
            )
            continue
        lines[role] = fit_threshold_line(points, role)
    return lines


def fit_study(trials: Sequence[TrialRecord]) -> StudyFitReport:
    """Fit every object and axis present in a trial set.

    Objects with a 0-degree taper get size-axis fits only; the angle axis is
    skipped with a note because angle judgments have no positive reference to
    scale against. Threshold lines are fit in incongruence-ratio units.
    """
    if not trials:
        raise ValueError("no trials to fit")
    by_object: dict[str, list[TrialRecord]] = {}
    for t in trials:
        by_object.setdefault(t.physical_id, []).append(t)

    results = []
    for object_id in sorted(by_object):
        group = by_object[object_id]
        physical = group[0].physical
        notes: list[str] = []
        lines: dict[LineRole, ThresholdLine] = {}

        size_axis = _fit_axis(group, Axis.SIZE, object_id, physical)
        if physical.taper_angle == 0.0:
            angle_axis = None
            notes.append(
                "angle-axis fits skipped: a 0 deg physical object gives angle "
                "judgments no reference to scale against"
            )
        else:
            angle_axis = _fit_axis(group, Axis.ANGLE, object_id, physical)
            lines.update(_axis_lines(size_axis, LineRole.SUT, LineRole.SDT, notes))
            lines.update(_axis_lines(angle_axis, LineRole.AUT, LineRole.ADT, notes))

        results.append(
            ObjectFitResult(object_id, physical, size_axis, angle_axis, lines, tuple(notes))
        )
    return StudyFitReport(tuple(results))
