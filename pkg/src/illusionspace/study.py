"""Object geometry, trial records, and condition scheduling for the grasping study.

The studied objects are hexahedra whose front and back faces tilt symmetrically
by a taper angle measured off the vertical. The nominal size of an object is
the width of its grasped profile halfway up; a positive taper makes the bottom
face narrower than the top. Participants grasp a physical object while seeing
a virtual one, then judge which felt/looked smaller and which less tilted, one
forced choice per axis.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import FormatError, InvalidPhysicalSizeError

# Virtual widths above this are at the edge of a comfortable pinch grasp;
# parsing keeps such rows but attaches a warning issue.
GRASP_APERTURE_WARN_CM = 11.0

DEFAULT_HEIGHT_CM = 6.0
DEFAULT_DEPTH_CM = 6.0


class ObjectKind(Enum):
    PHYSICAL = "physical"
    VIRTUAL = "virtual"


class SizeResponse(Enum):
    """Answer to "which object is smaller?", recorded for the virtual object."""

    VIRTUAL_SMALLER = "smaller"
    VIRTUAL_LARGER = "larger"


class AngleResponse(Enum):
    """Answer to "which object is less tilted?", recorded for the virtual object."""

    VIRTUAL_LESS_TILTED = "less_tilted"
    VIRTUAL_MORE_TILTED = "more_tilted"


@dataclass(frozen=True)
class ObjectSpec:
    """A graspable trapezoid-profile hexahedron.

    Parameters
    ----------
    width_mid:
        Width (cm) of the grasped profile at half height. This is the
        object's nominal size.
    taper_angle:
        Tilt of the side faces off the vertical, in degrees. Positive tapers
        narrow toward the bottom; negative tapers (virtual objects only)
        narrow toward the top.
    """

    width_mid: float
    taper_angle: float
    height: float = DEFAULT_HEIGHT_CM
    depth: float = DEFAULT_DEPTH_CM
    kind: ObjectKind = ObjectKind.PHYSICAL

    def __post_init__(self):
        if self.width_mid <= 0.0:
            raise ValueError(f"width_mid must be positive, got {self.width_mid}")
        if self.height <= 0.0 or self.depth <= 0.0:
            raise ValueError("height and depth must be positive")
        if self.taper_angle < 0.0 and self.kind is ObjectKind.PHYSICAL:
            raise ValueError("negative taper angles are only defined for virtual objects")

    @property
    def bottom_width(self) -> float:
        """Width at the base; negative tapers widen the base instead."""
        return self.width_mid - self.height * math.tan(math.radians(self.taper_angle))

    @property
    def top_width(self) -> float:
        return self.width_mid + self.height * math.tan(math.radians(self.taper_angle))

    @property
    def min_width(self) -> float:
        """Width of the narrower of the two horizontal faces."""
        return self.width_mid - self.height * math.tan(math.radians(abs(self.taper_angle)))


def is_feasible(spec: ObjectSpec) -> bool:
    """True when the tapered sides do not cross before reaching the narrow face.

    A shape is realizable only if its narrow face keeps positive width,
    i.e. ``width_mid - height * tan(|taper_angle|) > 0``.
    """
    return spec.min_width > 0.0


@dataclass(frozen=True)
class TrialRecord:
    """One 2AFC trial: a physical object grasped, a virtual one shown, two judgments."""

    participant_id: str
    physical_id: str
    physical: ObjectSpec
    virtual_size: float
    virtual_angle: float
    response_size: SizeResponse
    response_angle: AngleResponse
    timestamp: str | None = None

    def __post_init__(self):
        if not self.participant_id:
            raise ValueError("participant_id must be non-empty")
        if not self.physical_id:
            raise ValueError("physical_id must be non-empty")
        virtual = self.virtual  # raises on non-positive size
        if not is_feasible(virtual):
            raise ValueError(
                f"infeasible virtual shape: {self.virtual_size} cm at {self.virtual_angle} deg"
            )

    @property
    def virtual(self) -> ObjectSpec:
        return ObjectSpec(
            self.virtual_size,
            self.virtual_angle,
            self.physical.height,
            self.physical.depth,
            ObjectKind.VIRTUAL,
        )


@dataclass(frozen=True)
class Condition:
    """One scheduled pairing of a physical object with a virtual counterpart."""

    object_id: str
    physical: ObjectSpec
    virtual_size: float
    virtual_angle: float


@dataclass(frozen=True)
class ConditionSchedule:
    """A seeded, shuffled condition order with a two-session split."""

    conditions: tuple[Condition, ...]
    seed: int

    def __post_init__(self):
        if len(set(self.conditions)) != len(self.conditions):
            raise ValueError("conditions must be unique")

    @property
    def split(self) -> tuple[tuple[Condition, ...], tuple[Condition, ...]]:
        """Disjoint halves covering all conditions; the first gets the odd one out."""
        cut = (len(self.conditions) + 1) // 2
        return self.conditions[:cut], self.conditions[cut:]


@dataclass(frozen=True)
class ProtocolEntry:
    """A physical object together with the virtual grid it is paired against."""

    object_id: str
    physical: ObjectSpec
    virtual_sizes: tuple[float, ...]
    virtual_angles: tuple[float, ...]


def standard_protocol() -> tuple[ProtocolEntry, ...]:
    """The five-object protocol bundled with the toolkit.

    Three sizes at an 8 deg taper, plus a 16 deg and a 0 deg variant at 6 cm.
    Virtual sizes step 1 cm around each physical size, virtual angles step
    2 deg around each physical angle; infeasible pairings are dropped at
    schedule time, leaving 207 conditions.
    """

    def entry(object_id, size, angle, sizes, angles):
        return ProtocolEntry(
            object_id,
            ObjectSpec(float(size), float(angle)),
            tuple(float(s) for s in sizes),
            tuple(float(a) for a in angles),
        )

    return (
        entry("3-8", 3, 8, range(1, 7), range(2, 15, 2)),
        entry("6-8", 6, 8, range(4, 10), range(2, 15, 2)),
        entry("9-8", 9, 8, range(6, 12), range(2, 15, 2)),
        entry("6-16", 6, 16, range(4, 10), range(10, 23, 2)),
        entry("6-0", 6, 0, range(4, 10), range(-6, 7, 2)),
    )


def standard_registry() -> dict[str, ObjectSpec]:
    return {e.object_id: e.physical for e in standard_protocol()}


def generate_conditions(entries: Sequence[ProtocolEntry], seed: int) -> ConditionSchedule:
    """Cross each physical object with its virtual grid, drop infeasible shapes, shuffle.

    The shuffle is a Fisher-Yates pass driven by ``random.Random(seed)``, so a
    given protocol and seed always yield the same order.
    """
    if not entries:
        raise ValueError("protocol has no entries")
    seen_ids = set()
    conditions: list[Condition] = []
    for entry in entries:
        if entry.object_id in seen_ids:
            raise ValueError(f"duplicate object id {entry.object_id!r}")
        seen_ids.add(entry.object_id)
        if not entry.virtual_sizes or not entry.virtual_angles:
            raise ValueError(f"object {entry.object_id!r} has an empty virtual grid")
        for size in entry.virtual_sizes:
            for angle in entry.virtual_angles:
                virtual = ObjectSpec(
                    size, angle, entry.physical.height, entry.physical.depth, ObjectKind.VIRTUAL
                )
                if is_feasible(virtual):
                    conditions.append(Condition(entry.object_id, entry.physical, size, angle))

    rng = random.Random(seed)
    for i in range(len(conditions) - 1, 0, -1):
        j = rng.randrange(i + 1)
        conditions[i], conditions[j] = conditions[j], conditions[i]
    return ConditionSchedule(tuple(conditions), seed)


REQUIRED_COLUMNS = (
    "participant_id",
    "physical_id",
    "physical_size_cm",
    "physical_angle_deg",
    "virtual_size_cm",
    "virtual_angle_deg",
    "response_size",
    "response_angle",
)
OPTIONAL_COLUMNS = ("timestamp",)


@dataclass(frozen=True)
class ParseIssue:
    """A row-level problem found while reading a trial file.

    ``error`` rows are dropped from the result; ``warning`` rows are kept.
    """

    line: int
    code: str
    message: str
    severity: str = "error"


def _parse_float(text: str) -> float:
    value = float(text)
    if math.isnan(value) or math.isinf(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


def parse_trials(
    stream: io.TextIOBase | str,
    registry: Mapping[str, ObjectSpec] | None = None,
) -> tuple[list[TrialRecord], list[ParseIssue]]:
    """Read a trial CSV into records plus a list of row-level issues.

    Structural problems with the file itself (missing or duplicated header,
    unknown columns) raise :class:`FormatError`. Problems with individual
    rows never raise; each becomes a :class:`ParseIssue` and error rows are
    skipped. With ``registry=None`` the physical objects are inferred from
    the file: the first row naming a physical_id fixes its dimensions and
    later rows must agree.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty file: no header row") from None
    header = [h.strip() for h in header]
    if len(set(header)) != len(header):
        raise FormatError("header repeats a column name")
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise FormatError(f"header is missing columns: {', '.join(missing)}")
    unknown = [c for c in header if c not in REQUIRED_COLUMNS + OPTIONAL_COLUMNS]
    if unknown:
        raise FormatError(f"header has unknown columns: {', '.join(unknown)}")
    col = {name: header.index(name) for name in header}

    inferred: dict[str, ObjectSpec] = {}
    records: list[TrialRecord] = []
    issues: list[ParseIssue] = []

    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if [cell.strip() for cell in row] == header:
            raise FormatError(f"line {line_no}: duplicated header row")
        if len(row) != len(header):
            issues.append(
                ParseIssue(line_no, "field_count", f"expected {len(header)} fields, got {len(row)}")
            )
            continue

        def cell(name):
            return row[col[name]].strip()

        participant = cell("participant_id")
        physical_id = cell("physical_id")
        try:
            p_size = _parse_float(cell("physical_size_cm"))
            p_angle = _parse_float(cell("physical_angle_deg"))
            v_size = _parse_float(cell("virtual_size_cm"))
            v_angle = _parse_float(cell("virtual_angle_deg"))
        except ValueError as err:
            issues.append(ParseIssue(line_no, "bad_number", str(err)))
            continue

        if registry is not None:
            spec = registry.get(physical_id)
            if spec is None:
                issues.append(
                    ParseIssue(line_no, "unknown_object", f"unknown physical_id {physical_id!r}")
                )
                continue
        else:
            spec = inferred.get(physical_id)
            if spec is None:
                try:
                    spec = ObjectSpec(p_size, p_angle)
                except ValueError as err:
                    issues.append(ParseIssue(line_no, "bad_physical", str(err)))
                    continue
                if not is_feasible(spec):
                    issues.append(
                        ParseIssue(line_no, "bad_physical", "infeasible physical dimensions")
                    )
                    continue
                inferred[physical_id] = spec
        if spec.width_mid != p_size or spec.taper_angle != p_angle:
            issues.append(
                ParseIssue(
                    line_no,
                    "physical_mismatch",
                    f"physical dimensions ({p_size}, {p_angle}) disagree with "
                    f"{physical_id!r} = ({spec.width_mid}, {spec.taper_angle})",
                )
            )
            continue

        raw_size = cell("response_size")
        raw_angle = cell("response_angle")
        if not raw_size or not raw_angle:
            issues.append(ParseIssue(line_no, "missing_response", "both responses are required"))
            continue
        try:
            resp_size = SizeResponse(raw_size)
            resp_angle = AngleResponse(raw_angle)
        except ValueError:
            issues.append(
                ParseIssue(
                    line_no, "bad_response", f"unrecognized response {raw_size!r}/{raw_angle!r}"
                )
            )
            continue

        timestamp = cell("timestamp") or None if "timestamp" in col else None
        try:
            record = TrialRecord(
                participant, physical_id, spec, v_size, v_angle, resp_size, resp_angle, timestamp
            )
        except ValueError as err:
            issues.append(ParseIssue(line_no, "infeasible_virtual", str(err)))
            continue

        if v_size > GRASP_APERTURE_WARN_CM:
            issues.append(
                ParseIssue(
                    line_no,
                    "size_above_grasp_range",
                    f"virtual width {v_size} cm exceeds the {GRASP_APERTURE_WARN_CM} cm "
                    "comfortable-grasp bound",
                    severity="warning",
                )
            )
        records.append(record)

    return records, issues


def serialize_trials(records: Iterable[TrialRecord]) -> str:
    """Write records back to the CSV layout accepted by :func:`parse_trials`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REQUIRED_COLUMNS + OPTIONAL_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.participant_id,
                r.physical_id,
                repr(r.physical.width_mid),
                repr(r.physical.taper_angle),
                repr(r.virtual_size),
                repr(r.virtual_angle),
                r.response_size.value,
                r.response_angle.value,
                r.timestamp or "",
            ]
        )
    return out.getvalue()


def retarget_finger_distance(d_p: float, s_v: float, s_p: float) -> float:
    """Scale a tracked finger aperture from the physical object to the virtual one.

    The rendered aperture is ``d_p * (s_v / s_p)``, so the virtual hand closes
    on the virtual surface exactly when the real hand closes on the physical one.
    """
    if s_p <= 0.0:
        raise InvalidPhysicalSizeError(f"physical size must be positive, got {s_p}")
    if s_v <= 0.0:
        raise ValueError(f"virtual size must be positive, got {s_v}")
    if d_p < 0.0:
        raise ValueError(f"finger distance cannot be negative, got {d_p}")
    return d_p * (s_v / s_p)
