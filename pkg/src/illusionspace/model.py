"""Closed-form illusion-space model.

Four rational-polynomial surfaces give the detection-threshold incongruence
ratios of a physical object (size ``s_p`` cm, taper angle ``a_p`` deg):

* ``dt_size`` / ``ut_size``: smallest/largest unnoticeable virtual/physical
  size ratio, as a function of the angle incongruence ``a_v``;
* ``dt_angle`` / ``ut_angle``: least/most tilted unnoticeable angle ratio,
  as a function of the size incongruence ``s_v``.

At a fixed physical object each surface is affine in its incongruence input,
so the four bounds form a quadrilateral: the object's illusion space. All
functions accept scalars or numpy arrays and return ratios (dimensionless).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateCloudError,
    ExtrapolationWarning,
    InvalidDomainError,
    InvalidThresholdOrderError,
    ModelSingularityError,
    ParallelBoundsError,
    SingularDesignError,
    ZeroAngleUnsupportedError,
)
from .study import ObjectSpec

STUDIED_SIZE_RANGE_CM = (3.0, 9.0)
STUDIED_ANGLE_RANGE_DEG = (0.0, 16.0)

VERTEX_RESIDUAL_TOL = 1e-9


def in_studied_domain(s_p: float, a_p: float) -> bool:
    return (
        STUDIED_SIZE_RANGE_CM[0] <= s_p <= STUDIED_SIZE_RANGE_CM[1]
        and STUDIED_ANGLE_RANGE_DEG[0] <= a_p <= STUDIED_ANGLE_RANGE_DEG[1]
    )


def _maybe_warn(s_p, a_p, warn: bool):
    if not warn:
        return
    if np.ndim(s_p) or np.ndim(a_p):
        outside = not (
            bool(np.all((STUDIED_SIZE_RANGE_CM[0] <= np.asarray(s_p))
                        & (np.asarray(s_p) <= STUDIED_SIZE_RANGE_CM[1])))
            and bool(np.all((STUDIED_ANGLE_RANGE_DEG[0] <= np.asarray(a_p))
                            & (np.asarray(a_p) <= STUDIED_ANGLE_RANGE_DEG[1])))
        )
    else:
        outside = not in_studied_domain(float(s_p), float(a_p))
    if outside:
        warnings.warn(
            f"physical object ({s_p} cm, {a_p} deg) is outside the studied domain "
            f"{STUDIED_SIZE_RANGE_CM} cm x {STUDIED_ANGLE_RANGE_DEG} deg; "
            "thresholds are extrapolated",
            ExtrapolationWarning,
            stacklevel=3,
        )


# Each surface is (c0 + c1 * v) / den with c0, c1, den polynomial in (s_p, a_p)
# and v the incongruence ratio on the other axis.

def _size_dt_parts(s_p, a_p):
    c0 = s_p * s_p + 35.0 * s_p + 5.0 * a_p + 275.0
    c1 = -10.0 * a_p - 2.0 * s_p + 87.0
    den = -7.0 * a_p + 37.0 * s_p + 489.0
    return c0, c1, den


def _size_ut_parts(s_p, a_p):
    c0 = a_p * s_p - 30.0 * a_p + s_p * s_p - 86.0 * s_p + 1778.0
    c1 = -4.0 * a_p + 9.0 * s_p - 93.0
    den = -26.0 * a_p - 29.0 * s_p + 1197.0
    return c0, c1, den


def _angle_dt_parts(s_p, a_p):
    c0 = a_p * s_p - 11.0 * a_p - s_p * s_p - 10.0 * s_p + 275.0
    c1 = -8.0 * s_p + 165.0
    den = -a_p - 59.0 * s_p + 785.0
    return c0, c1, den


def _angle_ut_parts(s_p, a_p):
    c0 = a_p * s_p + 10.0 * a_p - s_p * s_p + 23.0 * s_p - 54.0
    c1 = -20.0 * a_p - 74.0 * s_p + 873.0
    den = 5.0 * a_p - 47.0 * s_p + 604.0
    return c0, c1, den


_SURFACE_PARTS = {
    "size_dt": _size_dt_parts,
    "size_ut": _size_ut_parts,
    "angle_dt": _angle_dt_parts,
    "angle_ut": _angle_ut_parts,
}


def _evaluate(parts, s_p, a_p, v, warn):
    _maybe_warn(s_p, a_p, warn)
    c0, c1, den = parts(np.asarray(s_p, dtype=float) if np.ndim(s_p) else float(s_p),
                        np.asarray(a_p, dtype=float) if np.ndim(a_p) else float(a_p))
    if np.ndim(den):
        if np.any(den == 0.0):
            raise ModelSingularityError("threshold surface denominator vanishes on the grid")
    elif den == 0.0:
        raise ModelSingularityError(
            f"threshold surface denominator vanishes at ({s_p} cm, {a_p} deg)"
        )
    return (c0 + c1 * (np.asarray(v, dtype=float) if np.ndim(v) else float(v))) / den


def dt_size(s_p, a_p, a_v=1.0, *, warn: bool = True):
    """Downscaling size-threshold ratio at angle incongruence ``a_v``."""
    return _evaluate(_size_dt_parts, s_p, a_p, a_v, warn)


def ut_size(s_p, a_p, a_v=1.0, *, warn: bool = True):
    """Upscaling size-threshold ratio at angle incongruence ``a_v``."""
    return _evaluate(_size_ut_parts, s_p, a_p, a_v, warn)


def dt_angle(s_p, a_p, s_v=1.0, *, warn: bool = True):
    """Downscaling angle-threshold ratio at size incongruence ``s_v``."""
    return _evaluate(_angle_dt_parts, s_p, a_p, s_v, warn)


def ut_angle(s_p, a_p, s_v=1.0, *, warn: bool = True):
    """Upscaling angle-threshold ratio at size incongruence ``s_v``."""
    return _evaluate(_angle_ut_parts, s_p, a_p, s_v, warn)


@dataclass(frozen=True)
class ModelInput:
    """A physical object plus the incongruence ratios the surfaces are probed at."""

    s_p: float
    a_p: float
    s_v: float = 1.0
    a_v: float = 1.0

    def __post_init__(self):
        if self.s_p <= 0.0:
            raise ValueError(f"s_p must be positive, got {self.s_p}")
        if self.a_p < 0.0:
            raise ValueError(f"a_p cannot be negative, got {self.a_p}")
        if self.s_v <= 0.0:
            raise ValueError(f"s_v must be positive, got {self.s_v}")

    def dt_size(self, *, warn: bool = True) -> float:
        return float(dt_size(self.s_p, self.a_p, self.a_v, warn=warn))

    def ut_size(self, *, warn: bool = True) -> float:
        return float(ut_size(self.s_p, self.a_p, self.a_v, warn=warn))

    def dt_angle(self, *, warn: bool = True) -> float:
        return float(dt_angle(self.s_p, self.a_p, self.s_v, warn=warn))

    def ut_angle(self, *, warn: bool = True) -> float:
        return float(ut_angle(self.s_p, self.a_p, self.s_v, warn=warn))


def pse_from_thresholds(ut: float, dt: float) -> float:
    """Midpoint estimate of the point of subjective equality."""
    if not ut > dt:
        raise InvalidThresholdOrderError(f"need ut > dt, got ut={ut}, dt={dt}")
    return (ut + dt) / 2.0


class LineRole(Enum):
    """Which bound a threshold line describes."""

    SUT = "sut"  # size upscaling
    SDT = "sdt"  # size downscaling
    AUT = "aut"  # angle upscaling
    ADT = "adt"  # angle downscaling


class IncongruenceAxis(Enum):
    ANGLE = "angle_incongruence"
    SIZE = "size_incongruence"


ROLE_INPUT_AXIS = {
    LineRole.SUT: IncongruenceAxis.ANGLE,
    LineRole.SDT: IncongruenceAxis.ANGLE,
    LineRole.AUT: IncongruenceAxis.SIZE,
    LineRole.ADT: IncongruenceAxis.SIZE,
}


@dataclass(frozen=True)
class ThresholdLine:
    """Affine threshold bound ``y = k*x + b`` in incongruence-ratio units.

    Size bounds take the angle ratio as input; angle bounds take the size
    ratio. ``se_k``/``se_b`` are OLS standard errors (zero for bounds taken
    straight from the closed-form surfaces).
    """

    k: float
    b: float
    se_k: float
    se_b: float
    role: LineRole
    independent_axis: IncongruenceAxis

    def __post_init__(self):
        if self.se_k < 0.0 or self.se_b < 0.0:
            raise ValueError("standard errors cannot be negative")
        if ROLE_INPUT_AXIS[self.role] is not self.independent_axis:
            raise ValueError(
                f"{self.role.value} lines take {ROLE_INPUT_AXIS[self.role].value} as input"
            )

    def __call__(self, x: float) -> float:
        return self.k * x + self.b


def fit_threshold_line(points: Sequence[tuple[float, float]], role: LineRole) -> ThresholdLine:
    """Ordinary least squares through (incongruence, threshold-ratio) pairs."""
    if len(points) < 2:
        raise ValueError(f"need at least 2 points, got {len(points)}")
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if np.unique(xs).size < 2:
        raise SingularDesignError("all abscissae are equal; the slope is unidentifiable")

    n = xs.size
    x_bar = float(xs.mean())
    y_bar = float(ys.mean())
    sxx = float(np.sum((xs - x_bar) ** 2))
    sxy = float(np.sum((xs - x_bar) * (ys - y_bar)))
    k = sxy / sxx
    b = y_bar - k * x_bar

    se_k = se_b = 0.0
    if n > 2:
        ss_res = float(np.sum((ys - (k * xs + b)) ** 2))
        s2 = ss_res / (n - 2)
        se_k = math.sqrt(s2 / sxx)
        se_b = math.sqrt(s2 * (1.0 / n + x_bar**2 / sxx))
    return ThresholdLine(k, b, se_k, se_b, role, ROLE_INPUT_AXIS[role])


def intersect_threshold_lines(
    size_line: ThresholdLine, angle_line: ThresholdLine
) -> tuple[float, float]:
    """Solve ``s = size_line(a)`` and ``a = angle_line(s)`` for the vertex (s, a)."""
    if size_line.role not in (LineRole.SUT, LineRole.SDT):
        raise ValueError(f"size_line must be a size bound, got {size_line.role.value}")
    if angle_line.role not in (LineRole.AUT, LineRole.ADT):
        raise ValueError(f"angle_line must be an angle bound, got {angle_line.role.value}")
    det = 1.0 - size_line.k * angle_line.k
    if abs(det) < 1e-12:
        raise ParallelBoundsError("bound lines are numerically parallel")
    s = (size_line.k * angle_line.b + size_line.b) / det
    a = angle_line.k * s + angle_line.b
    return s, a


@dataclass(frozen=True)
class Line3D:
    """A 3D line ``L(t) = p0 + d*t`` with unit direction and total fit residual."""

    p0: tuple[float, float, float]
    d: tuple[float, float, float]
    residual: float

    def __post_init__(self):
        norm = math.sqrt(sum(c * c for c in self.d))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"direction must be unit length, |d| = {norm}")
        if self.residual < -1e-12:
            raise ValueError("residual cannot be negative")

    def point_at(self, t: float) -> tuple[float, float, float]:
        return tuple(p + c * t for p, c in zip(self.p0, self.d))


def fit_vertex_line_3d(points: Sequence[Sequence[float]]) -> Line3D:
    """Total-least-squares line through 3D points: centroid plus principal axis.

    The direction is the top eigenvector of the centered scatter matrix, with
    its largest-magnitude component made positive so the result is stable
    under permutation of the input. The residual is the summed squared
    orthogonal distance.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) point array, got shape {pts.shape}")
    if pts.shape[0] < 2:
        raise ValueError("need at least 2 points")
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    if not np.any(centered):
        raise DegenerateCloudError("all points are identical; direction is undefined")
    scatter = centered.T @ centered
    eigvals, eigvecs = np.linalg.eigh(scatter)
    d = eigvecs[:, -1]
    pivot = int(np.argmax(np.abs(d)))
    if d[pivot] < 0.0:
        d = -d
    d = d / np.linalg.norm(d)
    residual = float(max(eigvals[0] + eigvals[1], 0.0))
    return Line3D(tuple(float(c) for c in centroid), tuple(float(c) for c in d), residual)


VERTEX_LABELS = {
    "smallest_least_tilted": (LineRole.SDT, LineRole.ADT),
    "smallest_most_tilted": (LineRole.SDT, LineRole.AUT),
    "largest_least_tilted": (LineRole.SUT, LineRole.ADT),
    "largest_most_tilted": (LineRole.SUT, LineRole.AUT),
}


@dataclass(frozen=True)
class IllusionSpace:
    """The quadrilateral of unnoticeable incongruence ratios for one physical object."""

    physical: ObjectSpec
    vertices: Mapping[str, tuple[float, float]]
    bounds: Mapping[LineRole, ThresholdLine]
    extrapolated: bool = False

    def __post_init__(self):
        for label, (size_role, angle_role) in VERTEX_LABELS.items():
            s, a = self.vertices[label]
            if s <= 0.0:
                raise ValueError(f"vertex {label} has non-positive size ratio {s}")
            size_resid = abs(self.bounds[size_role](a) - s)
            angle_resid = abs(self.bounds[angle_role](s) - a)
            if size_resid > VERTEX_RESIDUAL_TOL or angle_resid > VERTEX_RESIDUAL_TOL:
                raise ValueError(
                    f"vertex {label} does not lie on its bounds "
                    f"(residuals {size_resid:g}, {angle_resid:g})"
                )

    def vertex_absolute(self, label: str) -> tuple[float, float]:
        """Vertex in cm and degrees instead of ratios."""
        s, a = self.vertices[label]
        return s * self.physical.width_mid, a * self.physical.taper_angle

    def margins_ratio(self, s_v: float, a_v: float) -> dict[str, float]:
        return {
            "size_dt": s_v - self.bounds[LineRole.SDT](a_v),
            "size_ut": self.bounds[LineRole.SUT](a_v) - s_v,
            "angle_dt": a_v - self.bounds[LineRole.ADT](s_v),
            "angle_ut": self.bounds[LineRole.AUT](s_v) - a_v,
        }

    def contains_ratio(self, s_v: float, a_v: float) -> bool:
        return all(m >= 0.0 for m in self.margins_ratio(s_v, a_v).values())


def _surface_bound(parts, s_p: float, a_p: float, role: LineRole) -> ThresholdLine:
    c0, c1, den = parts(s_p, a_p)
    if den == 0.0:
        raise ModelSingularityError(
            f"threshold surface denominator vanishes at ({s_p} cm, {a_p} deg)"
        )
    return ThresholdLine(c1 / den, c0 / den, 0.0, 0.0, role, ROLE_INPUT_AXIS[role])


def build_illusion_space(s_p: float, a_p: float, *, warn: bool = True) -> IllusionSpace:
    """Assemble the four closed-form bounds and their vertices for one object."""
    if s_p <= 0.0:
        raise ValueError(f"s_p must be positive, got {s_p}")
    if a_p < 0.0:
        raise ValueError(f"a_p cannot be negative, got {a_p}")
    if a_p == 0.0:
        raise ZeroAngleUnsupportedError(
            "angle incongruence ratios are undefined for a 0 deg physical object"
        )
    _maybe_warn(s_p, a_p, warn)
    bounds = {
        LineRole.SDT: _surface_bound(_size_dt_parts, s_p, a_p, LineRole.SDT),
        LineRole.SUT: _surface_bound(_size_ut_parts, s_p, a_p, LineRole.SUT),
        LineRole.ADT: _surface_bound(_angle_dt_parts, s_p, a_p, LineRole.ADT),
        LineRole.AUT: _surface_bound(_angle_ut_parts, s_p, a_p, LineRole.AUT),
    }
    vertices = {
        label: intersect_threshold_lines(bounds[size_role], bounds[angle_role])
        for label, (size_role, angle_role) in VERTEX_LABELS.items()
    }
    return IllusionSpace(
        ObjectSpec(s_p, a_p),
        vertices,
        bounds,
        extrapolated=not in_studied_domain(s_p, a_p),
    )


@dataclass(frozen=True)
class ContainmentReport:
    """Outcome of one point-in-space query, with signed margins per bound."""

    inside: bool
    size_ratio: float
    angle_ratio: float
    margins: Mapping[str, float]
    extrapolated: bool


def contains(
    s_p: float, a_p: float, virtual_size: float, virtual_angle: float, *, warn: bool = True
) -> ContainmentReport:
    """Whether a virtual object's incongruence stays under all four thresholds.

    Margins are signed distances in ratio units; a point on a bound counts as
    inside. Raises :class:`ZeroAngleUnsupportedError` when ``a_p`` is zero.
    """
    space = build_illusion_space(s_p, a_p, warn=warn)
    if virtual_size <= 0.0:
        raise ValueError(f"virtual size must be positive, got {virtual_size}")
    s_v = virtual_size / s_p
    a_v = virtual_angle / a_p
    margins = space.margins_ratio(s_v, a_v)
    return ContainmentReport(
        inside=all(m >= 0.0 for m in margins.values()),
        size_ratio=s_v,
        angle_ratio=a_v,
        margins=margins,
        extrapolated=space.extrapolated,
    )


@dataclass(frozen=True)
class GridSpec:
    """A rectangular physical-object grid for inverse queries.

    Angles at or below zero are excluded from the grid (ratios are undefined
    there), so the default domain is sizes 3-9 cm by angles (0, 16] deg.
    """

    size_min: float = 3.0
    size_max: float = 9.0
    size_step: float = 0.1
    angle_min: float = 0.0
    angle_max: float = 16.0
    angle_step: float = 0.25

    def _axis(self, lo: float, hi: float, step: float) -> np.ndarray:
        if step <= 0.0:
            raise InvalidDomainError(f"grid step must be positive, got {step}")
        if hi < lo:
            raise InvalidDomainError(f"empty grid range [{lo}, {hi}]")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return np.round(lo + step * np.arange(count), 9)

    def size_values(self) -> np.ndarray:
        values = self._axis(self.size_min, self.size_max, self.size_step)
        if values.size == 0 or values[0] <= 0.0:
            raise InvalidDomainError("physical sizes must be positive")
        return values

    def angle_values(self) -> np.ndarray:
        values = self._axis(self.angle_min, self.angle_max, self.angle_step)
        values = values[values > 0.0]
        if values.size == 0:
            raise InvalidDomainError("no positive angles in the grid domain")
        return values


@dataclass(frozen=True)
class RegionMask:
    """Physical objects (grid cells) whose illusion space contains a virtual shape."""

    virtual_size: float
    virtual_angle: float
    grid: GridSpec
    sizes: tuple[float, ...]
    angles: tuple[float, ...]
    mask: tuple[tuple[bool, ...], ...]  # indexed [size][angle]
    bounding_box: tuple[float, float, float, float] | None  # size lo/hi, angle lo/hi

    @property
    def true_cell_count(self) -> int:
        return sum(sum(row) for row in self.mask)


def containment_mask(
    sizes: np.ndarray, angles: np.ndarray, virtual_size: float, virtual_angle: float
) -> np.ndarray:
    """Vectorized containment verdicts over a size x angle grid of physical objects."""
    s_grid, a_grid = np.meshgrid(
        np.asarray(sizes, dtype=float), np.asarray(angles, dtype=float), indexing="ij"
    )
    s_v = virtual_size / s_grid
    a_v = virtual_angle / a_grid
    inside = (s_v - dt_size(s_grid, a_grid, a_v, warn=False)) >= 0.0
    inside &= (ut_size(s_grid, a_grid, a_v, warn=False) - s_v) >= 0.0
    inside &= (a_v - dt_angle(s_grid, a_grid, s_v, warn=False)) >= 0.0
    inside &= (ut_angle(s_grid, a_grid, s_v, warn=False) - a_v) >= 0.0
    return inside


def inverse_query(
    virtual_size: float, virtual_angle: float, grid: GridSpec | None = None
) -> RegionMask:
    """Find every physical object on a grid whose illusion space holds the virtual shape."""
    if virtual_size <= 0.0:
        raise ValueError(f"virtual size must be positive, got {virtual_size}")
    if grid is None:
        grid = GridSpec()
    sizes = grid.size_values()
    angles = grid.angle_values()
    mask = containment_mask(sizes, angles, virtual_size, virtual_angle)

    box = None
    hit_size, hit_angle = np.nonzero(mask)
    if hit_size.size:
        box = (
            float(sizes[hit_size.min()]),
            float(sizes[hit_size.max()]),
            float(angles[hit_angle.min()]),
            float(angles[hit_angle.max()]),
        )
    return RegionMask(
        virtual_size=virtual_size,
        virtual_angle=virtual_angle,
        grid=grid,
        sizes=tuple(float(s) for s in sizes),
        angles=tuple(float(a) for a in angles),
        mask=tuple(tuple(bool(v) for v in row) for row in mask),
        bounding_box=box,
    )
