"""2AFC proportion aggregation, sigmoid fitting, and perceptual thresholds.

The response model is the two-parameter decreasing sigmoid

    f(x) = 1 / (1 + exp(a*x + b))

fit by trial-count-weighted least squares. Thresholds are read off the fitted
curve: the point of subjective equality at f = 0.5 and the detection bounds at
f = 0.75 (downscaling) and f = 0.25 (upscaling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import expit

from .errors import (
    DegenerateFitError,
    EmptyDatasetError,
    InvalidProbabilityError,
    MixedGroupError,
)
from .study import AngleResponse, SizeResponse, TrialRecord

MAX_ITERATIONS = 200
STEP_TOLERANCE = 1e-10
# below this response variance at every stimulus the data are fully separated
SATURATION_EPS = 1e-12


class Axis(Enum):
    SIZE = "size"
    ANGLE = "angle"


class Units(Enum):
    CENTIMETERS = "cm"
    DEGREES = "deg"


@dataclass(frozen=True)
class ProportionPoint:
    """Proportion of "virtual smaller/less tilted" answers at one stimulus level."""

    stimulus: float
    proportion: float
    trial_count: int

    def __post_init__(self):
        if not math.isfinite(self.stimulus):
            raise ValueError("stimulus must be finite")
        if not 0.0 <= self.proportion <= 1.0:
            raise ValueError(f"proportion must be in [0, 1], got {self.proportion}")
        if self.trial_count < 1:
            raise ValueError("trial_count must be at least 1")


def is_count_ratio(point: ProportionPoint, tol: float = 1e-9) -> bool:
    """Whether the proportion is an exact k/trial_count ratio (aggregated data always is)."""
    scaled = point.proportion * point.trial_count
    return abs(scaled - round(scaled)) <= tol


def sigmoid(x, a: float, b: float):
    """Evaluate 1 / (1 + exp(a*x + b)); decreasing in x when a > 0."""
    return expit(-(a * np.asarray(x, dtype=float) + b))


@dataclass(frozen=True)
class SigmoidFit:
    """Fitted response curve. ``a`` must be nonzero unless flagged degenerate."""

    a: float
    b: float
    r_squared: float
    n_points: int
    axis: Axis
    degenerate: bool = False
    converged: bool = True

    def __post_init__(self):
        if self.a == 0.0 and not self.degenerate:
            raise ValueError("a flat curve (a == 0) must be flagged degenerate")
        if self.r_squared > 1.0 + 1e-12:
            raise ValueError(f"r_squared cannot exceed 1, got {self.r_squared}")

    def predict(self, x):
        return sigmoid(x, self.a, self.b)


def aggregate_proportions(
    trials: Sequence[TrialRecord],
    axis: Axis,
    group: str,
    fixed_other: float,
) -> list[ProportionPoint]:
    """Collapse raw trials of one physical object into per-stimulus proportions.

    ``axis`` selects which virtual dimension varies; ``fixed_other`` pins the
    other one (compared within 1e-9). The proportion counts "virtual smaller"
    answers on the size axis and "virtual less tilted" on the angle axis, so
    aggregated proportions are always exact count ratios.
    """
    if not trials:
        raise EmptyDatasetError("no trials to aggregate")
    foreign = sorted({t.physical_id for t in trials} - {group})
    if foreign:
        raise MixedGroupError(
            f"trials for {', '.join(repr(f) for f in foreign)} mixed into group {group!r}"
        )

    if axis is Axis.SIZE:
        selected = [t for t in trials if abs(t.virtual_angle - fixed_other) <= 1e-9]
    else:
        selected = [t for t in trials if abs(t.virtual_size - fixed_other) <= 1e-9]
    if not selected:
        raise EmptyDatasetError(
            f"no {axis.value}-axis trials with the other axis fixed at {fixed_other}"
        )

    counts: dict[float, list[int]] = {}
    for t in selected:
        if axis is Axis.SIZE:
            stimulus = t.virtual_size
            positive = t.response_size is SizeResponse.VIRTUAL_SMALLER
        else:
            stimulus = t.virtual_angle
            positive = t.response_angle is AngleResponse.VIRTUAL_LESS_TILTED
        hit_total = counts.setdefault(stimulus, [0, 0])
        hit_total[0] += int(positive)
        hit_total[1] += 1

    return [
        ProportionPoint(stimulus, hits / total, total)
        for stimulus, (hits, total) in sorted(counts.items())
    ]


def fit_objective(points: Sequence[ProportionPoint], a: float, b: float) -> float:
    """Trial-weighted mean squared error of the sigmoid against the points."""
    x = np.array([p.stimulus for p in points], dtype=float)
    y = np.array([p.proportion for p in points], dtype=float)
    w = np.array([p.trial_count for p in points], dtype=float)
    w /= w.sum()
    r = y - sigmoid(x, a, b)
    return float(np.sum(w * r * r))


def fit_sigmoid(points: Sequence[ProportionPoint], axis: Axis = Axis.SIZE) -> SigmoidFit:
    """Weighted least-squares fit of the sigmoid by damped Gauss-Newton.

    Starts from a weighted log-odds regression (proportions clamped to
    [1/(2n), 1 - 1/(2n)]), then iterates Gauss-Newton with step halving until
    the accepted step is below 1e-10 or 200 iterations pass. Fully separated
    or all-equal data raise :class:`DegenerateFitError` carrying the
    best-effort coefficients.
    """
    if len(points) < 3:
        raise ValueError(f"need at least 3 proportion points, got {len(points)}")
    x = np.array([p.stimulus for p in points], dtype=float)
    y = np.array([p.proportion for p in points], dtype=float)
    n = np.array([p.trial_count for p in points], dtype=float)
    if np.unique(x).size < 2:
        raise ValueError("need at least 2 distinct stimulus levels")
    w = n / n.sum()

    if np.all(y == y[0]):
        p_hat = min(max(float(y[0]), 1.0 / (2.0 * n.sum())), 1.0 - 1.0 / (2.0 * n.sum()))
        flat = SigmoidFit(0.0, math.log(1.0 / p_hat - 1.0), 0.0, len(points), axis,
                          degenerate=True)
        raise DegenerateFitError("all proportions are identical", fit=flat)

    # log-odds are linear in the stimulus under the model; clamp away 0 and 1
    p_init = np.clip(y, 1.0 / (2.0 * n), 1.0 - 1.0 / (2.0 * n))
    z = np.log(1.0 / p_init - 1.0)
    design = np.stack([x, np.ones_like(x)], axis=1)
    sw = np.sqrt(w)[:, None]
    (a0, b0), *_ = np.linalg.lstsq(design * sw, z * sw[:, 0], rcond=None)

    theta = np.array([a0, b0])

    def objective(t):
        r = y - sigmoid(x, t[0], t[1])
        return float(np.sum(w * r * r))

    obj = objective(theta)
    converged = False
    singular = False
    for _ in range(MAX_ITERATIONS):
        f = sigmoid(x, theta[0], theta[1])
        resid = y - f
        g = f * (1.0 - f)
        jac = np.stack([g * x, g], axis=1)  # d(resid)/d(a, b)
        jtj = jac.T @ (jac * w[:, None])
        rhs = -(jac.T @ (w * resid))
        try:
            delta = np.linalg.solve(jtj, rhs)
        except np.linalg.LinAlgError:
            singular = True
            break
        step = 1.0
        cand = theta + delta
        cand_obj = objective(cand)
        while cand_obj > obj and step > 2.0**-40:
            step *= 0.5
            cand = theta + step * delta
            cand_obj = objective(cand)
        if cand_obj > obj:
            converged = True  # no descent left at the numerical floor
            break
        theta, obj = cand, cand_obj
        if float(np.linalg.norm(step * delta)) < STEP_TOLERANCE:
            converged = True
            break

    a, b = float(theta[0]), float(theta[1])
    f = sigmoid(x, a, b)
    y_bar = float(np.sum(w * y))
    ss_tot = float(np.sum(w * (y - y_bar) ** 2))
    r_squared = 1.0 - obj / ss_tot
    saturated = bool(np.all(f * (1.0 - f) < SATURATION_EPS))

    bad = (
        singular
        or not converged
        or saturated
        or a == 0.0
        or not (math.isfinite(a) and math.isfinite(b))
    )
    fit = SigmoidFit(a, b, r_squared, len(points), axis,
                     degenerate=bad, converged=converged and not singular)
    if bad:
        if singular or saturated:
            reason = "responses are fully separated; the slope is unbounded"
        elif not converged:
            reason = f"no convergence within {MAX_ITERATIONS} iterations"
        else:
            reason = "fit collapsed to a flat or non-finite curve"
        raise DegenerateFitError(reason, fit=fit)
    return fit


def invert_sigmoid(fit: SigmoidFit, p: float) -> float:
    """Stimulus at which the fitted curve crosses proportion ``p``."""
    if not 0.0 < p < 1.0:
        raise InvalidProbabilityError(f"p must be strictly inside (0, 1), got {p}")
    if fit.degenerate or fit.a == 0.0:
        raise DegenerateFitError("cannot invert a degenerate fit", fit=fit)
    return (math.log(1.0 / p - 1.0) - fit.b) / fit.a


@dataclass(frozen=True)
class ThresholdSet:
    """Detection thresholds and derived quantities for one response curve.

    ``dt`` and ``ut`` are the down/upscaling detection thresholds (the 75% and
    25% crossings, ordered), ``pse`` the point of subjective equality, ``jnd``
    half the threshold gap, and ``weber_fraction`` the JND relative to the
    physical reference.
    """

    dt: float
    pse: float
    ut: float
    jnd: float
    weber_fraction: float
    reference: float
    units: Units

    def __post_init__(self):
        if not self.dt < self.pse < self.ut:
            raise ValueError(f"need dt < pse < ut, got {self.dt}, {self.pse}, {self.ut}")
        if abs(self.jnd - (self.ut - self.dt) / 2.0) > 1e-9:
            raise ValueError("jnd must equal (ut - dt) / 2")
        if abs(self.pse - (self.ut + self.dt) / 2.0) > 1e-9:
            raise ValueError("pse must equal (ut + dt) / 2")
        if self.reference <= 0.0:
            raise ValueError("reference must be positive")
        if abs(self.weber_fraction - self.jnd / self.reference) > 1e-9:
            raise ValueError("weber_fraction must equal jnd / reference")


def derive_thresholds(fit: SigmoidFit, reference: float, units: Units) -> ThresholdSet:
    """Read PSE, DT, UT, JND, and the Weber fraction off a fitted curve."""
    if reference <= 0.0:
        raise ValueError(f"reference must be positive, got {reference}")
    lo = invert_sigmoid(fit, 0.75)
    hi = invert_sigmoid(fit, 0.25)
    dt, ut = (lo, hi) if lo < hi else (hi, lo)
    pse = invert_sigmoid(fit, 0.5)
    jnd = (ut - dt) / 2.0
    return ThresholdSet(dt, pse, ut, jnd, jnd / reference, reference, units)


def fit_from_quantiles(
    x1: float, p1: float, x2: float, p2: float, axis: Axis = Axis.SIZE
) -> SigmoidFit:
    """The unique sigmoid passing through two (stimulus, proportion) quantiles."""
    for p in (p1, p2):
        if not 0.0 < p < 1.0:
            raise InvalidProbabilityError(f"quantile probabilities must be in (0, 1), got {p}")
    if x1 == x2:
        raise ValueError("quantile stimuli must differ")
    if p1 == p2:
        raise ValueError("quantile probabilities must differ")
    z1 = math.log(1.0 / p1 - 1.0)
    z2 = math.log(1.0 / p2 - 1.0)
    a = (z2 - z1) / (x2 - x1)
    b = z1 - a * x1
    return SigmoidFit(a, b, 1.0, 2, axis)
