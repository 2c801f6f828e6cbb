"""Shared builders for synthetic trial data.

The planted generator writes CSV rows whose responses follow two known
sigmoids (one per judgment axis) with per-cell counts rounded to the nearest
trial, so refits must land within quantization error of the planted curves.
Both responses are derived from the planted curves on every row because the
congruent cell is shared by both axis sweeps.
"""

from __future__ import annotations

import math

import pytest

CSV_HEADER = (
    "participant_id,physical_id,physical_size_cm,physical_angle_deg,"
    "virtual_size_cm,virtual_angle_deg,response_size,response_angle"
)


def sigmoid_value(a: float, b: float, x: float) -> float:
    return 1.0 / (1.0 + math.exp(a * x + b))


def planted_cell_rows(
    object_id: str,
    s_p: float,
    a_p: float,
    size: float,
    angle: float,
    n: int,
    size_curve: tuple[float, float],
    angle_curve: tuple[float, float],
    participant: str = "p1",
) -> list[str]:
    k_size = round(sigmoid_value(*size_curve, size) * n)
    k_angle = round(sigmoid_value(*angle_curve, angle) * n)
    rows = []
    for i in range(n):
        rs = "smaller" if i < k_size else "larger"
        ra = "less_tilted" if i < k_angle else "more_tilted"
        rows.append(f"{participant},{object_id},{s_p},{a_p},{size},{angle},{rs},{ra}")
    return rows


def planted_csv(
    object_id: str = "6-8",
    s_p: float = 6.0,
    a_p: float = 8.0,
    sizes=range(4, 10),
    angles=range(2, 15, 2),
    congruent_size: float = 6.0,
    congruent_angle: float = 8.0,
    n_size: int = 400,
    n_angle: int = 400,
    size_curve: tuple[float, float] = (1.1, -1.1 * 6.5),
    angle_curve: tuple[float, float] = (0.6, -0.6 * 7.5),
) -> str:
    """Two congruent-axis sweeps for one object, consistent across both judgments."""
    rows = []
    for s in sizes:
        rows += planted_cell_rows(
            object_id, s_p, a_p, float(s), congruent_angle, n_size, size_curve, angle_curve
        )
    for t in angles:
        if float(t) == congruent_angle:
            continue
        rows += planted_cell_rows(
            object_id, s_p, a_p, congruent_size, float(t), n_angle, size_curve, angle_curve
        )
    return CSV_HEADER + "\n" + "\n".join(rows) + "\n"


@pytest.fixture
def small_planted_csv() -> str:
    return planted_csv(n_size=40, n_angle=40)
