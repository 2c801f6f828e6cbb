"""Reference thresholds measured in the grasping study, and model comparisons.

The toolkit ships the per-object detection thresholds measured in the
five-object calibration study (aggregated over participants, in absolute
units). They serve two purposes: anchoring tests, and a diagnostics report
that quantifies how far the closed-form surfaces sit from the measurements
they were derived from. Deviations are reported, never corrected away.

The 0-degree object has no angle-perception row: angle judgments against an
untapered physical object were not sigmoid-fit in the study.
"""

from __future__ import annotations

from .model import dt_angle, dt_size, ut_angle, ut_size
from .study import ObjectSpec, standard_registry

# Measured size-perception thresholds (cm) per virtual taper angle (deg).
STUDY_SIZE_THRESHOLDS_CM = {
    "3-8": {
        "virtual_angles_deg": [2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0],
        "ut_cm": [4.43, 4.16, 4.16, 4.05, 3.67, 3.95, 3.99],
        "dt_cm": [2.36, 2.30, 2.30, 2.29, 2.23, 2.12, 2.40],
        "pse_cm": [3.39, 3.23, 3.23, 3.17, 2.95, 3.04, 3.20],
    },
    "6-8": {
        "virtual_angles_deg": [2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0],
        "ut_cm": [7.73, 7.71, 7.07, 7.58, 7.37, 7.04, 6.88],
        "dt_cm": [5.49, 5.10, 5.43, 5.49, 5.25, 5.36, 5.58],
        "pse_cm": [6.61, 6.40, 6.25, 6.53, 6.31, 6.20, 6.23],
    },
    "9-8": {
        "virtual_angles_deg": [2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0],
        "ut_cm": [10.89, 11.22, 10.95, 9.98, 10.51, 10.63, 10.19],
        "dt_cm": [8.74, 8.05, 7.99, 8.39, 8.02, 8.40, 7.92],
        "pse_cm": [9.82, 9.63, 9.47, 9.19, 9.27, 9.51, 9.05],
    },
    "6-16": {
        "virtual_angles_deg": [10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 22.0],
        "ut_cm": [7.54, 7.50, 7.66, 7.61, 7.25, 6.86, 6.89],
        "dt_cm": [5.60, 5.43, 5.34, 5.01, 5.25, 5.10, 4.97],
        "pse_cm": [6.57, 6.47, 6.50, 6.31, 6.25, 5.98, 5.93],
    },
    "6-0": {
        "virtual_angles_deg": [-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0],
        "ut_cm": [7.31, 7.33, 7.25, 7.72, 7.83, 7.53, 7.09],
        "dt_cm": [5.76, 5.53, 5.64, 5.74, 5.20, 5.33, 5.37],
        "pse_cm": [6.54, 6.43, 6.45, 6.73, 6.52, 6.43, 6.23],
    },
}

# Measured angle-perception thresholds (deg) per virtual size (cm).
STUDY_ANGLE_THRESHOLDS_DEG = {
    "3-8": {
        "virtual_sizes_cm": [1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        "ut_deg": [4.22, 7.62, 11.23, 12.69, 12.79, 17.86],
        "dt_deg": [2.48, 3.46, 4.52, 4.29, 6.51, 4.31],
        "pse_deg": [3.35, 5.54, 7.88, 8.49, 9.65, 11.08],
    },
    "6-8": {
        "virtual_sizes_cm": [4.0, 5.0, 6.0, 7.0, 8.0, 9.0],
        "ut_deg": [7.70, 8.35, 10.04, 11.06, 11.21, 14.86],
        "dt_deg": [2.88, 3.59, 4.87, 6.00, 6.02, 5.03],
        "pse_deg": [5.29, 5.97, 7.46, 8.53, 8.62, 9.94],
    },
    "9-8": {
        "virtual_sizes_cm": [6.0, 7.0, 8.0, 9.0, 10.0, 11.0],
        "ut_deg": [10.61, 10.39, 11.49, 10.69, 11.77, 11.13],
        "dt_deg": [4.01, 3.78, 5.34, 5.60, 5.02, 4.87],
        "pse_deg": [7.31, 7.08, 8.42, 8.15, 8.39, 8.00],
    },
    "6-16": {
        "virtual_sizes_cm": [4.0, 5.0, 6.0, 7.0, 8.0, 9.0],
        "ut_deg": [13.61, 16.27, 17.17, 16.55, 18.97, 19.1],
        "dt_deg": [3.25, 6.70, 7.89, 9.93, 5.85, 11.16],
        "pse_deg": [8.43, 11.48, 12.53, 13.24, 12.41, 15.13],
    },
}


def _congruent_index(values: list[float], target: float) -> int:
    for i, v in enumerate(values):
        if v == target:
            return i
    raise LookupError(f"no congruent entry {target} in {values}")


def size_table_ratios(object_id: str) -> dict:
    """Measured size thresholds for one object converted to incongruence ratios."""
    table = STUDY_SIZE_THRESHOLDS_CM[object_id]
    physical = standard_registry()[object_id]
    return {
        "angle_ratios": [a / physical.taper_angle if physical.taper_angle else None
                         for a in table["virtual_angles_deg"]],
        "ut_ratios": [u / physical.width_mid for u in table["ut_cm"]],
        "dt_ratios": [d / physical.width_mid for d in table["dt_cm"]],
    }


def angle_table_ratios(object_id: str) -> dict:
    """Measured angle thresholds for one object converted to incongruence ratios."""
    table = STUDY_ANGLE_THRESHOLDS_DEG[object_id]
    physical = standard_registry()[object_id]
    return {
        "size_ratios": [s / physical.width_mid for s in table["virtual_sizes_cm"]],
        "ut_ratios": [u / physical.taper_angle for u in table["ut_deg"]],
        "dt_ratios": [d / physical.taper_angle for d in table["dt_deg"]],
    }


def _congruent_size_entry(object_id: str, physical: ObjectSpec) -> dict:
    table = STUDY_SIZE_THRESHOLDS_CM[object_id]
    idx = _congruent_index(table["virtual_angles_deg"], physical.taper_angle)
    measured_ut = table["ut_cm"][idx] / physical.width_mid
    measured_dt = table["dt_cm"][idx] / physical.width_mid
    model_ut = float(ut_size(physical.width_mid, physical.taper_angle, 1.0, warn=False))
    model_dt = float(dt_size(physical.width_mid, physical.taper_angle, 1.0, warn=False))
    return {
        "axis": "size",
        "measured_ut_ratio": measured_ut,
        "measured_dt_ratio": measured_dt,
        "model_ut_ratio": model_ut,
        "model_dt_ratio": model_dt,
        "ut_abs_deviation": abs(model_ut - measured_ut),
        "dt_abs_deviation": abs(model_dt - measured_dt),
    }


def _congruent_angle_entry(object_id: str, physical: ObjectSpec) -> dict:
    table = STUDY_ANGLE_THRESHOLDS_DEG[object_id]
    idx = _congruent_index(table["virtual_sizes_cm"], physical.width_mid)
    measured_ut = table["ut_deg"][idx] / physical.taper_angle
    measured_dt = table["dt_deg"][idx] / physical.taper_angle
    model_ut = float(ut_angle(physical.width_mid, physical.taper_angle, 1.0, warn=False))
    model_dt = float(dt_angle(physical.width_mid, physical.taper_angle, 1.0, warn=False))
    return {
        "axis": "angle",
        "measured_ut_ratio": measured_ut,
        "measured_dt_ratio": measured_dt,
        "model_ut_ratio": model_ut,
        "model_dt_ratio": model_dt,
        "ut_abs_deviation": abs(model_ut - measured_ut),
        "dt_abs_deviation": abs(model_dt - measured_dt),
    }


def model_table_report() -> dict:
    """Closed-form surfaces vs measured thresholds at every congruent entry.

    Returns a machine-readable document with per-object, per-axis UT/DT
    deviations in ratio units plus overall and size-axis maxima. The
    0-degree object is listed with its size table only.
    """
    registry = standard_registry()
    objects = {}
    all_devs = []
    size_axis_devs = {}
    for object_id in STUDY_SIZE_THRESHOLDS_CM:
        physical = registry[object_id]
        entries = []
        if physical.taper_angle > 0.0:
            size_entry = _congruent_size_entry(object_id, physical)
            angle_entry = _congruent_angle_entry(object_id, physical)
            entries = [size_entry, angle_entry]
            all_devs += [
                size_entry["ut_abs_deviation"],
                size_entry["dt_abs_deviation"],
                angle_entry["ut_abs_deviation"],
                angle_entry["dt_abs_deviation"],
            ]
            size_axis_devs[object_id] = max(
                size_entry["ut_abs_deviation"], size_entry["dt_abs_deviation"]
            )
        objects[object_id] = {
            "physical_size_cm": physical.width_mid,
            "physical_angle_deg": physical.taper_angle,
            "congruent_entries": entries,
        }
    return {
        "kind": "model_table_diagnostics",
        "units": "incongruence ratio",
        "objects": objects,
        "max_abs_deviation": max(all_devs),
        "max_size_axis_deviation_by_object": size_axis_devs,
    }
