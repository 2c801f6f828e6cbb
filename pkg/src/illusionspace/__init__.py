"""Psychometric thresholds and illusion-space geometry for proxy-object grasping.

In retargeted VR grasping one physical proxy stands in for many virtual
objects; the toolkit answers how far the two may disagree before users
notice. It covers the full pipeline:

* :mod:`~illusionspace.study`: object geometry, trial records, CSV parsing,
  seeded condition schedules, finger retargeting.
* :mod:`~illusionspace.psychometry`: 2AFC proportion aggregation, weighted
  sigmoid fits, detection thresholds (PSE, DT, UT, JND, Weber fraction).
* :mod:`~illusionspace.pipeline`: per-object fits over a whole dataset plus
  threshold-line regressions.
* :mod:`~illusionspace.model`: closed-form threshold surfaces, illusion-space
  quadrilaterals, containment checks, inverse grid queries.
* :mod:`~illusionspace.cli` / :mod:`~illusionspace.api`: a CLI and an HTTP
  API emitting identical canonical JSON, plus an append-only model store.
"""

from .errors import (
    DegenerateCloudError,
    DegenerateFitError,
    EmptyDatasetError,
    ExtrapolationWarning,
    FormatError,
    IllusionSpaceError,
    InvalidDomainError,
    InvalidPhysicalSizeError,
    InvalidProbabilityError,
    InvalidThresholdOrderError,
    MixedGroupError,
    ModelNotFoundError,
    ModelSingularityError,
    ParallelBoundsError,
    SingularDesignError,
    StoreConflictError,
    ZeroAngleUnsupportedError,
)
from .model import (
    ContainmentReport,
    GridSpec,
    IllusionSpace,
    IncongruenceAxis,
    Line3D,
    LineRole,
    ModelInput,
    RegionMask,
    ThresholdLine,
    build_illusion_space,
    containment_mask,
    contains,
    dt_angle,
    dt_size,
    fit_threshold_line,
    fit_vertex_line_3d,
    in_studied_domain,
    intersect_threshold_lines,
    inverse_query,
    pse_from_thresholds,
    ut_angle,
    ut_size,
)
from .pipeline import (
    AxisCell,
    AxisSummary,
    ObjectFitResult,
    SkippedCell,
    StudyFitReport,
    fit_study,
)
from .psychometry import (
    Axis,
    ProportionPoint,
    SigmoidFit,
    ThresholdSet,
    Units,
    aggregate_proportions,
    derive_thresholds,
    fit_from_quantiles,
    fit_objective,
    fit_sigmoid,
    invert_sigmoid,
    is_count_ratio,
    sigmoid,
)
from .store import ModelStore, input_digest
from .study import (
    AngleResponse,
    Condition,
    ConditionSchedule,
    ObjectKind,
    ObjectSpec,
    ParseIssue,
    ProtocolEntry,
    SizeResponse,
    TrialRecord,
    generate_conditions,
    is_feasible,
    parse_trials,
    retarget_finger_distance,
    serialize_trials,
    standard_protocol,
    standard_registry,
)

__version__ = "0.1.0"
