"""Exception taxonomy shared by the library, the CLI, and the HTTP API.

Every error carries a stable machine-readable ``code``. The CLI maps codes
to exit statuses and the API embeds them in structured error bodies, so the
string values here are part of the public contract.
"""

from __future__ import annotations


class IllusionSpaceError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class EmptyDatasetError(IllusionSpaceError):
    """No trials (or no trials left after filtering) to aggregate."""

    code = "empty_dataset"


class MixedGroupError(IllusionSpaceError):
    """Trials from more than one physical object were passed to a single-group op."""

    code = "mixed_group"


class FormatError(IllusionSpaceError):
    """The input file is structurally unreadable (bad header, duplicated header)."""

    code = "format_error"


class DegenerateFitError(IllusionSpaceError):
    """No usable sigmoid fit exists for the data.

    Carries the best-effort coefficients (flagged degenerate) so callers can
    report what was attempted instead of dropping the evidence.
    """

    code = "degenerate_fit"

    def __init__(self, message: str, fit=None):
        super().__init__(message)
        self.fit = fit


class InvalidProbabilityError(IllusionSpaceError):
    """Probability outside the open interval (0, 1) where the sigmoid is invertible."""

    code = "invalid_probability"


class InvalidThresholdOrderError(IllusionSpaceError):
    """Upper threshold does not exceed the lower one."""

    code = "invalid_threshold_order"


class SingularDesignError(IllusionSpaceError):
    """Line fit requested on points without two distinct abscissae."""

    code = "singular_design"


class DegenerateCloudError(IllusionSpaceError):
    """3D line fit requested on a point cloud with no extent."""

    code = "degenerate_cloud"


class ParallelBoundsError(IllusionSpaceError):
    """Threshold bound lines are (numerically) parallel; no vertex exists."""

    code = "parallel_bounds"


class ModelSingularityError(IllusionSpaceError):
    """A closed-form threshold surface was evaluated where its denominator vanishes."""

    code = "model_singularity"


class ZeroAngleUnsupportedError(IllusionSpaceError):
    """Angle incongruence is undefined for a 0-degree physical object."""

    code = "zero_angle_unsupported"


class InvalidDomainError(IllusionSpaceError):
    """Grid specification is empty or has non-positive resolution."""

    code = "invalid_domain"


class InvalidPhysicalSizeError(IllusionSpaceError):
    """Physical reference size must be strictly positive."""

    code = "invalid_physical_size"


class StoreConflictError(IllusionSpaceError):
    """Attempt to overwrite an existing model entry; the store is append-only."""

    code = "store_conflict"


class ModelNotFoundError(IllusionSpaceError):
    """Requested model id is not present in the store."""

    code = "model_not_found"


class ExtrapolationWarning(UserWarning):
    """Inputs fall outside the studied physical domain; results are extrapolated."""
