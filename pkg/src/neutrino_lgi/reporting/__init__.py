"""Serialization and reproduction of the published maxima."""

from .writers import (
    DEFAULT_SIGNIFICANT_DIGITS,
    emit,
    format_value,
    render_csv,
    render_json,
    write_csv,
    write_json,
)
from .reproduce import (
    DERIVED_TARGETS,
    PUBLISHED_TARGETS,
    DerivedOutcome,
    DerivedTarget,
    JobOutcome,
    PublishedTarget,
    ReproductionReport,
    Tolerances,
    job_parameters,
    reproduce,
)

__all__ = [
    "DEFAULT_SIGNIFICANT_DIGITS",
    "emit",
    "format_value",
    "render_csv",
    "render_json",
    "write_csv",
    "write_json",
    "DERIVED_TARGETS",
    "PUBLISHED_TARGETS",
    "DerivedOutcome",
    "DerivedTarget",
    "JobOutcome",
    "PublishedTarget",
    "ReproductionReport",
    "Tolerances",
    "job_parameters",
    "reproduce",
]
