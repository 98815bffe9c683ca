"""
Report layer for numerical outputs.
Does NOT modify any computation.
"""

from adapters.reports import (
    SCHEMA_VERSION,
    to_jsonable,
    canonical_json,
    config_hash,
    build_report,
    write_json,
    rows_to_frame,
    write_csv,
    summarize_ratio,
)

__all__ = [
    "SCHEMA_VERSION",
    "to_jsonable",
    "canonical_json",
    "config_hash",
    "build_report",
    "write_json",
    "rows_to_frame",
    "write_csv",
    "summarize_ratio",
]
