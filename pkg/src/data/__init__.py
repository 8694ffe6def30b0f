"""Bundled reference data: the published XL attribute manifest and initial BKS table."""

from src.data.reference import (
    ReferenceRow,
    load_reference_rows,
    reference_attributes,
    reference_bks,
    reference_manifest,
)

__all__ = [
    "ReferenceRow",
    "load_reference_rows",
    "reference_attributes",
    "reference_bks",
    "reference_manifest",
]
