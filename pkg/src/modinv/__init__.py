"""Exact verification of vector invariants of 2-dimensional orthogonal groups over GF(2^s)."""

from __future__ import annotations

from .engine import CheckRecord, GradedReport, InvariantRing, generation_check, minimality_report
from .field import FieldContext, make_field
from .groups import GroupTable, build_group
from .poly import Polynomial, RingContext

__version__ = "0.1.0"

__all__ = [
    "CheckRecord",
    "FieldContext",
    "GradedReport",
    "GroupTable",
    "InvariantRing",
    "Polynomial",
    "RingContext",
    "build_group",
    "generation_check",
    "make_field",
    "minimality_report",
]
