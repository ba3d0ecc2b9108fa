"""Exact values, certified bounds and determinant inequalities for the overpartition function."""

from .certified_real import CertifiedReal, Comparison, DomainError, compare, enclose_pi
from .exact_seq import (
    CacheFormatError,
    OverpartitionCache,
    load_cache,
    overpartition,
    overpartition_range,
    save_cache,
)

__version__ = "0.1.0"

__all__ = [
    "CacheFormatError",
    "CertifiedReal",
    "Comparison",
    "DomainError",
    "OverpartitionCache",
    "compare",
    "enclose_pi",
    "load_cache",
    "overpartition",
    "overpartition_range",
    "save_cache",
]
