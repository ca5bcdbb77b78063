"""
Fusión de evidencia de Dempster-Shafer
"""

from .evidence import (
    BBA,
    CombinationResult,
    bba_from_probability,
    combine_with_conflict,
    ds_combine,
    pignistic,
    pignistic_clutter,
)

__all__ = [
    "BBA",
    "CombinationResult",
    "bba_from_probability",
    "combine_with_conflict",
    "ds_combine",
    "pignistic",
    "pignistic_clutter",
]
