"""Exact p-element counting, M_p computations and bound checks for small finite groups."""

from .census import CensusResult, count_pi_elements, proportion_p
from .engine import CapExceeded, FiniteGroup, closure
from .exact import ExactBound, eb_cmp, eb_from_integer
from .mp import mp_group, mp_simple

__all__ = [
    "CapExceeded",
    "CensusResult",
    "ExactBound",
    "FiniteGroup",
    "closure",
    "count_pi_elements",
    "eb_cmp",
    "eb_from_integer",
    "mp_group",
    "mp_simple",
    "proportion_p",
]
__version__ = "0.1.0"
