"""
Special functions: Bessel J_nu, Hankel H^{+/-}_nu, asymptotic decomposition
"""

from .bessel import (
    BesselOrder,
    AsymptoticSplit,
    REMAINDER_CONSTANTS,
    SERIES_SWITCH,
    bessel_j,
    bessel_j_real,
    asymptotic_split,
    asymptotic_branch,
    series_branch,
    leading_term,
    remainder_bound,
    recurrence_residual,
)
from .hankel import hankel_h, hankel_real, wronskian

__all__ = [
    'BesselOrder',
    'AsymptoticSplit',
    'REMAINDER_CONSTANTS',
    'SERIES_SWITCH',
    'bessel_j',
    'bessel_j_real',
    'asymptotic_split',
    'asymptotic_branch',
    'series_branch',
    'leading_term',
    'remainder_bound',
    'recurrence_residual',
    'hankel_h',
    'hankel_real',
    'wronskian',
]
