"""
Sensor sets: interval unions, thickness profiles, transfer constants
"""

from .interval_set import IntervalSet, periodic_set, square_gaps_set
from .thickness import (
    THICK_TO_MU,
    MU_TO_THICK,
    ThicknessWitness,
    thickness_profile,
    mu_thickness_profile,
    thickness_transfer_constants,
    left_packed_mu_ratio,
    trim_tail,
    monotone_weight_gap,
)

__all__ = [
    'IntervalSet',
    'periodic_set',
    'square_gaps_set',
    'THICK_TO_MU',
    'MU_TO_THICK',
    'ThicknessWitness',
    'thickness_profile',
    'mu_thickness_profile',
    'thickness_transfer_constants',
    'left_packed_mu_ratio',
    'trim_tail',
    'monotone_weight_gap',
]
