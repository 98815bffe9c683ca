"""
Schrodinger propagation, observability estimates and resolvent checks
"""

from .propagator import (
    PropagatorSpec,
    Propagator,
    evolve,
    observability_ratio,
    mass_time_series,
)
from .observability import (
    ObservabilityReport,
    build_ensemble,
    estimate_cobs,
    miller_time,
)
from .resolvent import (
    apply_shifted,
    hautus_residual,
    resolvent_gap_residual,
    resolvent_gap_constant,
)

__all__ = [
    'PropagatorSpec',
    'Propagator',
    'evolve',
    'observability_ratio',
    'mass_time_series',
    'ObservabilityReport',
    'build_ensemble',
    'estimate_cobs',
    'miller_time',
    'apply_shifted',
    'hautus_residual',
    'resolvent_gap_residual',
    'resolvent_gap_constant',
]
