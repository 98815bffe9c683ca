"""
Quadrature grids and sampled functions on the half-line
"""

from .quadrature import Grid, GridScheme, make_grid, gauss_legendre_interval, PANEL_NODES
from .sampled import (
    SampledFunction,
    inner_product,
    norm,
    restrict,
    omega_weights,
    mass_in,
    tail_mass,
    assert_tail_mass,
)

__all__ = [
    'Grid',
    'GridScheme',
    'make_grid',
    'gauss_legendre_interval',
    'PANEL_NODES',
    'SampledFunction',
    'inner_product',
    'norm',
    'restrict',
    'omega_weights',
    'mass_in',
    'tail_mass',
    'assert_tail_mass',
]
