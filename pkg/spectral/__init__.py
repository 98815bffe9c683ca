"""
Band-limited subspaces, sharp spectral-inequality constants and explicit constant formulas
"""

from .bands import (
    POINT_INTERACTION,
    INVERSE_SQUARE,
    PLAIN,
    SHIFTED,
    OperatorSpec,
    BandSpec,
    EnergyWindow,
    BandSubspace,
    band_from_energy,
    band_columns,
    build_band_subspace,
)
from .constants import (
    SharpConstant,
    SweepRow,
    HorizonRow,
    SpectralEstimate,
    compression_matrix,
    sharp_constant,
    sharp_constant_details,
    sweep_constant,
    horizon_sweep,
    spectral_estimate,
)
from .explicit import ExplicitConstants, KovrijkineConstants
from .kernels import (
    projection_kernel_value,
    projection_kernel_matrix,
    resolvent_kernel,
    stone_formula_defect,
    hardy_ratio,
    apply_inverse_square,
    diagonalization_defect,
)

__all__ = [
    'POINT_INTERACTION',
    'INVERSE_SQUARE',
    'PLAIN',
    'SHIFTED',
    'OperatorSpec',
    'BandSpec',
    'EnergyWindow',
    'BandSubspace',
    'band_from_energy',
    'band_columns',
    'build_band_subspace',
    'SharpConstant',
    'SweepRow',
    'HorizonRow',
    'SpectralEstimate',
    'compression_matrix',
    'sharp_constant',
    'sharp_constant_details',
    'sweep_constant',
    'horizon_sweep',
    'spectral_estimate',
    'ExplicitConstants',
    'KovrijkineConstants',
    'projection_kernel_value',
    'projection_kernel_matrix',
    'resolvent_kernel',
    'stone_formula_defect',
    'hardy_ratio',
    'apply_inverse_square',
    'diagonalization_defect',
]
