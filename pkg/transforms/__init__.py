"""
Quadrature-backed transforms: Hankel, modified Hankel, point interaction, cosine phase
"""

from .kernels import (
    BaseKernel,
    HankelKernel,
    ModifiedHankelKernel,
    PointInteractionKernel,
    PointInteractionAdjointKernel,
    CosPhaseKernel,
    kernel_from_dict,
    psi_beta,
)
from .transform import TransformKernel, build_kernel, apply
from .point_interaction import PointInteractionSpec, bound_state, project_ac
from .validator import (
    TransformValidator,
    plancherel_defect,
    involution_defect,
    adjoint_defect,
    t_beta_frame_bounds,
    t_beta_exact_bounds,
    modified_hankel_conjugation_defect,
    point_interaction_closed_form_defect,
    gaussian_x_family,
    modulated_gaussian_family,
    log_gaussian_family,
    frame_test_family,
    band_limited_family,
)

__all__ = [
    'BaseKernel',
    'HankelKernel',
    'ModifiedHankelKernel',
    'PointInteractionKernel',
    'PointInteractionAdjointKernel',
    'CosPhaseKernel',
    'kernel_from_dict',
    'psi_beta',
    'TransformKernel',
    'build_kernel',
    'apply',
    'PointInteractionSpec',
    'bound_state',
    'project_ac',
    'TransformValidator',
    'plancherel_defect',
    'involution_defect',
    'adjoint_defect',
    't_beta_frame_bounds',
    't_beta_exact_bounds',
    'modified_hankel_conjugation_defect',
    'point_interaction_closed_form_defect',
    'gaussian_x_family',
    'modulated_gaussian_family',
    'log_gaussian_family',
    'frame_test_family',
    'band_limited_family',
]
