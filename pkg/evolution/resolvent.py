"""
Resolvent (Hautus-type) inequalities checked on sampled functions.

(H - lam) u is applied spectrally, through the diagonalizing transform and
the bound-state term, never by finite differences.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from grid.quadrature import Grid
from grid.sampled import SampledFunction, assert_tail_mass, inner_product, mass_in, norm
from scripts.errors import InvalidParameterError
from sets.interval_set import IntervalSet
from spectral.bands import OperatorSpec
from transforms.point_interaction import bound_state, project_ac
from transforms.transform import TransformKernel, build_kernel

logger = logging.getLogger(__name__)

# form-domain proxy: share of ‖u‖² allowed in the last 5% of [0, x_max]
HAUTUS_TAIL_TOL = 1e-3


def _kernels(op: OperatorSpec, x_grid: Grid, k_grid: Grid) -> Tuple[TransformKernel, TransformKernel]:
    return (
        build_kernel(op.forward_kernel(), x_grid, k_grid),
        build_kernel(op.adjoint_kernel(), k_grid, x_grid),
    )


def apply_shifted(
    op: OperatorSpec,
    u: SampledFunction,
    lam: float,
    k_grid: Grid,
    kernels: Optional[Tuple[TransformKernel, TransformKernel]] = None,
) -> SampledFunction:
    """(H - lam) u = Phi*((k^2 - lam) Phi u_ac) + (-beta^2 - lam) <phi, u> phi"""
    forward, adjoint = kernels or _kernels(op, u.grid, k_grid)
    point = op.point_spec
    u_ac = project_ac(point, u) if point is not None else u
    g = forward.matrix @ u_ac.values
    values = adjoint.matrix @ ((k_grid.nodes ** 2 - lam) * g)
    if point is not None and point.bound_state_present:
        phi = bound_state(point, u.grid)
        phi = phi.scale(1.0 / norm(phi))
        values = values + (-point.beta ** 2 - lam) * inner_product(phi, u) * phi.values
    return SampledFunction(u.grid, values)


def hautus_residual(
    op: OperatorSpec,
    u: SampledFunction,
    lam: float,
    M: float,
    m: float,
    E: IntervalSet,
    k_grid: Grid,
    kernels: Optional[Tuple[TransformKernel, TransformKernel]] = None,
    tail_tol: float = HAUTUS_TAIL_TOL,
) -> float:
    """
    M ‖(H - lam) u‖² + m ‖u‖²_E - ‖u‖²; nonnegative when the inequality holds for u.

    Raises:
        DomainViolationError: u carries visible mass at the truncation radius
    """
    if not (M > 0 and m > 0):
        raise InvalidParameterError(f"M and m must be positive, got M={M}, m={m}")
    assert_tail_mass(u, tol=tail_tol)
    shifted = apply_shifted(op, u, lam, k_grid, kernels)
    return M * norm(shifted) ** 2 + m * mass_in(u, E) - norm(u) ** 2


def resolvent_gap_residual(
    op: OperatorSpec,
    f: SampledFunction,
    lam: float,
    C: float,
    omega: IntervalSet,
    k_grid: Grid,
    kernels: Optional[Tuple[TransformKernel, TransformKernel]] = None,
    tail_tol: float = HAUTUS_TAIL_TOL,
) -> float:
    """
    (1 + lam)^{-1} ‖((H + 1) - lam) f‖² + ‖f‖²_Omega - C ‖f‖²; nonnegative when
    C ‖f‖² <= (1 + lam)^{-1} ‖((H + 1) - lam) f‖² + ‖f‖²_Omega holds for f.
    """
    if lam < 0:
        raise InvalidParameterError(f"lam must be >= 0, got {lam}")
    if not C > 0:
        raise InvalidParameterError(f"C must be positive, got {C}")
    assert_tail_mass(f, tol=tail_tol)
    shifted = apply_shifted(op, f, lam - 1.0, k_grid, kernels)
    return norm(shifted) ** 2 / (1.0 + lam) + mass_in(f, omega) - C * norm(f) ** 2


def resolvent_gap_constant(c_star: float) -> float:
    """
    Constant for the shifted-window inequality from the sharp constant C* of
    the window {|sqrt(xi^2 + 1) - sqrt(lam)| <= 1}: 1 / (2 C* + 1).

    Off the window |xi^2 + 1 - lam| >= sqrt(1 + lam), so the resolvent term
    controls the off-window part with factor >= 1.
    """
    if not c_star >= 1.0:
        raise InvalidParameterError(f"sharp constant must be >= 1, got {c_star}")
    return 1.0 / (2.0 * c_star + 1.0)
