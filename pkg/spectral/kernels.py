"""
Spectral projection kernels, the Stone formula identity, Hardy's inequality
and the diagonalization check for H_alpha.
"""

import logging
import math
from typing import Tuple

import numpy as np

from grid.quadrature import Grid, GridScheme, gauss_legendre_interval
from grid.sampled import SampledFunction, assert_tail_mass, norm
from scripts.errors import DomainError, DomainViolationError, InvalidParameterError
from specialfn.bessel import BesselOrder, bessel_j_real
from specialfn.hankel import hankel_real
from spectral.bands import POINT_INTERACTION, OperatorSpec
from transforms.kernels import HankelKernel, psi_beta
from transforms.transform import apply, build_kernel

logger = logging.getLogger(__name__)

# GL nodes per unit k for the projection kernel integral
K_NODES_PER_UNIT = 64.0


def _check_window(window: Tuple[float, float]) -> Tuple[float, float]:
    lo, hi = float(window[0]), float(window[1])
    if lo < 0 or hi <= lo:
        raise InvalidParameterError(f"energy window needs 0 <= a < b, got [{lo}, {hi}]")
    return math.sqrt(lo), math.sqrt(hi)


def _synthesis_columns(op: OperatorSpec, x: np.ndarray, k: np.ndarray) -> np.ndarray:
    """C[i, m] such that the kernel is C diag(w_k) C^H"""
    if op.kind == POINT_INTERACTION:
        return math.sqrt(2.0 / math.pi) * psi_beta(x[:, None], k[None, :], op.beta)
    return HankelKernel(op.nu).value(x[:, None], k[None, :]).astype(complex)


def projection_kernel_value(op: OperatorSpec, window: Tuple[float, float], x, y) -> complex:
    """
    Kernel of the spectral projection onto the energy window [a, b]:

        H_alpha: int_{sqrt a}^{sqrt b} k sqrt(xy) J_nu(kx) J_nu(ky) dk
        H^beta:  (2/pi) int_{sqrt a}^{sqrt b} psi_beta(x, k) conj(psi_beta(y, k)) dk
    """
    if x <= 0 or y <= 0:
        raise DomainError(f"projection kernel needs x, y > 0, got ({x}, {y})")
    k_lo, k_hi = _check_window(window)
    k, w = gauss_legendre_interval(k_lo, k_hi, K_NODES_PER_UNIT)
    cx = _synthesis_columns(op, np.array([float(x)]), k)[0]
    cy = _synthesis_columns(op, np.array([float(y)]), k)[0]
    return complex(np.sum(w * cx * np.conj(cy)))


def projection_kernel_matrix(op: OperatorSpec, window: Tuple[float, float], grid: Grid) -> np.ndarray:
    """
    Discretized projection acting on values at grid nodes: P[i, j] = kernel(x_i, x_j) w_j.
    """
    k_lo, k_hi = _check_window(window)
    k, w = gauss_legendre_interval(k_lo, k_hi, K_NODES_PER_UNIT)
    c = _synthesis_columns(op, grid.nodes, k)
    kernel = (c * w[None, :]) @ c.conj().T
    return kernel * grid.weights[None, :]


def resolvent_kernel(sign: int, nu: float, lam: float, x: float, y: float) -> complex:
    """R_alpha(lam +/- i0; x, y) = +/- (pi i / 2) sqrt(xy) J_nu(sqrt(lam) x<) H^{+/-}_nu(sqrt(lam) x>)"""
    s = math.sqrt(lam)
    near, far = min(x, y), max(x, y)
    j = bessel_j_real(nu, s * near)
    h = hankel_real(sign, nu, s * far)
    return sign * 0.5j * math.pi * math.sqrt(x * y) * j * h


def stone_formula_defect(alpha: float, lam: float, x: float, y: float) -> float:
    """
    |(R(lam + i0) - R(lam - i0)) / (2 pi i) - (1/2) sqrt(xy) J_nu(sqrt(lam) x) J_nu(sqrt(lam) y)|
    """
    if not lam > 0:
        raise DomainError(f"Stone formula check needs lam > 0, got {lam}")
    if x <= 0 or y <= 0:
        raise DomainError(f"Stone formula check needs x, y > 0, got ({x}, {y})")
    nu = BesselOrder.from_alpha(alpha).nu
    jump = (resolvent_kernel(1, nu, lam, x, y) - resolvent_kernel(-1, nu, lam, x, y)) / (2j * math.pi)
    s = math.sqrt(lam)
    density = 0.5 * math.sqrt(x * y) * bessel_j_real(nu, s * x) * bessel_j_real(nu, s * y)
    return float(abs(jump - density))


def hardy_ratio(u: SampledFunction) -> float:
    """
    (1/4 int |u|^2 / x^2) / int |u'|^2, at most 1 by Hardy's inequality.

    u' by second-order differences on the nodes (numpy.gradient).

    Raises:
        DomainViolationError: u' vanishes or u is not negligible near x_max
    """
    assert_tail_mass(u)
    x = u.grid.nodes
    w = u.grid.weights
    du = np.gradient(u.values, x, edge_order=2)
    energy = float(np.sum(w * np.abs(du) ** 2))
    if energy == 0:
        raise DomainViolationError("hardy_ratio needs a function with nonzero derivative energy")
    potential = 0.25 * float(np.sum(w * np.abs(u.values) ** 2 / x ** 2))
    return potential / energy


def apply_inverse_square(nu: float, f: SampledFunction) -> SampledFunction:
    """H_alpha f = -f'' + (nu^2 - 1/4) f / x^2, central differences on a uniform midpoint grid"""
    grid = f.grid
    if grid.scheme is not GridScheme.MIDPOINT:
        raise InvalidParameterError("finite-difference H_alpha needs a uniform midpoint grid")
    h = grid.x_max / grid.n
    v = f.values
    second = np.zeros_like(v)
    second[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)
    alpha = nu * nu - 0.25
    return SampledFunction(grid, -second + alpha * v / grid.nodes ** 2)


def diagonalization_defect(nu: float, f: SampledFunction, k_grid: Grid) -> float:
    """
    ‖F_nu(H_alpha f) - k^2 F_nu f‖ / ‖H_alpha f‖ for f supported away from 0 and x_max.
    """
    forward = build_kernel(HankelKernel(nu), f.grid, k_grid)
    hf = apply_inverse_square(nu, f)
    lhs = apply(forward, hf)
    rhs = apply(forward, f).scale(k_grid.nodes ** 2)
    size = norm(hf)
    if size == 0:
        raise DomainViolationError("H_alpha f vanishes on the grid")
    return norm(lhs - rhs) / size
