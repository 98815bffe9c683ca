"""
Point interaction H^beta = -d^2/dx^2 with u'(0) = beta u(0).

For beta < 0 the operator has one eigenvalue -beta^2 with eigenfunction
phi_beta(x) = sqrt(2|beta|) e^{beta x}; the rest of the spectrum is
absolutely continuous and diagonalized by Phi_beta.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from grid.quadrature import Grid
from grid.sampled import SampledFunction, inner_product, norm
from scripts.errors import InvalidParameterError


@dataclass(frozen=True)
class PointInteractionSpec:
    beta: float
    bound_state_present: Optional[bool] = None

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise InvalidParameterError(f"beta must be finite, got {self.beta}")
        present = self.beta < 0
        if self.bound_state_present is None:
            object.__setattr__(self, "bound_state_present", present)
        elif bool(self.bound_state_present) != present:
            raise InvalidParameterError(
                f"bound_state_present={self.bound_state_present} contradicts beta={self.beta}"
            )

    @property
    def eigenvalue(self) -> Optional[float]:
        return -self.beta ** 2 if self.bound_state_present else None


def bound_state(spec: PointInteractionSpec, grid: Grid) -> SampledFunction:
    """phi_beta(x) = sqrt(2|beta|) e^{beta x} sampled on grid (beta < 0 only)"""
    if not spec.bound_state_present:
        raise InvalidParameterError(f"no bound state for beta={spec.beta} >= 0")
    beta = spec.beta
    return SampledFunction(grid, math.sqrt(2.0 * abs(beta)) * np.exp(beta * grid.nodes))


def project_ac(spec: PointInteractionSpec, f: SampledFunction) -> SampledFunction:
    """
    Projection onto the absolutely continuous subspace: f - <phi, f> phi.

    phi is renormalized on the grid so the discrete projection is idempotent.
    """
    if not spec.bound_state_present:
        return f
    phi = bound_state(spec, f.grid)
    phi = phi.scale(1.0 / norm(phi))
    return f - phi.scale(inner_product(phi, f))
