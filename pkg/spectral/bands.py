"""
Operators, spectral bands and band-limited subspaces.

A band [a, b] lives on the transform side (the k variable). The band space
is spanned by adjoint-transform images of k-node bumps inside [a, b]; an SVD
of the weighted adjoint block gives an orthonormal basis and keeps only the
directions that are concentrated inside [0, x_max].
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.linalg

from grid.quadrature import Grid
from grid.sampled import SampledFunction
from scripts.config import Config
from scripts.errors import (
    ConfigError,
    DomainError,
    EmptyBandError,
    InvalidParameterError,
    RankDeficiencyError,
)
from specialfn.bessel import BesselOrder
from transforms.kernels import (
    BaseKernel,
    HankelKernel,
    PointInteractionAdjointKernel,
    PointInteractionKernel,
)
from transforms.point_interaction import PointInteractionSpec, bound_state
from transforms.transform import TransformKernel, build_kernel

logger = logging.getLogger(__name__)

POINT_INTERACTION = "point_interaction"
INVERSE_SQUARE = "inverse_square"

PLAIN = "plain"
SHIFTED = "shifted"


@dataclass(frozen=True)
class OperatorSpec:
    """H^beta (point interaction) or H_alpha (inverse-square potential)"""
    kind: str
    beta: Optional[float] = None
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind == POINT_INTERACTION:
            if self.beta is None or not math.isfinite(self.beta):
                raise InvalidParameterError("point_interaction needs a finite beta")
        elif self.kind == INVERSE_SQUARE:
            if self.alpha is None or not math.isfinite(self.alpha):
                raise InvalidParameterError("inverse_square needs a finite alpha")
            if self.alpha < -0.25:
                raise DomainError(f"alpha must be >= -1/4, got {self.alpha}")
        else:
            raise InvalidParameterError(f"unknown operator kind '{self.kind}'")

    @classmethod
    def point_interaction(cls, beta: float) -> "OperatorSpec":
        return cls(POINT_INTERACTION, beta=float(beta))

    @classmethod
    def inverse_square(cls, alpha: float) -> "OperatorSpec":
        return cls(INVERSE_SQUARE, alpha=float(alpha))

    @classmethod
    def from_nu(cls, nu: float) -> "OperatorSpec":
        return cls.inverse_square(nu * nu - 0.25)

    @property
    def nu(self) -> Optional[float]:
        if self.kind != INVERSE_SQUARE:
            return None
        return BesselOrder.from_alpha(self.alpha).nu

    @property
    def point_spec(self) -> Optional[PointInteractionSpec]:
        return PointInteractionSpec(self.beta) if self.kind == POINT_INTERACTION else None

    def forward_kernel(self) -> BaseKernel:
        """x -> k transform that diagonalizes the operator"""
        if self.kind == POINT_INTERACTION:
            return PointInteractionKernel(self.beta)
        return HankelKernel(self.nu)

    def adjoint_kernel(self) -> BaseKernel:
        """k -> x synthesis (F_nu is its own inverse)"""
        if self.kind == POINT_INTERACTION:
            return PointInteractionAdjointKernel(self.beta)
        return HankelKernel(self.nu)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == POINT_INTERACTION:
            return {"kind": self.kind, "beta": self.beta}
        return {"kind": self.kind, "alpha": self.alpha, "nu": self.nu}

    @classmethod
    def from_dict(cls, data: Any, pointer: str = "") -> "OperatorSpec":
        if not isinstance(data, dict):
            raise ConfigError("operator must be an object", pointer)
        kind = data.get("kind")
        key = {POINT_INTERACTION: "beta", INVERSE_SQUARE: "alpha"}.get(kind)
        if key is None:
            raise ConfigError(f"operator kind must be '{POINT_INTERACTION}' or '{INVERSE_SQUARE}'", f"{pointer}/kind")
        value = data.get(key)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"'{key}' must be a number", f"{pointer}/{key}")
        try:
            return cls(kind, **{key: float(value)})
        except (DomainError, InvalidParameterError) as exc:
            raise ConfigError(str(exc), f"{pointer}/{key}") from exc


@dataclass(frozen=True)
class BandSpec:
    """Transform-side window [a, b]"""
    operator: OperatorSpec
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidParameterError(f"band edges must be finite, got [{self.a}, {self.b}]")
        if self.a < 0 or self.b <= self.a:
            raise InvalidParameterError(f"band needs 0 <= a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class EnergyWindow:
    lam: float
    D: float

    def __post_init__(self):
        if not self.D > 0:
            raise InvalidParameterError(f"D must be positive, got {self.D}")


def band_from_energy(window: EnergyWindow, op: OperatorSpec, variant: str = PLAIN) -> Optional[BandSpec]:
    """
    Frequency band of an energy window.

    plain:   {xi >= 0 : |xi^2 - lam| <= sqrt(D)}
    shifted: {xi >= 0 : |sqrt(xi^2 + 1) - sqrt(lam)| <= 1}

    Returns:
        BandSpec, or None when the set is empty (or a single point)
    """
    lam = window.lam
    if variant == PLAIN:
        root = math.sqrt(window.D)
        upper = lam + root
        lower = max(0.0, lam - root)
    elif variant == SHIFTED:
        if lam <= 0:
            return None
        s = math.sqrt(lam)
        upper = (s + 1.0) ** 2 - 1.0
        lower = max(0.0, (s - 1.0) ** 2 - 1.0) if s > 1.0 else 0.0
    else:
        raise InvalidParameterError(f"variant must be '{PLAIN}' or '{SHIFTED}', got '{variant}'")

    if upper <= 0:
        logger.debug(f"empty band for lam={lam}, D={window.D}, variant={variant}")
        return None
    return BandSpec(op, math.sqrt(lower), math.sqrt(upper))


@dataclass(frozen=True, eq=False)
class BandSubspace:
    """Orthonormal basis (columns, weighted inner product) of a band-limited space"""
    band: BandSpec
    x_grid: Grid
    k_grid: Grid
    basis: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)
    requested_dim: int = 0
    condition_number: float = 1.0

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def member(self, i: int) -> SampledFunction:
        return SampledFunction(self.x_grid, self.basis[:, i])

    def members(self) -> List[SampledFunction]:
        return [self.member(i) for i in range(self.dim)]

    def gram(self, other: Optional["BandSubspace"] = None) -> np.ndarray:
        """<basis_i, other_j> with the grid weights"""
        other = other or self
        return self.basis.conj().T @ (self.x_grid.weights[:, None] * other.basis)


def band_columns(band: BandSpec, k_grid: Grid) -> np.ndarray:
    """Indices of k-nodes inside [a, b]"""
    k = k_grid.nodes
    return np.nonzero((k >= band.a) & (k <= band.b))[0]


def build_band_subspace(
    band: BandSpec,
    x_grid: Grid,
    k_grid: Grid,
    dim: Optional[int] = None,
    adjoint: Optional[TransformKernel] = None,
    concentration_tol: Optional[float] = None,
    dim_cap: Optional[int] = None,
) -> BandSubspace:
    """
    Orthonormal basis of the band space on x_grid.

    Args:
        band: transform-side window
        x_grid: spatial grid
        k_grid: frequency grid
        dim: requested dimension (default: k-nodes in the band, capped)
        adjoint: prebuilt adjoint kernel k_grid -> x_grid, shared across sweeps
        concentration_tol: keep directions with mass >= 1 - tol inside [0, x_max]

    Raises:
        EmptyBandError: no k-node inside [a, b]
        RankDeficiencyError: no direction is concentrated enough
    """
    tol = Config.CONCENTRATION_TOL if concentration_tol is None else concentration_tol
    cap = Config.BAND_DIM_CAP if dim_cap is None else dim_cap
    if band.a >= k_grid.x_max:
        raise EmptyBandError(f"band [{band.a}, {band.b}] lies beyond k_max={k_grid.x_max}")
    cols = band_columns(band, k_grid)
    if len(cols) == 0:
        raise EmptyBandError(f"no k-node inside band [{band.a}, {band.b}]")

    if dim is None:
        dim = min(len(cols), cap)
    if not 1 <= dim <= len(cols):
        raise InvalidParameterError(f"dim must lie in [1, {len(cols)}] for this band, got {dim}")

    if adjoint is None:
        adjoint = build_kernel(band.operator.adjoint_kernel(), k_grid, x_grid)
    elif not (adjoint.source_grid.same_as(k_grid) and adjoint.target_grid.same_as(x_grid)):
        raise InvalidParameterError("adjoint kernel grids do not match the band subspace grids")

    sqrt_wx = np.sqrt(x_grid.weights)
    wk = k_grid.weights[cols]
    # (W_x^{1/2} K W_k^{1/2}) restricted to the band: near-isometric from l2(band)
    block = sqrt_wx[:, None] * adjoint.matrix[:, cols] / np.sqrt(wk)[None, :]

    spec = band.operator.point_spec
    if spec is not None and spec.bound_state_present:
        phi = sqrt_wx * bound_state(spec, x_grid).values
        phi = phi / np.linalg.norm(phi)
        block = block - np.outer(phi, phi.conj() @ block)

    u, sigma, _ = scipy.linalg.svd(block, full_matrices=False)
    condition = float(sigma[0] / sigma[-1]) if sigma[-1] > 0 else float("inf")
    keep = np.nonzero(sigma ** 2 >= 1.0 - tol)[0]
    if len(keep) == 0:
        raise RankDeficiencyError(
            f"no direction of band [{band.a}, {band.b}] is concentrated in [0, {x_grid.x_max}] "
            f"(largest mass {sigma[0] ** 2:.3e})",
            condition_number=condition,
        )
    if len(keep) < dim:
        logger.warning(
            f"band [{band.a:.4g}, {band.b:.4g}]: only {len(keep)} of {dim} requested directions "
            f"are concentrated inside [0, {x_grid.x_max}]"
        )
    keep = keep[:dim]

    basis = u[:, keep] / sqrt_wx[:, None]
    logger.debug(f"band subspace [{band.a:.4g}, {band.b:.4g}]: dim={len(keep)}, cond={condition:.3g}")
    return BandSubspace(
        band=band,
        x_grid=x_grid,
        k_grid=k_grid,
        basis=basis,
        singular_values=sigma[keep],
        requested_dim=dim,
        condition_number=condition,
    )
