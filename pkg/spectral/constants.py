"""
Sharp spectral-inequality constants and their sweeps.

For an orthonormal band basis V, the compression G = V^H W 1_Omega V has
eigenvalues in [0, 1]; the sharp constant in ‖f‖² <= C ‖f‖²_Omega over the
band space is C* = 1 / lambda_min(G).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from grid.quadrature import Grid, GridScheme, make_grid, PANEL_NODES
from scripts.config import Config
from scripts.errors import DegenerateSubspaceError, EmptyBandError, InvalidParameterError
from sets.interval_set import IntervalSet
from spectral.bands import (
    PLAIN,
    BandSpec,
    BandSubspace,
    EnergyWindow,
    OperatorSpec,
    band_from_energy,
    build_band_subspace,
)
from transforms.transform import build_kernel

logger = logging.getLogger(__name__)

# lambda_min below this counts as "no inequality"
LAMBDA_FLOOR = 1e-12


@dataclass(frozen=True)
class SharpConstant:
    c_star: float
    lambda_min: float
    dim: int
    eigenvalues: Tuple[float, ...] = ()

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.c_star)


@dataclass(frozen=True)
class SweepRow:
    """One CSV row: a, b, C_star, lambda_min, dim, n_grid"""
    a: float
    b: float
    C_star: float
    lambda_min: float
    dim: int
    n_grid: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class HorizonRow:
    x_max: float
    C_star: float
    lambda_min: float
    dim: int
    n_grid: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def compression_matrix(sub: BandSubspace, omega: IntervalSet) -> np.ndarray:
    """G_ij = <basis_i, 1_Omega basis_j>"""
    mask = omega.contains(sub.x_grid.nodes)
    weighted = (sub.x_grid.weights * mask)[:, None] * sub.basis
    g = sub.basis.conj().T @ weighted
    return 0.5 * (g + g.conj().T)


def sharp_constant_details(sub: BandSubspace, omega: IntervalSet) -> SharpConstant:
    """
    Raises:
        DegenerateSubspaceError: the subspace has no basis vectors
    """
    if sub.dim == 0:
        raise DegenerateSubspaceError("band subspace is empty")
    eigenvalues = scipy.linalg.eigh(compression_matrix(sub, omega), eigvals_only=True)
    lam_min = float(eigenvalues[0])
    c_star = math.inf if lam_min < LAMBDA_FLOOR else 1.0 / lam_min
    return SharpConstant(c_star=c_star, lambda_min=lam_min, dim=sub.dim, eigenvalues=tuple(eigenvalues.tolist()))


def sharp_constant(sub: BandSubspace, omega: IntervalSet) -> float:
    """C* = 1 / lambda_min(G), math.inf when lambda_min < 1e-12"""
    return sharp_constant_details(sub, omega).c_star


def sweep_constant(
    op: OperatorSpec,
    omega: IntervalSet,
    band_length: float,
    a_values: Sequence[float],
    x_grid: Grid,
    k_grid: Grid,
    dim: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[SweepRow]:
    """
    C*(a) for the bands [a, a + band_length].

    The adjoint kernel is built once and shared; items run on a thread pool
    and come back in the order of a_values.

    Raises:
        InvalidParameterError: a band leaves [0, k_max]
    """
    if not band_length > 0:
        raise InvalidParameterError(f"band_length must be positive, got {band_length}")
    for a in a_values:
        if a < 0 or a + band_length > k_grid.x_max:
            raise InvalidParameterError(
                f"band [{a}, {a + band_length}] does not fit inside [0, k_max={k_grid.x_max}]"
            )
    workers = Config.WORKERS if workers is None else workers
    adjoint = build_kernel(op.adjoint_kernel(), k_grid, x_grid)

    def run(a: float) -> SweepRow:
        band = BandSpec(op, float(a), float(a) + band_length)
        sub = build_band_subspace(band, x_grid, k_grid, dim=dim, adjoint=adjoint)
        result = sharp_constant_details(sub, omega)
        logger.debug(f"sweep a={a}: C*={result.c_star:.6g}, dim={result.dim}")
        return SweepRow(band.a, band.b, result.c_star, result.lambda_min, result.dim, x_grid.n)

    if workers > 1 and len(a_values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, a_values))
    else:
        rows = [run(a) for a in a_values]

    logger.info(f"sweep finished: {len(rows)} bands of length {band_length} for {op.kind}")
    return rows


def _grid_for_horizon(x_max: float, nodes_per_unit: float, scheme: GridScheme) -> Grid:
    n = max(PANEL_NODES, PANEL_NODES * math.ceil(nodes_per_unit * x_max / PANEL_NODES))
    return make_grid(x_max, n, scheme)


def horizon_sweep(
    op: OperatorSpec,
    omega: IntervalSet,
    band: Tuple[float, float],
    horizons: Sequence[float],
    k_grid: Grid,
    nodes_per_unit: float = 25.6,
    scheme: GridScheme = GridScheme.GAUSS_LEGENDRE,
    dim: Optional[int] = None,
) -> List[HorizonRow]:
    """
    C* for one band while the observation horizon x_max grows.

    Thick sets stay bounded; sets with growing gaps blow up as wider gaps
    fit inside the horizon.
    """
    rows = []
    spec = BandSpec(op, float(band[0]), float(band[1]))
    for x_max in horizons:
        x_grid = _grid_for_horizon(float(x_max), nodes_per_unit, GridScheme(scheme))
        sub = build_band_subspace(spec, x_grid, k_grid, dim=dim)
        result = sharp_constant_details(sub, omega)
        logger.info(f"horizon x_max={x_max}: C*={result.c_star:.6g} (dim={result.dim}, n={x_grid.n})")
        rows.append(HorizonRow(float(x_max), result.c_star, result.lambda_min, result.dim, x_grid.n))
    return rows


@dataclass(frozen=True)
class SpectralEstimate:
    k: float
    D: float
    rows: Tuple[Dict[str, Any], ...]
    miller_time: float


def spectral_estimate(
    op: OperatorSpec,
    omega: IntervalSet,
    D: float,
    lambdas: Sequence[float],
    x_grid: Grid,
    k_grid: Grid,
    dim: Optional[int] = None,
) -> SpectralEstimate:
    """
    k = max over lambda of C* on the band {|xi^2 - lam| <= sqrt(D)}, plus the
    observation time it buys.

    Empty bands (lam < -sqrt(D)) and bands beyond k_max are skipped.
    """
    from evolution.observability import miller_time

    adjoint = build_kernel(op.adjoint_kernel(), k_grid, x_grid)
    rows = []
    worst = 0.0
    for lam in lambdas:
        band = band_from_energy(EnergyWindow(float(lam), float(D)), op, PLAIN)
        if band is None:
            rows.append({"lambda": float(lam), "a": None, "b": None, "C_star": None, "skipped": "empty band"})
            continue
        try:
            sub = build_band_subspace(band, x_grid, k_grid, dim=dim, adjoint=adjoint)
        except EmptyBandError as exc:
            logger.warning(f"spectral estimate lam={lam}: {exc}")
            rows.append({"lambda": float(lam), "a": band.a, "b": band.b, "C_star": None, "skipped": "outside grid"})
            continue
        c = sharp_constant(sub, omega)
        worst = max(worst, c)
        rows.append({"lambda": float(lam), "a": band.a, "b": band.b, "C_star": c, "skipped": None})

    if worst == 0.0:
        raise EmptyBandError("no energy window met the frequency grid")
    t_bound = miller_time(worst, D) if math.isfinite(worst) else math.inf
    logger.info(f"spectral estimate D={D}: k={worst:.6g}, miller time={t_bound:.6g}")
    return SpectralEstimate(k=worst, D=float(D), rows=tuple(rows), miller_time=t_bound)
