"""
Observability-constant estimation over seeded ensembles of initial data.

C_obs is the best constant in ‖u0‖² <= C ∫_0^T ∫_Omega |u|². Each ensemble
member gives the lower bound 1 / observability_ratio; random band-limited
packets cover the bulk and gap-centred Gaussians target the worst case.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from grid.quadrature import Grid
from grid.sampled import SampledFunction, norm, tail_mass
from scripts.config import Config
from scripts.errors import InvalidParameterError
from sets.interval_set import IntervalSet
from evolution.propagator import Propagator, PropagatorSpec

logger = logging.getLogger(__name__)

ADVERSARIAL_SHARE = 0.3
GAP_REGION = 0.8
MIN_WIDTH = 0.25


def miller_time(k: float, D: float) -> float:
    """Observation time pi sqrt((1 + k) / D) bought by a spectral estimate with constant k"""
    if not (k > 0 and D > 0):
        raise InvalidParameterError(f"miller_time needs k > 0 and D > 0, got k={k}, D={D}")
    return math.pi * math.sqrt((1.0 + k) / D)


@dataclass(frozen=True, eq=False)
class ObservabilityReport:
    c_obs_estimate: float
    worst_initial_datum: SampledFunction = field(repr=False)
    T: float
    omega: IntervalSet
    miller_T_bound: Optional[float] = None
    residuals: Dict[str, float] = field(default_factory=dict)
    worst_index: int = 0
    worst_kind: str = ""
    ensemble_size: int = 0
    seed: int = 0
    members: Tuple[Dict[str, Any], ...] = ()

    def __post_init__(self):
        for name, value in self.residuals.items():
            if not math.isfinite(value):
                raise InvalidParameterError(f"residual '{name}' is not finite: {value}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c_obs_estimate": self.c_obs_estimate,
            "T": self.T,
            "omega": self.omega.to_dict(),
            "miller_T_bound": self.miller_T_bound,
            "residuals": dict(self.residuals),
            "worst_index": self.worst_index,
            "worst_kind": self.worst_kind,
            "ensemble_size": self.ensemble_size,
            "seed": self.seed,
            "members": [dict(m) for m in self.members],
        }


def _gaps(omega: IntervalSet, limit: float) -> List[Tuple[float, float]]:
    """Maximal intervals of [0, limit] \\ Omega closed off by Omega or the origin, longest first"""
    pieces = omega.pieces(0.0, limit)
    gaps, cursor = [], 0.0
    for a, b in pieces:
        if a > cursor:
            gaps.append((cursor, float(a)))
        cursor = max(cursor, float(b))
    gaps.sort(key=lambda g: (-(g[1] - g[0]), g[0]))
    return gaps


def _gaussian(grid: Grid, centre: float, width: float, k0: float = 0.0, phase: float = 0.0) -> SampledFunction:
    x = grid.nodes
    values = np.exp(-((x - centre) ** 2) / (2.0 * width * width)) * np.cos(k0 * x + phase)
    f = SampledFunction(grid, values)
    return f.scale(1.0 / norm(f))


def build_ensemble(
    x_grid: Grid,
    k_grid: Grid,
    omega: IntervalSet,
    T: float,
    ensemble_size: int,
    seed: int,
) -> List[Tuple[str, SampledFunction, Dict[str, float]]]:
    """
    Unit-norm initial data: about 30% Gaussians centred in gaps of Omega that
    lie inside [0, 0.8 x_max], the rest random modulated packets.

    Random packets keep c + 2 k0 T + 6 sigma < 0.9 x_max so they stay on the
    grid up to time T, and k0 + 6 / sigma < k_max.
    """
    if ensemble_size < 1:
        raise InvalidParameterError(f"ensemble_size must be >= 1, got {ensemble_size}")
    rng = np.random.default_rng(seed)
    x_max = x_grid.x_max
    members = []

    spread = max(MIN_WIDTH, math.sqrt(2.0 * T))
    gaps = _gaps(omega, GAP_REGION * x_max)
    for lo, hi in gaps[: round(ADVERSARIAL_SHARE * ensemble_size)]:
        width = float(np.clip((hi - lo) / 6.0, MIN_WIDTH, spread))
        centre = 0.5 * (lo + hi)
        members.append(("adversarial", _gaussian(x_grid, centre, width),
                        {"centre": centre, "width": width, "k0": 0.0}))

    while len(members) < ensemble_size:
        width = float(rng.uniform(0.5, 2.0))
        centre = float(rng.uniform(min(6.0 * width, 0.5 * x_max), 0.5 * x_max))
        room = (0.9 * x_max - centre - 6.0 * width) / (2.0 * T)
        k_cap = min(max(room, 0.0), k_grid.x_max - 6.0 / width)
        k0 = float(rng.uniform(0.0, k_cap)) if k_cap > 0 else 0.0
        phase = float(rng.uniform(0.0, 2.0 * math.pi))
        members.append(("random", _gaussian(x_grid, centre, width, k0, phase),
                        {"centre": centre, "width": width, "k0": k0}))
    return members


def estimate_cobs(
    spec: PropagatorSpec,
    omega: IntervalSet,
    ensemble_size: int = 32,
    seed: Optional[int] = None,
    miller: Optional[Tuple[float, float]] = None,
    propagator: Optional[Propagator] = None,
    workers: Optional[int] = None,
) -> ObservabilityReport:
    """
    c_obs_estimate = max over the ensemble of 1 / observability_ratio.

    Args:
        spec: propagation setup (operator, grids, T, n_t)
        omega: sensor set
        ensemble_size: number of initial data
        seed: ensemble seed (default Config.DEFAULT_SEED)
        miller: optional (k, D) for the Miller time bound

    Returns:
        ObservabilityReport; ties go to the smallest member index
    """
    seed = Config.DEFAULT_SEED if seed is None else int(seed)
    workers = Config.WORKERS if workers is None else workers
    propagator = propagator or Propagator(spec)
    ensemble = build_ensemble(spec.x_grid, spec.k_grid, omega, spec.T, ensemble_size, seed)

    def run(item) -> float:
        _, u0, _ = item
        ratio = propagator.observability_ratio(u0, omega)
        return math.inf if ratio <= 0 else 1.0 / ratio

    if workers > 1 and len(ensemble) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(run, ensemble))
    else:
        values = [run(item) for item in ensemble]

    worst = max(range(len(values)), key=lambda i: (values[i], -i))
    kind, u_worst, _ = ensemble[worst]

    coarse = propagator.observability_ratio(u_worst, omega, spec.n_t)
    fine = propagator.observability_ratio(u_worst, omega, 2 * spec.n_t)
    final = propagator.evolve(u_worst, spec.T, check_tail=False)
    residuals = {
        "tail_mass_max": max(tail_mass(u0) for _, u0, _ in ensemble),
        "norm_drift": abs(norm(final) / norm(u_worst) - 1.0),
        "time_doubling": abs(coarse - fine) / max(abs(fine), 1e-300),
    }

    members = tuple(
        {"index": i, "kind": k, **params, "c": values[i]}
        for i, (k, _, params) in enumerate(ensemble)
    )
    bound = miller_time(*miller) if miller is not None else None
    logger.info(
        f"c_obs estimate {values[worst]:.6g} over {len(ensemble)} members "
        f"(worst #{worst}, {kind}), T={spec.T}"
    )
    return ObservabilityReport(
        c_obs_estimate=values[worst],
        worst_initial_datum=u_worst,
        T=spec.T,
        omega=omega,
        miller_T_bound=bound,
        residuals=residuals,
        worst_index=worst,
        worst_kind=kind,
        ensemble_size=len(ensemble),
        seed=seed,
        members=members,
    )
