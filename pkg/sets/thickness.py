"""
Thickness, mu_nu-thickness and the constants that move between them.

A set Omega is (gamma, L)-thick when |Omega ∩ [x, x+L]| >= gamma L for every
x >= 0; it is mu_nu-thick when the same holds for the measure t^{2nu+1} dt
relative to the window's own mu_nu-measure.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from scripts.errors import HorizonMissingError, InvalidParameterError, WitnessMissingError
from sets.interval_set import IntervalSet

logger = logging.getLogger(__name__)

THICK_TO_MU = "thick_to_mu"
MU_TO_THICK = "mu_to_thick"

_EPS_SCAN_POINTS = 2048
_EPS_BISECT_TOL = 1e-6


@dataclass(frozen=True)
class ThicknessWitness:
    """(gamma, L) with inf_x |Omega ∩ [x, x+L]| >= gamma L"""
    gamma: float
    L: float

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise InvalidParameterError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not self.L > 0:
            raise InvalidParameterError(f"L must be positive, got {self.L}")

    def verify(self, omega: IntervalSet, horizon: Optional[float] = None, tol: float = 1e-12) -> bool:
        return thickness_profile(omega, self.L, horizon) >= self.gamma - tol


def _scan_window(omega: IntervalSet, L: float, horizon: Optional[float]) -> Tuple[float, float]:
    """x-range over which the infimum must be searched."""
    if omega.is_periodic:
        # beyond lower_cut the window function repeats with the period
        return 0.0, omega.lower_cut + omega.period
    if horizon is None:
        raise HorizonMissingError("aperiodic sets need a scan horizon")
    if horizon < L:
        raise InvalidParameterError(f"horizon {horizon} shorter than window L={L}")
    return 0.0, float(horizon) - L


def _breakpoints(omega: IntervalSet, L: float, lo: float, hi: float) -> np.ndarray:
    ends = omega.endpoints(lo, hi + L)
    cand = np.concatenate([ends, ends - L, [lo, hi]])
    cand = cand[(cand >= lo) & (cand <= hi)]
    return np.unique(cand)


def thickness_profile(omega: IntervalSet, L: float, horizon: Optional[float] = None) -> float:
    """
    inf over x of |Omega ∩ [x, x+L]| / L, exact for interval unions.

    x -> |Omega ∩ [x, x+L]| is piecewise linear with kinks at endpoints e and
    e - L, so the infimum is attained on that finite candidate set.

    Args:
        omega: sensor set
        L: window length
        horizon: scan horizon, required for aperiodic sets

    Raises:
        HorizonMissingError: aperiodic set without a horizon
    """
    if not L > 0:
        raise InvalidParameterError(f"L must be positive, got {L}")
    if omega.is_empty:
        return 0.0
    if omega.is_full:
        return 1.0

    lo, hi = _scan_window(omega, L, horizon)
    xs = _breakpoints(omega, L, lo, hi)
    values = omega.measure(xs, xs + L) / L
    best = float(values.min())
    logger.debug(f"thickness_profile L={L}: {len(xs)} breakpoints, inf={best:.6g}")
    return max(best, 0.0)


def _mu_interval(a: np.ndarray, b: np.ndarray, m: float) -> np.ndarray:
    """integral of t^{m-1} over [a, b]"""
    return (np.power(b, m) - np.power(a, m)) / m


def _mu_ratio(omega: IntervalSet, x: float, L: float, m: float) -> float:
    pieces = omega.pieces(x, x + L)
    if len(pieces) == 0:
        return 0.0
    num = _mu_interval(pieces[:, 0], pieces[:, 1], m).sum()
    den = _mu_interval(np.asarray(x), np.asarray(x + L), m)
    return float(num / den)


def mu_thickness_profile(
    omega: IntervalSet,
    nu: float,
    L: float,
    horizon: Optional[float] = None,
    periods: int = 64,
    samples_per_piece: int = 8,
) -> float:
    """
    inf over x of mu_nu(Omega ∩ [x, x+L]) / mu_nu([x, x+L]), mu_nu = t^{2nu+1} dt.

    The ratio is not piecewise linear, so each breakpoint piece is also
    sampled at interior points. For periodic sets the scan covers `periods`
    cells after the cut and adds the x -> inf limit, which is the Lebesgue
    profile.
    """
    if nu < 0:
        raise InvalidParameterError(f"nu must be >= 0, got {nu}")
    if not L > 0:
        raise InvalidParameterError(f"L must be positive, got {L}")
    if omega.is_empty:
        return 0.0
    if omega.is_full:
        return 1.0

    m = 2.0 * nu + 2.0
    if omega.is_periodic:
        lo, hi = 0.0, omega.lower_cut + periods * omega.period
    else:
        lo, hi = _scan_window(omega, L, horizon)

    xs = _breakpoints(omega, L, lo, hi)
    if samples_per_piece > 0 and len(xs) > 1:
        frac = np.arange(1, samples_per_piece + 1) / (samples_per_piece + 1)
        interior = (xs[:-1, None] + np.diff(xs)[:, None] * frac[None, :]).ravel()
        xs = np.concatenate([xs, interior])

    best = min(_mu_ratio(omega, float(x), L, m) for x in xs)
    if omega.is_periodic:
        best = min(best, thickness_profile(omega, L))
    return max(best, 0.0)


def _epsilon_search(r: float, L: float, kappa: float) -> float:
    """Largest eps <= rL with h(x) > 0 on [0, eps], by scan then bisection."""
    m = kappa + 1.0
    scale = r ** m / 2.0

    def h(x):
        return ((x + r * L) ** m - x ** m) - scale * ((x + L) ** m - x ** m)

    top = r * L
    xs = np.linspace(0.0, top, _EPS_SCAN_POINTS + 1)
    values = h(xs)
    bad = np.nonzero(values <= 0)[0]
    if len(bad) == 0:
        return top

    lo, hi = xs[bad[0] - 1], xs[bad[0]]
    while hi - lo > _EPS_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def thickness_transfer_constants(direction: str, r: float, L: float, nu: float) -> float:
    """
    Constant carried across the thick <-> mu_nu-thick equivalence.

    mu_to_thick: a mu_nu-thick (r, L) set is thick with r / (kappa + 1).
    thick_to_mu: a thick (r, L) set is mu_nu-thick with
        min{(1/2)^kappa r, (1/2)^kappa r^{kappa+1}, r^{kappa+1} / 2,
            (2^{kappa+1} - 1) / (1 + L/eps)^{kappa+1}}

    Args:
        direction: "thick_to_mu" or "mu_to_thick"
        r: thickness ratio in (0, 1]
        L: window length
        nu: order (kappa = 2 nu + 1)
    """
    if not 0.0 < r <= 1.0:
        raise InvalidParameterError(f"r must lie in (0, 1], got {r}")
    if not L > 0:
        raise InvalidParameterError(f"L must be positive, got {L}")
    if nu < 0:
        raise InvalidParameterError(f"nu must be >= 0, got {nu}")

    kappa = 2.0 * nu + 1.0
    if direction == MU_TO_THICK:
        return r / (kappa + 1.0)
    if direction == THICK_TO_MU:
        eps = _epsilon_search(r, L, kappa)
        candidates = (
            0.5 ** kappa * r,
            0.5 ** kappa * r ** (kappa + 1.0),
            0.5 * r ** (kappa + 1.0),
            (2.0 ** (kappa + 1.0) - 1.0) / (1.0 + L / eps) ** (kappa + 1.0),
        )
        logger.debug(f"thick_to_mu r={r} L={L} nu={nu}: eps={eps:.6g}, candidates={candidates}")
        return float(min(candidates))
    raise InvalidParameterError(f"unknown direction: {direction}")


def left_packed_mu_ratio(r: float, L: float, nu: float, scan_windows: float = 100.0) -> float:
    """
    inf over x of mu_nu([x, x+rL]) / mu_nu([x, x+L]).

    The worst thick set puts its mass at the left of every window; the
    infimum sits at x = 0 where it equals r^{kappa+1}.
    """
    if not 0.0 < r <= 1.0:
        raise InvalidParameterError(f"r must lie in (0, 1], got {r}")
    m = 2.0 * nu + 2.0
    xs = np.linspace(0.0, scan_windows * L, 4001)
    ratios = _mu_interval(xs, xs + r * L, m) / _mu_interval(xs, xs + L, m)
    return float(min(ratios.min(), r ** m))


def trim_tail(
    omega: IntervalSet,
    c: float,
    witness: Optional[ThicknessWitness],
) -> Tuple[IntervalSet, float, float]:
    """
    Remove [0, c) from a thick set and return the new witness.

    Returns:
        (Omega \\ [0, c], L1, r1) with L1 = (floor(c/L) + 2) L, r1 = r / (floor(c/L) + 2)

    Raises:
        WitnessMissingError: no (r, L) witness supplied
    """
    if witness is None:
        raise WitnessMissingError("trim_tail needs the thickness witness (r, L) of Omega")
    if c < 0:
        raise InvalidParameterError(f"c must be >= 0, got {c}")

    blocks = math.floor(c / witness.L) + 2
    L1 = blocks * witness.L
    r1 = witness.gamma / blocks
    trimmed = omega.cut_below(c) if c > 0 else omega
    logger.info(f"trim_tail c={c}: L1={L1}, r1={r1:.6g}")
    return trimmed, L1, r1


def monotone_weight_gap(
    pieces: Sequence[Sequence[float]],
    x: float,
    L: float,
    gamma: float,
    k: float,
) -> float:
    """
    integral_A t^k dt - integral_[x, x+gamma L] t^k dt for A ⊂ [x, x+L], |A| >= gamma L.

    Nonnegative because t^k is increasing.
    """
    arr = np.asarray(pieces, dtype=float).reshape(-1, 2)
    if np.any(arr[:, 0] < x - 1e-12) or np.any(arr[:, 1] > x + L + 1e-12):
        raise InvalidParameterError("A must lie inside [x, x+L]")
    if (arr[:, 1] - arr[:, 0]).sum() < gamma * L - 1e-12:
        raise InvalidParameterError("A must have measure >= gamma L")
    m = k + 1.0
    inside = _mu_interval(arr[:, 0], arr[:, 1], m).sum()
    packed = _mu_interval(np.asarray(x), np.asarray(x + gamma * L), m)
    return float(inside - packed)
