"""
Bessel functions of the first kind for real order and nonnegative argument.

Evaluation uses two branches:
    - power series, summed with Kahan compensation in extended precision,
      for x <= |nu| + SERIES_SWITCH
    - Hankel asymptotic expansion J = sqrt(2/(pi x)) (P cos chi - Q sin chi),
      truncated at its smallest term, beyond that

On platforms where numpy.longdouble is plain float64 the series branch loses
roughly three digits near the switchover.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy.special import rgamma

from scripts.errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# series branch used for x <= |nu| + SERIES_SWITCH
SERIES_SWITCH = 17.0

_EXT = np.longdouble
_SERIES_RTOL = 1e-21
_MAX_SERIES_TERMS = 400
_MAX_ASYMPTOTIC_TERMS = 80

# Empirical C_nu in |R_nu(x)| <= C_nu x^{-3/2}, x >= 1
REMAINDER_CONSTANTS: Dict[float, float] = {
    0.0: 0.2,
    0.5: 1e-12,
    1.0: 0.4,
    2.0: 2.0,
}


@dataclass(frozen=True)
class BesselOrder:
    """Order nu >= 0 of J_nu; also carries kappa = 2 nu + 1"""
    nu: float

    def __post_init__(self):
        if not math.isfinite(self.nu):
            raise DomainError(f"Bessel order must be finite, got {self.nu}")
        if self.nu < 0:
            raise DomainError(f"Bessel order must be >= 0, got {self.nu}")

    @property
    def kappa(self) -> float:
        return 2.0 * self.nu + 1.0

    @classmethod
    def from_alpha(cls, alpha: float) -> "BesselOrder":
        """Order nu = sqrt(alpha + 1/4) of the inverse-square operator H_alpha"""
        if alpha < -0.25:
            raise DomainError(f"alpha must be >= -1/4, got {alpha}")
        return cls(math.sqrt(alpha + 0.25))


@dataclass(frozen=True)
class AsymptoticSplit:
    """J_nu(x) = leading + remainder, leading = sqrt(2/(pi x)) cos(x - pi nu/2 - pi/4)"""
    nu: float
    x: float
    leading: float
    remainder: float

    @property
    def value(self) -> float:
        return self.leading + self.remainder

    @property
    def scaled_remainder(self) -> float:
        """|R_nu(x)| x^{3/2}"""
        return abs(self.remainder) * self.x ** 1.5


def _order_value(order: Union[BesselOrder, float]) -> float:
    if isinstance(order, BesselOrder):
        return order.nu
    return BesselOrder(float(order)).nu


def _is_integer(nu: float) -> bool:
    return abs(nu - round(nu)) < 1e-12


def _series(nu: float, x: np.ndarray) -> np.ndarray:
    """Power series sum_n (-1)^n (x/2)^{2n+nu} / (n! Gamma(n+nu+1)), any real non-negative-integer-free nu."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return np.zeros_like(x)

    xe = x.astype(_EXT)
    nu_e = _EXT(nu)
    q = -(xe * xe) / 4

    term = np.ones_like(xe)
    total = np.ones_like(xe)
    comp = np.zeros_like(xe)
    peak = np.ones_like(xe)

    for n in range(_MAX_SERIES_TERMS):
        term = term * q / ((n + 1) * (n + 1 + nu_e))
        # Kahan summation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        peak = np.maximum(peak, np.abs(term))
        if n > 2 and np.all(np.abs(term) <= _SERIES_RTOL * peak):
            break
    else:
        logger.warning(f"Bessel series hit {_MAX_SERIES_TERMS} terms (nu={nu}, x_max={x.max():.3g})")

    with np.errstate(divide="ignore", invalid="ignore"):
        prefactor = np.power(x / 2.0, nu) * rgamma(nu + 1.0)
    return total.astype(float) * prefactor


def _asymptotic_pq(nu: float, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """P, Q of the Hankel expansion and the magnitude of the last retained term."""
    x = np.asarray(x, dtype=float)
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)

    for k in range(1, _MAX_ASYMPTOTIC_TERMS):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        mag = np.abs(term)
        # stop each point at its smallest term
        active &= mag < prev
        if not active.any():
            break
        contrib = np.where(active, term, 0.0)
        if k % 2 == 0:
            p += (-1) ** (k // 2) * contrib
        else:
            q += (-1) ** ((k - 1) // 2) * contrib
        prev = np.where(active, mag, prev)
        if not np.any(term):
            # half-integer orders terminate
            break

    return p, q, prev


def _chi(nu: float, x: np.ndarray) -> np.ndarray:
    return x - (0.5 * nu + 0.25) * math.pi


def _asymptotic_j(nu: float, x: np.ndarray) -> np.ndarray:
    p, q, _ = _asymptotic_pq(nu, x)
    chi = _chi(nu, x)
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j_real(nu: float, x: ArrayLike) -> ArrayLike:
    """J_nu(x) for any real order nu and x >= 0 (negative orders used by the Hankel functions)."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))

    if nu < 0 and _is_integer(nu):
        m = int(round(-nu))
        out = (-1.0) ** m * bessel_j_real(float(m), x)
        return float(out[0]) if scalar else out

    out = np.empty_like(x)
    small = x <= abs(nu) + SERIES_SWITCH
    if small.any():
        out[small] = _series(nu, x[small])
    if (~small).any():
        out[~small] = _asymptotic_j(nu, x[~small])

    return float(out[0]) if scalar else out


def bessel_j(order: Union[BesselOrder, float], x: ArrayLike) -> ArrayLike:
    """
    Bessel function of the first kind J_nu(x).

    Args:
        order: BesselOrder or a nonnegative float
        x: nonnegative argument (scalar or array)

    Returns:
        J_nu(x), same shape as x

    Raises:
        DomainError: nu < 0 or any x < 0
    """
    nu = _order_value(order)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise DomainError("bessel_j requires finite x >= 0")
    return bessel_j_real(nu, x)


def series_branch(order: Union[BesselOrder, float], x: ArrayLike) -> np.ndarray:
    """Series branch alone, for branch-agreement checks."""
    nu = _order_value(order)
    return _series(nu, np.atleast_1d(np.asarray(x, dtype=float)))


def asymptotic_branch(order: Union[BesselOrder, float], x: ArrayLike) -> np.ndarray:
    """Asymptotic branch alone, for branch-agreement checks (x > 0)."""
    nu = _order_value(order)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= 0):
        raise DomainError("asymptotic branch requires x > 0")
    return _asymptotic_j(nu, xs)


def leading_term(nu: float, x: ArrayLike) -> ArrayLike:
    """sqrt(2/(pi x)) cos(x - pi nu/2 - pi/4)"""
    x = np.asarray(x, dtype=float)
    return np.sqrt(2.0 / (math.pi * x)) * np.cos(_chi(nu, x))


def asymptotic_split(order: Union[BesselOrder, float], x: float) -> AsymptoticSplit:
    """
    Split J_nu(x) into the leading oscillatory term and the remainder R_nu(x).

    Raises:
        DomainError: x <= 0
    """
    nu = _order_value(order)
    if not x > 0:
        raise DomainError(f"asymptotic_split requires x > 0, got {x}")
    lead = float(leading_term(nu, x))
    value = float(bessel_j(nu, x))
    return AsymptoticSplit(nu=nu, x=float(x), leading=lead, remainder=value - lead)


def remainder_bound(order: Union[BesselOrder, float]) -> Optional[float]:
    """Recorded C_nu for the x^{-3/2} remainder decay, or None if not recorded."""
    nu = _order_value(order)
    for key, value in REMAINDER_CONSTANTS.items():
        if abs(key - nu) < 1e-12:
            return value
    return None


def recurrence_residual(order: Union[BesselOrder, float], x: ArrayLike) -> ArrayLike:
    """|J_{nu-1}(x) + J_{nu+1}(x) - (2 nu / x) J_nu(x)| for x > 0"""
    nu = _order_value(order)
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise DomainError("recurrence_residual requires x > 0")
    lhs = bessel_j_real(nu - 1.0, xs) + bessel_j_real(nu + 1.0, xs)
    return np.abs(lhs - (2.0 * nu / xs) * bessel_j_real(nu, xs))
