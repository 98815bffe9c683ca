"""
Hankel functions H^{+/-}_nu = J_nu +/- i Y_nu.

Away from integer order, in the series region:
    H^{+/-}_nu(x) = (J_{-nu}(x) - e^{-/+ i nu pi} J_nu(x)) / (+/- i sin(nu pi))
This covers half-integer orders too. Within NEAR_INTEGER of an integer n the
sin(nu pi) division loses digits, so H_nu is interpolated in the order from
connection-formula values at n +/- h/2 and n +/- h. Beyond the switchover the
asymptotic P, Q give H^{+/-} directly.
"""

import math
from typing import Union

import numpy as np

from scripts.errors import DomainError, InvalidParameterError
from specialfn.bessel import (
    SERIES_SWITCH,
    BesselOrder,
    ArrayLike,
    _asymptotic_pq,
    _chi,
    _order_value,
    bessel_j_real,
)

_LIMIT_STEP = 1e-3
NEAR_INTEGER = 1e-4

# order offsets, in units of _LIMIT_STEP, of the interpolation stencil around n
_STENCIL = np.array([-1.0, -0.5, 0.5, 1.0])


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise InvalidParameterError(f"sign must be +1 or -1, got {sign}")
    return sign


def _connection_formula(sign: int, nu: float, x: np.ndarray) -> np.ndarray:
    s = math.sin(nu * math.pi)
    phase = np.exp(-sign * 1j * nu * math.pi)
    return (bessel_j_real(-nu, x) - phase * bessel_j_real(nu, x)) / (sign * 1j * s)


def _stencil_weights(d: float) -> np.ndarray:
    """Lagrange weights at offset d (units of _LIMIT_STEP) on _STENCIL"""
    weights = np.ones(len(_STENCIL))
    for i, node in enumerate(_STENCIL):
        others = np.delete(_STENCIL, i)
        weights[i] = np.prod((d - others) / (node - others))
    return weights


def _series_region(sign: int, nu: float, x: np.ndarray) -> np.ndarray:
    n = round(nu)
    if abs(nu - n) >= NEAR_INTEGER:
        return _connection_formula(sign, nu, x)

    # cubic in the order through n + h{-1, -1/2, 1/2, 1}; error O(h^4)
    weights = _stencil_weights((nu - n) / _LIMIT_STEP)
    out = np.zeros(x.shape, dtype=complex)
    for w, node in zip(weights, _STENCIL):
        out += w * _connection_formula(sign, n + node * _LIMIT_STEP, x)
    return out


def hankel_real(sign: int, nu: float, x: ArrayLike) -> ArrayLike:
    """H^{sign}_nu(x) for any real order and x > 0."""
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.shape, dtype=complex)

    large = xs > abs(nu) + SERIES_SWITCH
    if large.any():
        xl = xs[large]
        p, q, _ = _asymptotic_pq(nu, xl)
        out[large] = np.sqrt(2.0 / (math.pi * xl)) * (p + sign * 1j * q) * np.exp(sign * 1j * _chi(nu, xl))
    if (~large).any():
        out[~large] = _series_region(sign, nu, xs[~large])

    return complex(out[0]) if scalar else out


def hankel_h(sign: int, order: Union[BesselOrder, float], x: ArrayLike) -> ArrayLike:
    """
    Hankel function of the first (sign=+1) or second (sign=-1) kind.

    Args:
        sign: +1 or -1
        order: BesselOrder or nonnegative float
        x: positive argument (scalar or array)

    Returns:
        complex H^{sign}_nu(x)

    Raises:
        DomainError: any x <= 0
        InvalidParameterError: sign not in {+1, -1}
    """
    sign = _check_sign(sign)
    nu = _order_value(order)
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0) or not np.all(np.isfinite(xs)):
        raise DomainError("hankel_h requires finite x > 0")
    return hankel_real(sign, nu, x)


def wronskian(order: Union[BesselOrder, float], x: ArrayLike, lam: float = 1.0) -> ArrayLike:
    """
    W(sqrt(x) J_nu(sqrt(lam) x), sqrt(x) H^+_nu(sqrt(lam) x)), which equals 2i/pi.

    Uses Z'_nu = Z_{nu-1} - (nu/z) Z_nu for both functions, so the nu/z terms cancel.
    """
    nu = _order_value(order)
    if lam <= 0:
        raise DomainError(f"wronskian requires lam > 0, got {lam}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise DomainError("wronskian requires x > 0")
    k = math.sqrt(lam)
    z = k * xs
    j, j_prev = bessel_j_real(nu, z), bessel_j_real(nu - 1.0, z)
    h, h_prev = hankel_real(1, nu, z), hankel_real(1, nu - 1.0, z)
    return xs * k * (j * h_prev - j_prev * h)
