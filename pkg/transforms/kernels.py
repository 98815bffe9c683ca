"""
Transform kernels: the integral kernel of each transform as a function of
(source coordinate, target coordinate), plus the source-measure factor that
gets folded into the matrix columns.
"""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

from scripts.errors import InvalidParameterError
from specialfn.bessel import BesselOrder, bessel_j_real

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def psi_beta(x, k, beta: float) -> np.ndarray:
    """
    Generalized eigenfunction of H^beta:
        psi_beta(x, k) = (beta sin(kx) + k cos(kx)) / (beta - ik)

    satisfies -psi'' = k^2 psi, psi'(0, k) = beta psi(0, k). At k = 0 the
    value is the limit: 0 for beta != 0, i for beta = 0.
    """
    x = np.asarray(x, dtype=float)
    k = np.asarray(k, dtype=float)
    if beta == 0.0:
        return 1j * np.cos(k * x)
    numerator = beta * np.sin(k * x) + k * np.cos(k * x)
    return numerator / (beta - 1j * k)


class BaseKernel(ABC):
    """Integral kernel K(s, t) with source variable s and target variable t"""

    kind: str = "abstract"

    @abstractmethod
    def value(self, source: np.ndarray, target: np.ndarray) -> np.ndarray:
        """K(s, t), broadcasting over the two arrays"""

    def source_weight(self, source: np.ndarray) -> np.ndarray:
        """Measure density on the source axis (1 for Lebesgue)"""
        return np.ones_like(np.asarray(source, dtype=float))

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, **self.params()}

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.params() == other.params()

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.params().items()))))


class HankelKernel(BaseKernel):
    """F_nu: sqrt(x k) J_nu(x k). Self-inverse, so source and target roles are symmetric."""

    kind = "hankel"

    def __init__(self, order):
        self.order = order if isinstance(order, BesselOrder) else BesselOrder(float(order))

    @property
    def nu(self) -> float:
        return self.order.nu

    def value(self, source, target):
        z = np.asarray(source, dtype=float) * np.asarray(target, dtype=float)
        return np.sqrt(z) * bessel_j_real(self.nu, z)

    def params(self):
        return {"nu": self.nu}


class ModifiedHankelKernel(BaseKernel):
    """H_nu: (x k)^{-nu} J_nu(x k) against t^{2nu+1} dt"""

    kind = "modified_hankel"

    def __init__(self, order):
        self.order = order if isinstance(order, BesselOrder) else BesselOrder(float(order))

    @property
    def nu(self) -> float:
        return self.order.nu

    def value(self, source, target):
        z = np.asarray(source, dtype=float) * np.asarray(target, dtype=float)
        return np.power(z, -self.nu) * bessel_j_real(self.nu, z)

    def source_weight(self, source):
        return np.power(np.asarray(source, dtype=float), 2.0 * self.nu + 1.0)

    def params(self):
        return {"nu": self.nu}


class PointInteractionKernel(BaseKernel):
    """Phi_beta: sqrt(2/pi) psi_beta(x, k), source x, target k"""

    kind = "point_interaction"

    def __init__(self, beta: float):
        if not math.isfinite(beta):
            raise InvalidParameterError(f"beta must be finite, got {beta}")
        self.beta = float(beta)

    def value(self, source, target):
        return SQRT_2_OVER_PI * psi_beta(source, target, self.beta)

    def params(self):
        return {"beta": self.beta}


class PointInteractionAdjointKernel(PointInteractionKernel):
    """Phi*_beta: sqrt(2/pi) conj(psi_beta(x, k)), source k, target x"""

    kind = "point_interaction_adjoint"

    def value(self, source, target):
        return SQRT_2_OVER_PI * np.conj(psi_beta(target, source, self.beta))


class CosPhaseKernel(BaseKernel):
    """T_b: sqrt(2/pi) cos(x k - b); b = 0 cosine transform, b = pi/2 sine transform"""

    kind = "cos_phase"

    def __init__(self, phase: float):
        if not math.isfinite(phase):
            raise InvalidParameterError(f"phase must be finite, got {phase}")
        self.phase = float(phase)

    def value(self, source, target):
        z = np.asarray(source, dtype=float) * np.asarray(target, dtype=float)
        return SQRT_2_OVER_PI * np.cos(z - self.phase)

    def params(self):
        return {"b": self.phase}


_KINDS = {
    HankelKernel.kind: (HankelKernel, "nu"),
    ModifiedHankelKernel.kind: (ModifiedHankelKernel, "nu"),
    PointInteractionKernel.kind: (PointInteractionKernel, "beta"),
    PointInteractionAdjointKernel.kind: (PointInteractionAdjointKernel, "beta"),
    CosPhaseKernel.kind: (CosPhaseKernel, "b"),
}


def kernel_from_dict(data: Dict[str, Any]) -> BaseKernel:
    """{"kind": "hankel", "nu": 0.5} -> HankelKernel(0.5)"""
    kind = data.get("kind")
    if kind not in _KINDS:
        raise InvalidParameterError(f"unknown kernel kind '{kind}' (expected one of: {', '.join(sorted(_KINDS))})")
    cls, param = _KINDS[kind]
    if param not in data:
        raise InvalidParameterError(f"kernel kind '{kind}' needs '{param}'")
    return cls(float(data[param]))
