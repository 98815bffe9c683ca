"""
스펙트럼 대각화 기반 시간 전개: i u_t = H u
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from grid.quadrature import Grid
from grid.sampled import SampledFunction, assert_tail_mass, inner_product, norm, omega_weights
from scripts.config import Config
from scripts.errors import GridMismatchError, InvalidParameterError, ZeroInitialDatumError
from sets.interval_set import IntervalSet
from spectral.bands import OperatorSpec
from transforms.point_interaction import bound_state, project_ac
from transforms.transform import TransformKernel, build_kernel

logger = logging.getLogger(__name__)

MIN_TIME_STEPS = 4


@dataclass(frozen=True, eq=False)
class PropagatorSpec:
    """연산자, 격자, 관측 시간 T, 시간 적분 구간 수 n_t"""
    operator: OperatorSpec
    x_grid: Grid
    k_grid: Grid
    T: float
    n_t: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0):
            raise InvalidParameterError(f"T must be positive, got {self.T}")
        n_t = self.n_t
        if n_t is None:
            n_t = max(MIN_TIME_STEPS, math.ceil(Config.STEPS_PER_UNIT_TIME * self.T))
        if n_t < MIN_TIME_STEPS:
            raise InvalidParameterError(f"n_t must be >= {MIN_TIME_STEPS}, got {n_t}")
        object.__setattr__(self, "n_t", int(n_t))

    def times(self, n_t: Optional[int] = None) -> np.ndarray:
        return np.linspace(0.0, self.T, (n_t or self.n_t) + 1)


class Propagator:
    """
    u(t) = Phi*(e^{-itk^2} Phi u0_ac) + e^{it beta^2} <phi, u0> phi   (H^beta)
    u(t) = F_nu(e^{-itk^2} F_nu u0)                                   (H_alpha)

    H phi = -beta^2 phi 이므로 속박 상태는 위상 e^{+it beta^2} 만 얻는다.
    """

    def __init__(
        self,
        spec: PropagatorSpec,
        forward: Optional[TransformKernel] = None,
        adjoint: Optional[TransformKernel] = None,
    ):
        """
        초기화

        Args:
            spec: 전개 설정
            forward: x -> k 커널 (없으면 생성)
            adjoint: k -> x 커널 (없으면 생성)
        """
        self.spec = spec
        op = spec.operator
        self.forward = forward or build_kernel(op.forward_kernel(), spec.x_grid, spec.k_grid)
        self.adjoint = adjoint or build_kernel(op.adjoint_kernel(), spec.k_grid, spec.x_grid)
        self._k2 = spec.k_grid.nodes ** 2

        point = op.point_spec
        self._point = point if point is not None and point.bound_state_present else None
        if self._point is not None:
            phi = bound_state(self._point, spec.x_grid)
            self._phi = phi.scale(1.0 / norm(phi))
        else:
            self._phi = None

        logger.info(f"Propagator initialized: {op.kind}, T={spec.T}, n_t={spec.n_t}")

    def _check_grid(self, u0: SampledFunction) -> None:
        if not u0.grid.same_as(self.spec.x_grid):
            raise GridMismatchError(
                f"initial datum on {u0.grid.signature}, propagator expects {self.spec.x_grid.signature}"
            )

    def _split(self, u0: SampledFunction):
        """(k-공간 계수, 속박 상태 계수)"""
        if self._point is None:
            return self.forward.matrix @ u0.values, 0.0
        coeff = inner_product(self._phi, u0)
        u_ac = project_ac(self._point, u0)
        return self.forward.matrix @ u_ac.values, coeff

    def _synthesize(self, g: np.ndarray, coeff: complex, t: float) -> np.ndarray:
        values = self.adjoint.matrix @ (np.exp(-1j * t * self._k2) * g)
        if self._phi is not None:
            values = values + np.exp(1j * t * self._point.beta ** 2) * coeff * self._phi.values
        return values

    def evolve(self, u0: SampledFunction, t: float, check_tail: bool = True) -> SampledFunction:
        """
        시각 t 의 해

        Args:
            u0: 초기값 (꼬리 질량 < 1e-8)
            t: 시각
            check_tail: 초기값 꼬리 질량 검사 여부

        Returns:
            u(t) (같은 x 격자)
        """
        self._check_grid(u0)
        if check_tail:
            assert_tail_mass(u0)
        g, coeff = self._split(u0)
        return SampledFunction(self.spec.x_grid, self._synthesize(g, coeff, float(t)))

    def trajectory(self, u0: SampledFunction, times: Sequence[float]) -> np.ndarray:
        """u(t_j) 를 행으로 쌓은 배열 (len(times), n_x)"""
        self._check_grid(u0)
        g, coeff = self._split(u0)
        return np.stack([self._synthesize(g, coeff, float(t)) for t in times])

    def mass_time_series(self, u0: SampledFunction, omega: IntervalSet, n_t: Optional[int] = None) -> pd.DataFrame:
        """
        (t, ∫_Omega |u(t)|^2) 시계열

        Returns:
            DataFrame (columns: t, mass_in_omega)
        """
        times = self.spec.times(n_t)
        weights = omega_weights(self.spec.x_grid, omega)
        states = self.trajectory(u0, times)
        mass = (np.abs(states) ** 2) @ weights
        return pd.DataFrame({"t": times, "mass_in_omega": mass})

    def observability_ratio(self, u0: SampledFunction, omega: IntervalSet, n_t: Optional[int] = None) -> float:
        """
        (∫_0^T ∫_Omega |u|^2 dx dt) / ‖u0‖^2, 시간 적분은 사다리꼴

        Raises:
            ZeroInitialDatumError: u0 = 0
        """
        size = norm(u0) ** 2
        if size == 0:
            raise ZeroInitialDatumError("observability ratio of the zero initial datum")
        series = self.mass_time_series(u0, omega, n_t)
        return float(trapezoid(series["mass_in_omega"].to_numpy(), series["t"].to_numpy())) / size


def evolve(spec: PropagatorSpec, u0: SampledFunction, t: float) -> SampledFunction:
    return Propagator(spec).evolve(u0, t)


def observability_ratio(spec: PropagatorSpec, u0: SampledFunction, omega: IntervalSet) -> float:
    return Propagator(spec).observability_ratio(u0, omega)


def mass_time_series(spec: PropagatorSpec, u0: SampledFunction, omega: IntervalSet) -> pd.DataFrame:
    return Propagator(spec).mass_time_series(u0, omega)
