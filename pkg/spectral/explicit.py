"""
명시적 상수 공식 (로그 공간 계산)
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

from scripts.errors import InvalidParameterError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
LN10 = math.log(10.0)


@dataclass(frozen=True)
class KovrijkineConstants:
    """점 상호작용 LS 부등식의 상수 사슬 (log10 값)"""
    beta: float
    r: float
    L: float
    b_minus_a: float
    c_beta: float
    c0: float
    log10_c0: float
    B: float
    log10_series: float
    log10_c1: float
    exponent: float
    log10_ratio: float
    log10_c2: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class ExplicitConstants:
    """명시적 상수 계산"""

    @staticmethod
    def ls_predicted_constant(nu: float, r: float, L: float, h: float) -> float:
        """
        LS 상수의 log10 값

        C = (2/3) (r / (300 * 9^nu))^E,
        E = (160 sqrt(3) pi / ln 2) h L + nu ln 3 / ln 2 + 1

        Args:
            nu: Bessel 차수 (>= 0)
            r: 두께 비율 (0, 1]
            L: 창 길이 (> 0)
            h: 대역 폭 (> 0)

        Returns:
            log10 C (지수가 10^3 수준이라 float 로는 표현 불가)
        """
        if not 0.0 < r <= 1.0:
            raise InvalidParameterError(f"r must lie in (0, 1], got {r}")
        if not (L > 0 and h > 0):
            raise InvalidParameterError(f"L and h must be positive, got L={L}, h={h}")
        if nu < 0:
            raise InvalidParameterError(f"nu must be >= 0, got {nu}")

        exponent = (160.0 * math.sqrt(3.0) * math.pi / LN2) * h * L + nu * math.log(3.0) / LN2 + 1.0
        base = math.log10(r) - math.log10(300.0) - nu * math.log10(9.0)
        return math.log10(2.0 / 3.0) + exponent * base

    @staticmethod
    def kovrijkine_c0(L: float, beta: float) -> float:
        """
        C0(L, beta) = sqrt(((s + L)^2 + 4 beta^2) / ((s - L)^2 + 4 beta^2)),  s = sqrt(L^2 + 4 beta^2)

        beta -> 0 이면 분모가 0 으로 가므로 거부한다.
        """
        if beta == 0:
            raise InvalidParameterError("beta = 0 makes C0 diverge (denominator -> 0)")
        if not L > 0:
            raise InvalidParameterError(f"L must be positive, got {L}")
        s = math.sqrt(L * L + 4.0 * beta * beta)
        num = (s + L) ** 2 + 4.0 * beta * beta
        den = (s - L) ** 2 + 4.0 * beta * beta
        return math.sqrt(num / den)

    @staticmethod
    def kovrijkine_constants(
        beta: float,
        r: float,
        L: float,
        b_minus_a: float,
        c_beta: float = 1.0,
    ) -> KovrijkineConstants:
        """
        상수 사슬 C0 -> C -> C1 -> C2 (로그 공간)

        - C = sum_n B^n (5L)^n (C_beta b)^n / n! = exp(5 B L C_beta b),  B = 4L / (2L - 1)
        - log10 C1 = log10 C0 + log10 C + (1/2) log10 L
        - C2 = ratio * (r/300)^(2 ln C1 / ln 2 + 1),
          ratio = ((s - L)^2 + beta^2) / ((s + L)^2 + beta^2)

        Args:
            beta: 경계 조건 계수 (0 이 아님)
            r: 두께 비율 (0, 1]
            L: 창 길이 (> 1/2, B 가 양수여야 함)
            b_minus_a: 대역 길이
            c_beta: 호출자가 정하는 일반 상수 C_beta

        Returns:
            KovrijkineConstants
        """
        if not 0.0 < r <= 1.0:
            raise InvalidParameterError(f"r must lie in (0, 1], got {r}")
        if not L > 0.5:
            raise InvalidParameterError(f"L must exceed 1/2 so that B = 4L/(2L-1) is finite and positive, got {L}")
        if not b_minus_a > 0:
            raise InvalidParameterError(f"b - a must be positive, got {b_minus_a}")
        if not c_beta > 0:
            raise InvalidParameterError(f"C_beta must be positive, got {c_beta}")

        c0 = ExplicitConstants.kovrijkine_c0(L, beta)
        log10_c0 = math.log10(c0)

        B = 4.0 * L / (2.0 * L - 1.0)
        # 급수 합 = exp(5 B L C_beta b)
        log10_series = 5.0 * B * L * c_beta * b_minus_a / LN10
        log10_c1 = log10_c0 + log10_series + 0.5 * math.log10(L)
        exponent = 2.0 * (log10_c1 * LN10) / LN2 + 1.0

        s = math.sqrt(L * L + 4.0 * beta * beta)
        ratio = ((s - L) ** 2 + beta * beta) / ((s + L) ** 2 + beta * beta)
        log10_ratio = math.log10(ratio)
        log10_c2 = log10_ratio + exponent * math.log10(r / 300.0)

        logger.debug(f"kovrijkine beta={beta}, r={r}, L={L}: log10 C1={log10_c1:.6g}, log10 C2={log10_c2:.6g}")
        return KovrijkineConstants(
            beta=float(beta),
            r=float(r),
            L=float(L),
            b_minus_a=float(b_minus_a),
            c_beta=float(c_beta),
            c0=c0,
            log10_c0=log10_c0,
            B=B,
            log10_series=log10_series,
            log10_c1=log10_c1,
            exponent=exponent,
            log10_ratio=log10_ratio,
            log10_c2=log10_c2,
        )
