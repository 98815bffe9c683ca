# scripts/config.py

import os
from dotenv import load_dotenv
from typing import Dict, Any

load_dotenv()


class Config:
    """실험실 전체 기본 설정 관리 클래스"""

    # 디렉토리 경로
    REPORTS_DIR = os.getenv("REPORTS_DIR", "./reports")
    SCHEMAS_DIR = os.getenv(
        "SCHEMAS_DIR",
        os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "schemas"),
    )

    # 기준 격자 (reference grid)
    X_MAX = float(os.getenv("LAB_X_MAX", "40.0"))
    K_MAX = float(os.getenv("LAB_K_MAX", "40.0"))
    GRID_N = int(os.getenv("LAB_GRID_N", "1024"))
    GRID_SCHEME = os.getenv("LAB_GRID_SCHEME", "gauss_legendre")

    # 자원 한도: 커널 행렬 원소 수 (n_source * n_target)
    KERNEL_CAP = int(os.getenv("LAB_KERNEL_CAP", str(4096 * 4096)))

    # 재현성 / 병렬 처리
    DEFAULT_SEED = int(os.getenv("LAB_SEED", str(0x5EED)))
    WORKERS = int(os.getenv("LAB_WORKERS", "4"))

    # 대역 부분공간
    BAND_DIM_CAP = int(os.getenv("LAB_BAND_DIM_CAP", "64"))
    CONCENTRATION_TOL = float(os.getenv("LAB_CONCENTRATION_TOL", "1e-5"))

    # 시간 적분 (단위 시간당 사다리꼴 구간 수)
    STEPS_PER_UNIT_TIME = int(os.getenv("LAB_STEPS_PER_UNIT_TIME", "64"))

    # 변환 항등식 검사 허용 오차
    CHECK_TOLERANCES = {
        "plancherel": 1e-3,     # |‖Tf‖ - ‖P f‖| / ‖f‖
        "involution": 1e-3,     # ‖F(F f) - f‖ / ‖f‖
        "adjoint": 1e-2,        # ‖Φ Φ* g - g‖ / ‖g‖
        "frame_margin": 0.05,   # 프레임 경계 여유
        "closed_form": 1e-3,    # |Φ_0 1_[0,1]| 폐형식 비교
        "tail_mass": 1e-8,      # 절단 꼬리 질량
    }

    # 로깅 설정
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_DIR = os.getenv("LOG_DIR", "logs")

    @classmethod
    def get_config_summary(cls) -> Dict[str, Any]:
        """설정 요약을 반환합니다."""
        return {
            "directories": {
                "reports": cls.REPORTS_DIR,
                "schemas": cls.SCHEMAS_DIR,
                "logs": cls.LOG_DIR,
            },
            "grid": {
                "x_max": cls.X_MAX,
                "k_max": cls.K_MAX,
                "n": cls.GRID_N,
                "scheme": cls.GRID_SCHEME,
            },
            "limits": {
                "kernel_cap": cls.KERNEL_CAP,
                "band_dim_cap": cls.BAND_DIM_CAP,
                "workers": cls.WORKERS,
            },
            "seed": cls.DEFAULT_SEED,
            "check_tolerances": dict(cls.CHECK_TOLERANCES),
        }
