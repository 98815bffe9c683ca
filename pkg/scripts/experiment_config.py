# scripts/experiment_config.py
"""
실험 설정(JSON) 로드 및 검증

모든 교차 필드 제약은 계산 전에 검사한다. 오류는 ConfigError 이며
JSON pointer 로 문제 필드를 가리킨다.
"""

import json
import math
import os
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from grid.quadrature import Grid, GridScheme, make_grid
from scripts.config import Config
from scripts.errors import ConfigError, InvalidParameterError
from sets.interval_set import IntervalSet, periodic_set, square_gaps_set
from spectral.bands import OperatorSpec

COMMANDS = ("transforms-check", "sets", "spectral-sweep", "observe", "constants")

# 명령별 설정 스키마 (schemas/ 아래, 최상위 필드와 필수 필드의 기준)
SCHEMA_FILES = {command: f"{command.replace('-', '_')}.schema.json" for command in COMMANDS}


def load_config(path: str) -> Dict[str, Any]:
    """JSON 파일 로드 (최상위는 객체)"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}", "")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "")
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object", "")
    return data


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """schemas/ 아래 JSON 문서 (프로세스당 한 번 로드)"""
    path = os.path.join(Config.SCHEMAS_DIR, name)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"schema {name} unreadable: {exc}", "")


def command_schema(command: str) -> Dict[str, Any]:
    if command not in SCHEMA_FILES:
        raise ConfigError(f"unknown command '{command}'", "")
    return load_schema(SCHEMA_FILES[command])


def grid_keys() -> set:
    """common.schema.json 의 grid 필드"""
    return set(load_schema("common.schema.json")["$defs"]["grid"]["properties"])


# ---------------------------------------------------------------------- #
# 기본 타입 검사
# ---------------------------------------------------------------------- #
def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def number(data: Dict[str, Any], key: str, pointer: str, default: Any = None,
           minimum: Optional[float] = None, exclusive: bool = False) -> float:
    value = data.get(key, default)
    path = f"{pointer}/{key}"
    if value is None:
        raise ConfigError(f"'{key}' is required", path)
    if not _is_number(value):
        raise ConfigError(f"'{key}' must be a finite number", path)
    if minimum is not None and (value <= minimum if exclusive else value < minimum):
        op = ">" if exclusive else ">="
        raise ConfigError(f"'{key}' must be {op} {minimum}, got {value}", path)
    return float(value)


def integer(data: Dict[str, Any], key: str, pointer: str, default: Any = None, minimum: int = 1) -> int:
    value = data.get(key, default)
    path = f"{pointer}/{key}"
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' must be an integer", path)
    if value < minimum:
        raise ConfigError(f"'{key}' must be >= {minimum}, got {value}", path)
    return int(value)


def number_list(data: Dict[str, Any], key: str, pointer: str, default: Sequence[float] = None,
                min_items: int = 1) -> List[float]:
    value = data.get(key, default)
    path = f"{pointer}/{key}"
    if not isinstance(value, (list, tuple)) or len(value) < min_items:
        raise ConfigError(f"'{key}' must be a list of at least {min_items} numbers", path)
    for i, item in enumerate(value):
        if not _is_number(item):
            raise ConfigError("list items must be finite numbers", f"{path}/{i}")
    return [float(v) for v in value]


def check_keys(data: Dict[str, Any], allowed: set, pointer: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown fields: {unknown}", f"{pointer}/{unknown[0]}")


def _object(data: Dict[str, Any], key: str, pointer: str, required: bool = True) -> Optional[Dict[str, Any]]:
    value = data.get(key)
    if value is None and not required:
        return None
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be an object", f"{pointer}/{key}")
    return value


# ---------------------------------------------------------------------- #
# 도메인 객체
# ---------------------------------------------------------------------- #
def parse_grid(data: Dict[str, Any], pointer: str = "/grid") -> Tuple[Grid, Grid, Dict[str, Any]]:
    """(x 격자, k 격자, 정규화된 설정)"""
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError("'grid' must be an object", pointer)
    check_keys(data, grid_keys(), pointer)
    x_max = number(data, "x_max", pointer, Config.X_MAX, 0.0, exclusive=True)
    k_max = number(data, "k_max", pointer, Config.K_MAX, 0.0, exclusive=True)
    n = integer(data, "n", pointer, Config.GRID_N, minimum=8)
    scheme = data.get("scheme", Config.GRID_SCHEME)
    try:
        scheme = GridScheme.parse(scheme)
        x_grid = make_grid(x_max, n, scheme)
        k_grid = make_grid(k_max, n, scheme)
    except InvalidParameterError as exc:
        raise ConfigError(str(exc), f"{pointer}/n" if "divisible" in str(exc) else f"{pointer}/scheme") from exc
    normalized = {"x_max": x_max, "k_max": k_max, "n": n, "scheme": scheme.value}
    return x_grid, k_grid, normalized


def parse_omega(data: Any, pointer: str = "/omega") -> IntervalSet:
    """
    IntervalSet JSON 또는 preset:
        {"preset": "full"} | {"preset": "empty"}
        {"preset": "periodic", "on": 1, "period": 2, "offset": 0}
        {"preset": "square_gaps", "horizon": 40}
    """
    if not isinstance(data, dict):
        raise ConfigError("'omega' must be an object", pointer)
    preset = data.get("preset")
    if preset is None:
        return IntervalSet.from_dict(data, pointer)
    try:
        if preset == "full":
            check_keys(data, {"preset"}, pointer)
            return IntervalSet.full()
        if preset == "empty":
            check_keys(data, {"preset"}, pointer)
            return IntervalSet.empty()
        if preset == "periodic":
            check_keys(data, {"preset", "on", "period", "offset"}, pointer)
            return periodic_set(
                number(data, "on", pointer, minimum=0.0, exclusive=True),
                number(data, "period", pointer, minimum=0.0, exclusive=True),
                number(data, "offset", pointer, 0.0, minimum=0.0),
            )
        if preset == "square_gaps":
            check_keys(data, {"preset", "horizon"}, pointer)
            return square_gaps_set(number(data, "horizon", pointer, minimum=0.0, exclusive=True))
    except InvalidParameterError as exc:
        raise ConfigError(str(exc), pointer) from exc
    raise ConfigError(f"unknown omega preset '{preset}'", f"{pointer}/preset")


def parse_operator(data: Any, pointer: str = "/operator") -> OperatorSpec:
    if isinstance(data, dict):
        check_keys(data, {"kind", "beta", "alpha"}, pointer)
    return OperatorSpec.from_dict(data, pointer)


def parse_seed(config: Dict[str, Any], override: Optional[int] = None) -> int:
    if override is not None:
        return int(override)
    if "seed" not in config:
        return Config.DEFAULT_SEED
    return integer(config, "seed", "", minimum=0)


def validate(command: str, config: Dict[str, Any]) -> None:
    """
    명령 스키마 기준 최상위 검사: 알 수 없는 필드, 최소 섹션 수, 필수 필드.
    값의 범위와 교차 필드 제약은 각 명령의 prepare 단계에서 검사한다.
    """
    schema = command_schema(command)
    check_keys(config, set(schema["properties"]), "")
    if len(config) < schema.get("minProperties", 0):
        raise ConfigError(f"'{command}' needs at least {schema['minProperties']} section(s)", "")
    for key in schema.get("required", ()):
        if key not in config:
            raise ConfigError(f"'{key}' is required", f"/{key}")
