"""
Report layer: turns module outputs into deterministic JSON/CSV files.

IMPORTANT: This module does NOT compute anything.
It only post-processes results produced by the numerical packages.

Determinism contract:
    - JSON: keys sorted, floats via repr (17 significant digits round-trip),
      no timestamps, no run ids
    - CSV: headers, '%.17g' floats, UTF-8, LF line endings
    - non-finite floats are written as the strings "inf", "-inf", "nan"
"""

import hashlib
import json
import logging
import math
import os
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0.0"
CSV_FLOAT_FORMAT = "%.17g"


def to_jsonable(value: Any) -> Any:
    """
    Convert numpy scalars, arrays, tuples and dataclasses into plain JSON types.

    Non-finite floats become strings so the output stays strict JSON.
    """
    if is_dataclass(value) and not isinstance(value, type):
        if hasattr(value, "to_dict"):
            return to_jsonable(value.to_dict())
        return to_jsonable(asdict(value))
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, complex):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    return value


def canonical_json(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def config_hash(config: Dict[str, Any]) -> str:
    """sha256 of the canonical config JSON; identifies a run without timestamps"""
    text = json.dumps(to_jsonable(config), sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_report(command: str, config: Dict[str, Any], body: Dict[str, Any]) -> Dict[str, Any]:
    """Envelope shared by every command report"""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config_sha256": config_hash(config),
        "config": config,
        **body,
    }


def write_json(path: str, payload: Any) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(canonical_json(payload))
    logger.info(f"JSON report written: {path}")
    return path


def rows_to_frame(rows: Iterable[Any], columns: Sequence[str]) -> pd.DataFrame:
    """Dataclass rows or dicts -> DataFrame with a fixed column order"""
    records: List[Dict[str, Any]] = []
    for row in rows:
        record = row.to_dict() if hasattr(row, "to_dict") else dict(row)
        records.append({c: record.get(c) for c in columns})
    return pd.DataFrame(records, columns=list(columns))


def write_csv(path: str, frame: pd.DataFrame) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    logger.info(f"CSV written: {path} ({len(frame)} rows)")
    return path


def summarize_ratio(values: Sequence[float]) -> Optional[float]:
    """max / min of positive finite values; inf if any value is infinite, None if empty"""
    vals = [float(v) for v in values]
    if not vals:
        return None
    if any(math.isinf(v) for v in vals):
        return math.inf
    low = min(vals)
    return max(vals) / low if low > 0 else math.inf
