"""
Sensor sets on the half-line: finite or periodic unions of closed intervals.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from scripts.errors import ConfigError, InvalidParameterError

Interval = Tuple[float, float]


@dataclass(frozen=True)
class IntervalSet:
    """
    Union of sorted, disjoint closed intervals in [0, inf).

    With a period P the listed intervals form the fundamental cell [0, P) and
    the set repeats with period P. lower_cut intersects the whole set with
    [lower_cut, inf).
    """
    intervals: Tuple[Interval, ...] = ()
    period: Optional[float] = None
    lower_cut: float = 0.0

    def __post_init__(self):
        cleaned = tuple((float(a), float(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", cleaned)

        for i, (a, b) in enumerate(cleaned):
            if not (math.isfinite(a) and math.isfinite(b)):
                raise InvalidParameterError(f"interval {i} has non-finite endpoint: {(a, b)}")
            if a < 0:
                raise InvalidParameterError(f"interval {i} starts below 0: {(a, b)}")
            if b <= a:
                raise InvalidParameterError(f"interval {i} must have positive length: {(a, b)}")
            if i > 0 and a <= cleaned[i - 1][1]:
                raise InvalidParameterError(
                    f"intervals must be sorted and disjoint: {cleaned[i - 1]} then {(a, b)}"
                )

        if self.period is not None:
            period = float(self.period)
            if not (math.isfinite(period) and period > 0):
                raise InvalidParameterError(f"period must be positive, got {self.period}")
            object.__setattr__(self, "period", period)
            if cleaned and cleaned[-1][1] > period:
                raise InvalidParameterError(
                    f"periodic cell intervals must lie in [0, {period}], got {cleaned[-1]}"
                )

        if not (math.isfinite(self.lower_cut) and self.lower_cut >= 0):
            raise InvalidParameterError(f"lower_cut must be >= 0, got {self.lower_cut}")
        object.__setattr__(self, "lower_cut", float(self.lower_cut))

    # ------------------------------------------------------------------ #
    # constructors
    # ------------------------------------------------------------------ #
    @classmethod
    def full(cls) -> "IntervalSet":
        """The whole half-line"""
        return cls(intervals=((0.0, 1.0),), period=1.0)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(intervals=())

    @classmethod
    def from_unsorted(
        cls,
        intervals: Iterable[Sequence[float]],
        period: Optional[float] = None,
        lower_cut: float = 0.0,
    ) -> "IntervalSet":
        """Sort and merge overlapping or touching intervals first"""
        pieces = sorted((float(a), float(b)) for a, b in intervals)
        merged: List[List[float]] = []
        for a, b in pieces:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return cls(intervals=tuple((a, b) for a, b in merged), period=period, lower_cut=lower_cut)

    # ------------------------------------------------------------------ #
    # basic properties
    # ------------------------------------------------------------------ #
    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def is_empty(self) -> bool:
        return len(self.intervals) == 0

    @property
    def cell_measure(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    @property
    def is_full(self) -> bool:
        return (
            self.is_periodic
            and self.lower_cut == 0.0
            and abs(self.cell_measure - self.period) <= 1e-15 * self.period
        )

    def density(self) -> Optional[float]:
        """Asymptotic density |cell| / P for periodic sets"""
        if not self.is_periodic:
            return None
        return self.cell_measure / self.period

    def cut_below(self, c: float) -> "IntervalSet":
        """Omega intersected with [c, inf)"""
        if c < 0:
            raise InvalidParameterError(f"cut must be >= 0, got {c}")
        return IntervalSet(self.intervals, self.period, max(self.lower_cut, float(c)))

    # ------------------------------------------------------------------ #
    # measure
    # ------------------------------------------------------------------ #
    def _cell_knots(self) -> Tuple[np.ndarray, np.ndarray]:
        xs, cum = [0.0], [0.0]
        running = 0.0
        for a, b in self.intervals:
            xs.append(a)
            cum.append(running)
            running += b - a
            xs.append(b)
            cum.append(running)
        if self.is_periodic:
            xs.append(self.period)
            cum.append(running)
        return np.asarray(xs), np.asarray(cum)

    def _uncut_cumulative(self, t: np.ndarray) -> np.ndarray:
        xs, cum = self._cell_knots()
        if not self.is_periodic:
            return np.interp(t, xs, cum)
        cycles = np.floor(t / self.period)
        return cycles * self.cell_measure + np.interp(t - cycles * self.period, xs, cum)

    def cumulative(self, t) -> np.ndarray:
        """F(t) = |Omega ∩ [0, t]| (vectorised)"""
        t = np.maximum(np.asarray(t, dtype=float), 0.0)
        if self.is_empty:
            return np.zeros_like(t)
        cut = self.lower_cut
        return self._uncut_cumulative(np.maximum(t, cut)) - self._uncut_cumulative(np.asarray(cut))

    def measure(self, u, v) -> np.ndarray:
        """|Omega ∩ [u, v]|, u <= v (vectorised)"""
        return self.cumulative(v) - self.cumulative(u)

    def contains(self, x) -> np.ndarray:
        """Indicator of the closed set at the points x"""
        x = np.asarray(x, dtype=float)
        if self.is_empty:
            return np.zeros(x.shape, dtype=bool)
        a = np.array([p[0] for p in self.intervals])
        b = np.array([p[1] for p in self.intervals])
        if self.is_periodic:
            y = np.mod(x, self.period)[..., None]
            inside = ((y >= a) & (y <= b)) | ((y + self.period >= a) & (y + self.period <= b))
        else:
            y = x[..., None]
            inside = (y >= a) & (y <= b)
        return inside.any(axis=-1) & (x >= self.lower_cut) & (x >= 0)

    def pieces(self, lo: float, hi: float) -> np.ndarray:
        """Intervals of Omega ∩ [lo, hi] as an (m, 2) array"""
        if self.is_empty or hi <= lo:
            return np.zeros((0, 2))
        lo = max(lo, self.lower_cut)
        if hi <= lo:
            return np.zeros((0, 2))
        base = np.asarray(self.intervals, dtype=float)
        if self.is_periodic:
            first = int(math.floor(lo / self.period)) - 1
            last = int(math.floor(hi / self.period)) + 1
            shifts = np.arange(first, last + 1) * self.period
            base = (base[None, :, :] + shifts[:, None, None]).reshape(-1, 2)
        clipped = np.stack([np.maximum(base[:, 0], lo), np.minimum(base[:, 1], hi)], axis=1)
        return clipped[clipped[:, 1] > clipped[:, 0]]

    def endpoints(self, lo: float, hi: float) -> np.ndarray:
        """Every interval endpoint (and the cut) falling in [lo, hi]"""
        pts = [self.lower_cut]
        if not self.is_empty:
            base = np.asarray(self.intervals, dtype=float).ravel()
            if self.is_periodic:
                first = int(math.floor(lo / self.period)) - 1
                last = int(math.floor(hi / self.period)) + 1
                shifts = np.arange(first, last + 1) * self.period
                base = (base[None, :] + shifts[:, None]).ravel()
            pts.extend(base.tolist())
        pts = np.asarray(pts)
        return np.unique(pts[(pts >= lo) & (pts <= hi)])

    # ------------------------------------------------------------------ #
    # JSON
    # ------------------------------------------------------------------ #
    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "intervals": [[a, b] for a, b in self.intervals],
            "period": self.period,
        }
        if self.lower_cut:
            out["lower_cut"] = self.lower_cut
        return out

    @classmethod
    def from_dict(cls, data: Any, pointer: str = "") -> "IntervalSet":
        """
        Strict JSON decoding: {"intervals": [[a, b], ...], "period": number|null, "lower_cut": number}

        Raises:
            ConfigError: with a JSON pointer to the offending field
        """
        if not isinstance(data, dict):
            raise ConfigError("interval set must be an object", pointer)
        unknown = set(data) - {"intervals", "period", "lower_cut"}
        if unknown:
            raise ConfigError(f"unknown interval-set fields: {sorted(unknown)}", pointer)
        raw = data.get("intervals")
        if not isinstance(raw, list):
            raise ConfigError("'intervals' must be a list of [a, b] pairs", f"{pointer}/intervals")
        pairs = []
        for i, item in enumerate(raw):
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)
            ):
                raise ConfigError("each interval must be a pair of numbers", f"{pointer}/intervals/{i}")
            pairs.append((float(item[0]), float(item[1])))
        period = data.get("period")
        if period is not None and (not isinstance(period, (int, float)) or isinstance(period, bool)):
            raise ConfigError("'period' must be a number or null", f"{pointer}/period")
        lower_cut = data.get("lower_cut", 0.0)
        if not isinstance(lower_cut, (int, float)) or isinstance(lower_cut, bool):
            raise ConfigError("'lower_cut' must be a number", f"{pointer}/lower_cut")
        try:
            return cls(tuple(pairs), period, float(lower_cut))
        except InvalidParameterError as exc:
            raise ConfigError(str(exc), f"{pointer}/intervals") from exc


def periodic_set(on_length: float, period: float, offset: float = 0.0) -> IntervalSet:
    """union over n of [offset + nP, offset + nP + on_length]"""
    if not 0 < on_length <= period:
        raise InvalidParameterError(f"need 0 < on_length <= period, got {on_length}, {period}")
    if not 0 <= offset <= period - on_length:
        raise InvalidParameterError(f"offset must keep the cell inside [0, {period}]")
    return IntervalSet(((offset, offset + on_length),), period)


def square_gaps_set(horizon: float) -> IntervalSet:
    """union of [n^2, n^2 + 1] for n^2 < horizon (not thick: gaps grow like 2n)"""
    if horizon <= 0:
        raise InvalidParameterError(f"horizon must be positive, got {horizon}")
    pieces = []
    n = 0
    while n * n < horizon:
        pieces.append((n * n, n * n + 1.0))
        n += 1
    return IntervalSet.from_unsorted(pieces)
