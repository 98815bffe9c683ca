"""
Complex-valued functions sampled on a Grid, and the discrete L^2 geometry.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
import pandas as pd

from grid.quadrature import PANEL_NODES, Grid, make_grid, GridScheme
from scripts.errors import DomainViolationError, GridMismatchError, InvalidParameterError

logger = logging.getLogger(__name__)

# truncation tail: last 5% of [0, x_max]
TAIL_FRACTION = 0.05
DEFAULT_TAIL_TOL = 1e-8

CSV_COLUMNS = ["x", "re", "im"]


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Values of a function at the nodes of `grid`"""
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.shape != (self.grid.n,):
            raise InvalidParameterError(
                f"expected {self.grid.n} values for this grid, got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("sampled values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> "SampledFunction":
        return cls(grid, func(grid.nodes))

    @classmethod
    def zeros(cls, grid: Grid) -> "SampledFunction":
        return cls(grid, np.zeros(grid.n, dtype=complex))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.values - other.values)

    def scale(self, c: Union[complex, np.ndarray]) -> "SampledFunction":
        return SampledFunction(self.grid, c * self.values)

    # ------------------------------------------------------------------ #
    # CSV (x, re, im)
    # ------------------------------------------------------------------ #
    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "x": self.grid.nodes,
            "re": self.values.real,
            "im": self.values.imag,
        }, columns=CSV_COLUMNS)

    def to_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n", encoding="utf-8")
        logger.debug(f"sampled function written: {path} ({self.grid.n} rows)")

    @classmethod
    def read_csv(cls, path: str, grid: Grid = None) -> "SampledFunction":
        """
        Load an (x, re, im) table. Without `grid` the nodes must form a
        midpoint grid; with `grid` they must match its nodes.
        """
        df = pd.read_csv(path, encoding="utf-8")
        if list(df.columns) != CSV_COLUMNS:
            raise InvalidParameterError(f"CSV header must be {CSV_COLUMNS}, got {list(df.columns)}")
        x = df["x"].to_numpy(dtype=float)
        if grid is None:
            n = len(x)
            x_max = float(x[-1] + x[0]) if n else 0.0
            grid = make_grid(x_max, n, GridScheme.MIDPOINT)
        if len(x) != grid.n or not np.allclose(x, grid.nodes, rtol=1e-12, atol=0.0):
            raise GridMismatchError(f"CSV nodes in {path} do not match the grid {grid.signature}")
        return cls(grid, df["re"].to_numpy(dtype=float) + 1j * df["im"].to_numpy(dtype=float))


def _check_same_grid(f: SampledFunction, g: SampledFunction) -> None:
    if not f.grid.same_as(g.grid):
        raise GridMismatchError(f"grid mismatch: {f.grid.signature} vs {g.grid.signature}")


def inner_product(f: SampledFunction, g: SampledFunction) -> complex:
    """<f, g> = sum_j w_j conj(f_j) g_j"""
    _check_same_grid(f, g)
    return complex(np.sum(f.grid.weights * np.conj(f.values) * g.values))


def norm(f: SampledFunction) -> float:
    return float(np.sqrt(np.sum(f.grid.weights * np.abs(f.values) ** 2)))


def restrict(f: SampledFunction, omega) -> SampledFunction:
    """f times the indicator of omega at the nodes"""
    mask = omega.contains(f.grid.nodes)
    return SampledFunction(f.grid, np.where(mask, f.values, 0.0))


def _panel_subinterval_weights(panel_nodes: np.ndarray, lo: float, hi: float, pieces: np.ndarray) -> np.ndarray:
    """
    Weights of the 8-point interpolatory rule for ∫ over `pieces` ⊂ [lo, hi],
    exact for polynomials of degree 7 through the panel nodes.
    """
    half = 0.5 * (hi - lo)
    t_nodes = (panel_nodes - lo) / half - 1.0
    degree = len(panel_nodes) - 1
    vander = np.polynomial.legendre.legvander(t_nodes, degree)
    antiderivatives = [np.polynomial.legendre.legint(np.eye(degree + 1)[p]) for p in range(degree + 1)]
    moments = np.zeros(degree + 1)
    for a, b in pieces:
        ta, tb = (a - lo) / half - 1.0, (b - lo) / half - 1.0
        moments += [
            np.polynomial.legendre.legval(tb, c) - np.polynomial.legendre.legval(ta, c)
            for c in antiderivatives
        ]
    return np.linalg.solve(vander.T, moments) * half


def omega_weights(grid: Grid, omega) -> np.ndarray:
    """
    Quadrature weights for ∫_Omega g dx from the node values of g.

    Midpoint cells are weighted by |Omega ∩ cell|. Gauss-Legendre panels
    that Omega cuts get the interpolatory rule with breakpoints at the
    ends of Omega; fully covered panels keep the grid weights.
    """
    if grid.scheme is GridScheme.MIDPOINT:
        h = grid.x_max / grid.n
        return np.asarray(omega.measure(grid.nodes - 0.5 * h, grid.nodes + 0.5 * h), dtype=float)

    panels = grid.n // PANEL_NODES
    width = grid.x_max / panels
    left = np.arange(panels) * width
    coverage = np.asarray(omega.measure(left, left + width), dtype=float)
    weights = np.zeros(grid.n)
    tol = 1e-12 * width
    for p in np.flatnonzero(coverage > tol):
        block = slice(p * PANEL_NODES, (p + 1) * PANEL_NODES)
        if coverage[p] >= width - tol:
            weights[block] = grid.weights[block]
            continue
        lo, hi = left[p], left[p] + width
        weights[block] = _panel_subinterval_weights(grid.nodes[block], lo, hi, omega.pieces(lo, hi))
    return weights


def mass_in(f: SampledFunction, omega) -> float:
    """∫_Omega |f|^2 dx"""
    return float(np.dot(omega_weights(f.grid, omega), np.abs(f.values) ** 2))


def tail_mass(f: SampledFunction, fraction: float = TAIL_FRACTION) -> float:
    """Share of ‖f‖² carried by the last `fraction` of [0, x_max]"""
    total = norm(f) ** 2
    if total == 0:
        return 0.0
    tail = f.grid.nodes >= (1.0 - fraction) * f.grid.x_max
    mass = float(np.sum(f.grid.weights[tail] * np.abs(f.values[tail]) ** 2))
    return mass / total


def assert_tail_mass(f: SampledFunction, tol: float = DEFAULT_TAIL_TOL, fraction: float = TAIL_FRACTION) -> float:
    """
    Raises:
        DomainViolationError: f is not negligible near the truncation radius
    """
    share = tail_mass(f, fraction)
    if share >= tol:
        raise DomainViolationError(
            f"tail mass {share:.3e} of ‖f‖² beyond {1.0 - fraction:.0%} of x_max={f.grid.x_max} (tol {tol:.1e})"
        )
    return share
