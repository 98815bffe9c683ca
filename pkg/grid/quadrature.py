"""
Quadrature grids on (0, x_max].

Two schemes:
    - composite Gauss-Legendre, 8-node panels of equal width
    - uniform midpoint rule
Nodes never touch x = 0, so x^{-nu-1/2} and alpha/x^2 stay evaluable.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union

import numpy as np

from scripts.errors import InvalidParameterError

logger = logging.getLogger(__name__)

PANEL_NODES = 8
MIN_NODES = 8


class GridScheme(str, Enum):
    GAUSS_LEGENDRE = "gauss_legendre"
    MIDPOINT = "midpoint"

    @classmethod
    def parse(cls, value: Union[str, "GridScheme"]) -> "GridScheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value))
        except ValueError:
            options = ", ".join(s.value for s in cls)
            raise InvalidParameterError(f"unknown grid scheme '{value}' (expected one of: {options})")


@dataclass(frozen=True, eq=False)
class Grid:
    """Nodes and positive weights of a quadrature rule on (0, x_max]"""
    x_max: float
    n: int
    scheme: GridScheme
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != (self.n,) or weights.shape != (self.n,):
            raise InvalidParameterError(f"grid arrays must have shape ({self.n},)")
        if np.any(np.diff(nodes) <= 0):
            raise InvalidParameterError("grid nodes must be strictly increasing")
        if nodes[0] <= 0 or nodes[-1] > self.x_max:
            raise InvalidParameterError(f"grid nodes must lie in (0, {self.x_max}]")
        if np.any(weights <= 0):
            raise InvalidParameterError("grid weights must be positive")

        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def signature(self) -> Tuple[str, int, float]:
        """Two grids are interchangeable iff their signatures match"""
        return (self.scheme.value, self.n, self.x_max)

    def same_as(self, other: "Grid") -> bool:
        return self is other or self.signature == other.signature

    def integrate(self, values) -> complex:
        """sum_j w_j values_j"""
        return np.dot(self.weights, np.asarray(values))

    def to_dict(self):
        return {"x_max": self.x_max, "n": self.n, "scheme": self.scheme.value}


def _gauss_legendre(x_max: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if n % PANEL_NODES:
        raise InvalidParameterError(
            f"Gauss-Legendre grids need n divisible by {PANEL_NODES}, got {n}"
        )
    panels = n // PANEL_NODES
    t, w = np.polynomial.legendre.leggauss(PANEL_NODES)
    width = x_max / panels
    left = np.arange(panels) * width
    nodes = (left[:, None] + 0.5 * width * (t[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * width * w, panels)
    return nodes, weights


def _midpoint(x_max: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    h = x_max / n
    nodes = (np.arange(n) + 0.5) * h
    return nodes, np.full(n, h)


def make_grid(x_max: float, n: int, scheme: Union[str, GridScheme] = GridScheme.GAUSS_LEGENDRE) -> Grid:
    """
    Build a quadrature grid on (0, x_max].

    Args:
        x_max: truncation radius (> 0)
        n: node count (>= 8; a multiple of 8 for Gauss-Legendre panels)
        scheme: 'gauss_legendre' or 'midpoint'

    Returns:
        Grid with sum(weights) == x_max

    Raises:
        InvalidParameterError: n < 8, x_max <= 0 or unknown scheme
    """
    scheme = GridScheme.parse(scheme)
    if isinstance(n, bool) or int(n) != n:
        raise InvalidParameterError(f"n must be an integer, got {n}")
    n = int(n)
    if n < MIN_NODES:
        raise InvalidParameterError(f"n must be >= {MIN_NODES}, got {n}")
    if not (math.isfinite(x_max) and x_max > 0):
        raise InvalidParameterError(f"x_max must be positive, got {x_max}")

    if scheme is GridScheme.GAUSS_LEGENDRE:
        nodes, weights = _gauss_legendre(float(x_max), n)
    else:
        nodes, weights = _midpoint(float(x_max), n)

    logger.debug(f"grid built: scheme={scheme.value}, n={n}, x_max={x_max}")
    return Grid(x_max=float(x_max), n=n, scheme=scheme, nodes=nodes, weights=weights)


def gauss_legendre_interval(lo: float, hi: float, nodes_per_unit: float = 64.0) -> Tuple[np.ndarray, np.ndarray]:
    """Composite 8-node Gauss-Legendre rule on [lo, hi] with about `nodes_per_unit` nodes per unit length"""
    if not hi > lo:
        raise InvalidParameterError(f"need lo < hi, got [{lo}, {hi}]")
    panels = max(1, math.ceil(nodes_per_unit * (hi - lo) / PANEL_NODES))
    nodes, weights = _gauss_legendre(hi - lo, panels * PANEL_NODES)
    return lo + nodes, weights
