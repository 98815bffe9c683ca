"""
Dense Nystrom realization of the transforms.

Matrix entry (i, j) = K(s_j, t_i) * w_j * m(s_j): rows are target nodes,
columns are source nodes, quadrature weights and the source measure are
folded into the columns.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from grid.quadrature import Grid
from grid.sampled import SampledFunction
from scripts.config import Config
from scripts.errors import GridMismatchError, ResourceCapError
from transforms.kernels import BaseKernel

logger = logging.getLogger(__name__)

_ROW_BLOCK = 256


@dataclass(frozen=True, eq=False)
class TransformKernel:
    """A built kernel matrix together with the grids it maps between"""
    kind: BaseKernel
    source_grid: Grid
    target_grid: Grid
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (self.target_grid.n, self.source_grid.n)
        if self.matrix.shape != expected:
            raise GridMismatchError(f"kernel matrix shape {self.matrix.shape} != {expected}")
        self.matrix.setflags(write=False)

    @property
    def shape(self):
        return self.matrix.shape

    def to_frame(self) -> pd.DataFrame:
        rows, cols = np.indices(self.matrix.shape)
        return pd.DataFrame({
            "row": rows.ravel(),
            "col": cols.ravel(),
            "re": self.matrix.real.ravel(),
            "im": self.matrix.imag.ravel(),
        })

    def export_csv(self, path: str) -> None:
        """Debug dump as (row, col, re, im)"""
        self.to_frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n", encoding="utf-8")
        logger.info(f"kernel {self.kind!r} exported to {path}")


def build_kernel(
    kind: BaseKernel,
    source_grid: Grid,
    target_grid: Grid,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> TransformKernel:
    """
    Assemble the dense kernel matrix.

    Rows are filled in blocks on a thread pool; the result does not depend
    on the worker count.

    Args:
        kind: kernel definition (HankelKernel, CosPhaseKernel, ...)
        source_grid: grid of the input function
        target_grid: grid of the output function
        cap: maximum n_source * n_target (default Config.KERNEL_CAP)
        workers: thread count (default Config.WORKERS)

    Raises:
        ResourceCapError: matrix would exceed the entry cap
    """
    cap = Config.KERNEL_CAP if cap is None else cap
    workers = Config.WORKERS if workers is None else workers
    entries = source_grid.n * target_grid.n
    if entries > cap:
        raise ResourceCapError(
            f"kernel {kind!r} needs {entries} entries ({target_grid.n}x{source_grid.n}), cap is {cap}"
        )

    s = source_grid.nodes
    column_weights = source_grid.weights * kind.source_weight(s)
    t = target_grid.nodes
    matrix = np.empty((target_grid.n, source_grid.n), dtype=complex)

    def fill(start: int) -> None:
        stop = min(start + _ROW_BLOCK, target_grid.n)
        block = kind.value(s[None, :], t[start:stop, None])
        matrix[start:stop] = block * column_weights[None, :]

    starts = range(0, target_grid.n, _ROW_BLOCK)
    if workers > 1 and target_grid.n > _ROW_BLOCK:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, starts))
    else:
        for start in starts:
            fill(start)

    logger.info(f"kernel built: {kind!r} {target_grid.n}x{source_grid.n}")
    return TransformKernel(kind=kind, source_grid=source_grid, target_grid=target_grid, matrix=matrix)


def apply(kernel: TransformKernel, f: SampledFunction) -> SampledFunction:
    """Matrix-vector product onto the target grid"""
    if not f.grid.same_as(kernel.source_grid):
        raise GridMismatchError(
            f"function lives on {f.grid.signature}, kernel expects {kernel.source_grid.signature}"
        )
    return SampledFunction(kernel.target_grid, kernel.matrix @ f.values)
