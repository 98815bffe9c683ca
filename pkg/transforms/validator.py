"""
Transform identity checks: Plancherel, involution, adjoint, frame bounds.

Each check turns an exact identity into a measurable defect on a declared
test family; TransformValidator runs the whole suite against tolerances.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from grid.quadrature import Grid, make_grid
from grid.sampled import SampledFunction, norm
from scripts.config import Config
from scripts.errors import InvalidParameterError
from specialfn.bessel import BesselOrder
from transforms.kernels import (
    CosPhaseKernel,
    HankelKernel,
    ModifiedHankelKernel,
    PointInteractionAdjointKernel,
    PointInteractionKernel,
)
from transforms.point_interaction import PointInteractionSpec, bound_state, project_ac
from transforms.transform import TransformKernel, apply, build_kernel

logger = logging.getLogger(__name__)

TestFamily = List[SampledFunction]


# ---------------------------------------------------------------------- #
# test families
# ---------------------------------------------------------------------- #
def gaussian_x_family(grid: Grid, count: int = 20) -> TestFamily:
    """x exp(-(x - c)^2 / (2 s^2)), centres in [0, 8], widths in [0.5, 2]"""
    centres = np.linspace(0.0, 8.0, count)
    widths = np.linspace(0.5, 2.0, count)[::-1]
    x = grid.nodes
    return [
        SampledFunction(grid, x * np.exp(-((x - c) ** 2) / (2.0 * s * s)))
        for c, s in zip(centres, widths)
    ]


def modulated_gaussian_family(grid: Grid, count: int = 20, max_frequency: float = 10.0) -> TestFamily:
    """exp(-(x - c)^2 / (2 s^2)) cos(w x), w <= max_frequency"""
    x = grid.nodes
    out = []
    for i in range(count):
        w = max_frequency * i / max(count - 1, 1)
        c = 2.0 + 6.0 * ((i * 7) % count) / count
        s = 0.6 + 0.9 * ((i * 3) % count) / count
        out.append(SampledFunction(grid, np.exp(-((x - c) ** 2) / (2.0 * s * s)) * np.cos(w * x)))
    return out


def log_gaussian_family(grid: Grid, count: int = 10, max_t: float = 4.5, sigma: float = 0.5) -> TestFamily:
    """
    x^{-1/2 + it} exp(-(ln x)^2 / (2 sigma^2)).

    These concentrate on a single Mellin frequency t, where the cosine-phase
    transforms come closest to their frame bounds.
    """
    x = grid.nodes
    lx = np.log(x)
    envelope = np.exp(-lx ** 2 / (2.0 * sigma ** 2)) / np.sqrt(x)
    return [
        SampledFunction(grid, envelope * np.exp(1j * t * lx))
        for t in np.linspace(0.0, max_t, count)
    ]


def frame_test_family(grid: Grid) -> TestFamily:
    """50 members: 20 Gaussians*x, 20 modulated Gaussians, 10 log-Gaussians"""
    return gaussian_x_family(grid) + modulated_gaussian_family(grid) + log_gaussian_family(grid)


def band_limited_family(k_grid: Grid, count: int = 8, k_lo: float = 1.0, k_hi: float = 20.0) -> TestFamily:
    """Smooth bumps in k, supported well inside (0, k_max)"""
    k = k_grid.nodes
    centres = np.linspace(k_lo + 2.0, k_hi - 2.0, count)
    return [SampledFunction(k_grid, np.exp(-((k - c) ** 2) / 2.0)) for c in centres]


# ---------------------------------------------------------------------- #
# defects
# ---------------------------------------------------------------------- #
def _ac_projector(kernel: TransformKernel):
    if isinstance(kernel.kind, PointInteractionKernel) and not isinstance(
        kernel.kind, PointInteractionAdjointKernel
    ):
        spec = PointInteractionSpec(kernel.kind.beta)
        return lambda f: project_ac(spec, f)
    return lambda f: f


def plancherel_defect(kernel: TransformKernel, test_family: Sequence[SampledFunction]) -> float:
    """max over the family of |‖T f‖ - ‖P_ac f‖| / ‖f‖"""
    project = _ac_projector(kernel)
    worst = 0.0
    for f in test_family:
        size = norm(f)
        if size == 0:
            continue
        defect = abs(norm(apply(kernel, f)) - norm(project(f))) / size
        worst = max(worst, defect)
    return worst


def involution_defect(
    forward: TransformKernel,
    test_family: Sequence[SampledFunction],
    backward: Optional[TransformKernel] = None,
) -> float:
    """max ‖F(F f) - f‖ / ‖f‖; `backward` maps the target grid back (defaults to forward)"""
    backward = backward or forward
    worst = 0.0
    for f in test_family:
        size = norm(f)
        if size == 0:
            continue
        worst = max(worst, norm(apply(backward, apply(forward, f)) - f) / size)
    return worst


def adjoint_defect(
    forward: TransformKernel,
    adjoint: TransformKernel,
    test_family: Sequence[SampledFunction],
) -> float:
    """max ‖Phi Phi* g - g‖ / ‖g‖ over transform-side data g"""
    worst = 0.0
    for g in test_family:
        size = norm(g)
        if size == 0:
            continue
        worst = max(worst, norm(apply(forward, apply(adjoint, g)) - g) / size)
    return worst


def t_beta_exact_bounds(b: float) -> Tuple[float, float]:
    """
    Exact frame bounds of T_b with kernel sqrt(2/pi) cos(xk - b).

    T_b* T_b acts as the Mellin multiplier 1 + sin(2b) / cosh(pi t), so the
    bounds are min/max of 1 and sqrt(1 + sin 2b).
    """
    edge = math.sqrt(max(0.0, 1.0 + math.sin(2.0 * b)))
    return min(1.0, edge), max(1.0, edge)


def t_beta_frame_bounds(
    b: float,
    test_family: Sequence[SampledFunction],
    target_grid: Optional[Grid] = None,
    kernel: Optional[TransformKernel] = None,
) -> Tuple[float, float]:
    """
    Empirical (min, max) of ‖T_b f‖ / ‖f‖ over the family.

    Raises:
        InvalidParameterError: fewer than 50 members or an empty family
    """
    if len(test_family) < 50:
        raise InvalidParameterError(f"frame bounds need >= 50 test functions, got {len(test_family)}")
    source = test_family[0].grid
    if kernel is None:
        kernel = build_kernel(CosPhaseKernel(b), source, target_grid or source)
    ratios = [norm(apply(kernel, f)) / norm(f) for f in test_family if norm(f) > 0]
    return float(min(ratios)), float(max(ratios))


def modified_hankel_conjugation_defect(
    nu: float,
    f: SampledFunction,
    target_grid: Optional[Grid] = None,
    k_min: float = 0.5,
) -> float:
    """
    max over k >= k_min of |F_nu f(k) - k^{nu+1/2} H_nu(x^{-nu-1/2} f)(k)|,
    relative to max |F_nu f|.
    """
    order = BesselOrder(nu)
    target = target_grid or f.grid
    plain = apply(build_kernel(HankelKernel(order), f.grid, target), f).values
    x = f.grid.nodes
    g = SampledFunction(f.grid, np.power(x, -nu - 0.5) * f.values)
    modified = apply(build_kernel(ModifiedHankelKernel(order), f.grid, target), g).values
    k = target.nodes
    conjugated = np.power(k, nu + 0.5) * modified
    away = k >= k_min
    scale = float(np.max(np.abs(plain))) or 1.0
    return float(np.max(np.abs(plain[away] - conjugated[away])) / scale)


def point_interaction_closed_form_defect(k_grid: Grid, support_nodes: int = 64) -> float:
    """max_k | |Phi_0 1_[0,1]|(k) - sqrt(2/pi) |sin k| / k |"""
    unit = make_grid(1.0, support_nodes)
    kernel = build_kernel(PointInteractionKernel(0.0), unit, k_grid)
    result = apply(kernel, SampledFunction(unit, np.ones(unit.n)))
    k = k_grid.nodes
    exact = math.sqrt(2.0 / math.pi) * np.abs(np.sin(k)) / k
    return float(np.max(np.abs(np.abs(result.values) - exact)))


# ---------------------------------------------------------------------- #
# suite
# ---------------------------------------------------------------------- #
class TransformValidator:
    """Run the identity checks for a (nu, beta, phases) configuration"""

    def __init__(self, tolerances: Optional[Dict[str, float]] = None):
        """
        Args:
            tolerances: per-check tolerances (defaults to Config.CHECK_TOLERANCES)
        """
        self.tolerances = dict(Config.CHECK_TOLERANCES)
        if tolerances:
            self.tolerances.update(tolerances)

    def _record(self, checks: List[Dict], name: str, value: float, tolerance: float) -> None:
        passed = bool(np.isfinite(value) and value < tolerance)
        checks.append({"name": name, "value": float(value), "tolerance": float(tolerance), "passed": passed})
        level = logging.INFO if passed else logging.WARNING
        logger.log(level, f"check {name}: {value:.3e} (tol {tolerance:.1e}) {'ok' if passed else 'FAILED'}")

    def run(
        self,
        x_grid: Grid,
        k_grid: Grid,
        nus: Sequence[float] = (0.5,),
        betas: Sequence[float] = (1.0, -1.0),
        phases: Sequence[float] = (0.0, math.pi / 4, math.pi / 2),
    ) -> Dict:
        """
        Returns:
            {"checks": [{"name", "value", "tolerance", "passed"}, ...],
             "frame_bounds": [...], "passed": bool}
        """
        checks: List[Dict] = []
        family = gaussian_x_family(x_grid)
        logger.info(f"transform checks on x{x_grid.signature} -> k{k_grid.signature}")

        for nu in nus:
            forward = build_kernel(HankelKernel(nu), x_grid, k_grid)
            self._record(checks, f"plancherel/hankel(nu={nu})", plancherel_defect(forward, family),
                         self.tolerances["plancherel"])
            backward = forward if k_grid.same_as(x_grid) else build_kernel(HankelKernel(nu), k_grid, x_grid)
            self._record(checks, f"involution/hankel(nu={nu})", involution_defect(forward, family, backward),
                         self.tolerances["involution"])

        band = band_limited_family(k_grid, k_hi=min(20.0, 0.5 * k_grid.x_max))
        for beta in betas:
            forward = build_kernel(PointInteractionKernel(beta), x_grid, k_grid)
            members = list(family)
            spec = PointInteractionSpec(beta)
            if spec.bound_state_present:
                members.append(bound_state(spec, x_grid))
            self._record(checks, f"plancherel/point_interaction(beta={beta})",
                         plancherel_defect(forward, members), self.tolerances["plancherel"])
            adjoint = build_kernel(PointInteractionAdjointKernel(beta), k_grid, x_grid)
            self._record(checks, f"adjoint/point_interaction(beta={beta})",
                         adjoint_defect(forward, adjoint, band), self.tolerances["adjoint"])

        self._record(checks, "closed_form/point_interaction(beta=0)",
                     point_interaction_closed_form_defect(k_grid), self.tolerances["closed_form"])

        frame_rows = []
        frame_family = frame_test_family(x_grid)
        margin = self.tolerances["frame_margin"]
        for b in phases:
            lo, hi = t_beta_frame_bounds(b, frame_family, k_grid)
            exact_lo, exact_hi = t_beta_exact_bounds(b)
            # distance outside the exact frame interval
            excess = max(0.0, exact_lo - lo, hi - exact_hi)
            frame_rows.append({"b": float(b), "a_emp": lo, "b_emp": hi, "a_exact": exact_lo, "b_exact": exact_hi})
            self._record(checks, f"frame/cos_phase(b={b:.6g})", excess, margin)

        passed = all(c["passed"] for c in checks)
        failing = [c["name"] for c in checks if not c["passed"]]
        if failing:
            logger.warning(f"{len(failing)} transform checks failed: {failing}")
        return {"checks": checks, "frame_bounds": frame_rows, "passed": passed, "failing": failing}
