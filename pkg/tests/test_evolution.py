"""
Tests for evolution: propagation, observability estimates and resolvent checks.
"""

import math

import numpy as np
import pytest

from grid import SampledFunction, inner_product, make_grid, norm
from scripts.errors import GridMismatchError, InvalidParameterError, ZeroInitialDatumError
from sets import IntervalSet, periodic_set, square_gaps_set
from spectral import PLAIN, SHIFTED, EnergyWindow, OperatorSpec, band_from_energy, build_band_subspace, sharp_constant
from transforms import PointInteractionSpec, bound_state, build_kernel, project_ac
from evolution import (
    Propagator,
    PropagatorSpec,
    apply_shifted,
    build_ensemble,
    estimate_cobs,
    hautus_residual,
    miller_time,
    resolvent_gap_constant,
    resolvent_gap_residual,
)


@pytest.fixture(scope="module")
def x_grid():
    return make_grid(40.0, 1024)


@pytest.fixture(scope="module")
def k_grid():
    return make_grid(40.0, 1024)


@pytest.fixture(scope="module")
def robin_propagator(x_grid, k_grid):
    """beta = -1: one bound state at energy -1"""
    return Propagator(PropagatorSpec(OperatorSpec.point_interaction(-1.0), x_grid, k_grid, T=1.0))


@pytest.fixture(scope="module")
def packet(x_grid):
    x = x_grid.nodes
    return SampledFunction(x_grid, np.exp(-((x - 15.0) ** 2) / 4.5) * np.exp(2j * x))


# ═══════════════════════════════════════════════════════════════
# PROPAGATION
# ═══════════════════════════════════════════════════════════════

class TestPropagatorSpec:
    """Time step defaults and validation."""

    def test_default_steps(self, x_grid, k_grid):
        op = OperatorSpec.inverse_square(0.0)
        assert PropagatorSpec(op, x_grid, k_grid, T=2.0).n_t == 128
        assert PropagatorSpec(op, x_grid, k_grid, T=0.01).n_t == 4

    @pytest.mark.parametrize("kwargs", [{"T": 0.0}, {"T": -1.0}, {"T": 1.0, "n_t": 2}])
    def test_invalid(self, x_grid, k_grid, kwargs):
        with pytest.raises(InvalidParameterError):
            PropagatorSpec(OperatorSpec.inverse_square(0.0), x_grid, k_grid, **kwargs)


class TestPropagator:
    """Unitarity, group property and the bound-state phase."""

    def test_unitary(self, robin_propagator, packet):
        for t in (0.25, 1.0):
            assert abs(norm(robin_propagator.evolve(packet, t)) / norm(packet) - 1.0) < 1e-3

    def test_group_property(self, robin_propagator, packet):
        halfway = robin_propagator.evolve(packet, 0.3)
        stepped = robin_propagator.evolve(halfway, 0.4, check_tail=False)
        direct = robin_propagator.evolve(packet, 0.7)
        assert norm(stepped - direct) / norm(packet) < 1e-3

    def test_bound_state_only_rotates(self, robin_propagator, x_grid):
        phi = bound_state(PointInteractionSpec(-1.0), x_grid)
        t = 0.8
        evolved = robin_propagator.evolve(phi, t)
        assert norm(evolved - phi.scale(np.exp(1j * t))) < 1e-6

    def test_bound_state_ratio_on_unit_interval(self, robin_propagator, x_grid):
        # |phi|^2 = 2 e^{-2x} does not move, so the ratio is T (1 - e^{-2})
        phi = bound_state(PointInteractionSpec(-1.0), x_grid)
        ratio = robin_propagator.observability_ratio(phi, IntervalSet(((0.0, 1.0),)))
        assert ratio == pytest.approx(1.0 - math.exp(-2.0), abs=1e-3)

    def test_full_set_ratio_is_T(self, robin_propagator, packet):
        assert robin_propagator.observability_ratio(packet, IntervalSet.full()) == pytest.approx(1.0, rel=1e-3)

    def test_mass_time_series(self, robin_propagator, packet):
        series = robin_propagator.mass_time_series(packet, periodic_set(1.0, 2.0))
        assert list(series.columns) == ["t", "mass_in_omega"]
        assert len(series) == robin_propagator.spec.n_t + 1
        assert series["t"].iloc[-1] == pytest.approx(1.0)
        assert (series["mass_in_omega"] <= norm(packet) ** 2 * (1 + 1e-3)).all()

    def test_zero_datum(self, robin_propagator, x_grid):
        with pytest.raises(ZeroInitialDatumError):
            robin_propagator.observability_ratio(SampledFunction.zeros(x_grid), IntervalSet.full())

    def test_grid_mismatch(self, robin_propagator):
        other = make_grid(20.0, 64)
        with pytest.raises(GridMismatchError):
            robin_propagator.evolve(SampledFunction.from_callable(other, lambda x: np.exp(-x)), 0.5)

    def test_time_reversal(self, robin_propagator, packet):
        forward = robin_propagator.evolve(packet, 0.6)
        back = robin_propagator.evolve(forward, -0.6, check_tail=False)
        assert norm(back - packet) / norm(packet) < 1e-3

    def test_continuous_part_stays_orthogonal_to_bound_state(self, robin_propagator, packet, x_grid):
        point = PointInteractionSpec(-1.0)
        phi = bound_state(point, x_grid)
        u_ac = project_ac(point, packet)
        for t in (0.0, 0.5, 1.0):
            overlap = inner_product(phi, robin_propagator.evolve(u_ac, t))
            assert abs(overlap) < 1e-8 * norm(packet)


class TestInverseSquarePropagator:
    """Propagation under H_alpha through the Hankel transform."""

    @pytest.fixture(scope="class", params=[0.5, 1.0], ids=["nu=0.5", "nu=1"])
    def bessel_propagator(self, request, x_grid, k_grid):
        nu = request.param
        op = OperatorSpec.inverse_square(nu * nu - 0.25)
        return Propagator(PropagatorSpec(op, x_grid, k_grid, T=1.0))

    def test_identity_at_time_zero(self, bessel_propagator, packet):
        assert norm(bessel_propagator.evolve(packet, 0.0) - packet) / norm(packet) < 1e-3

    def test_unitary(self, bessel_propagator, packet):
        for t in (0.25, 1.0):
            assert abs(norm(bessel_propagator.evolve(packet, t)) / norm(packet) - 1.0) < 1e-3

    def test_group_property(self, bessel_propagator, packet):
        stepped = bessel_propagator.evolve(bessel_propagator.evolve(packet, 0.3), 0.4, check_tail=False)
        direct = bessel_propagator.evolve(packet, 0.7)
        assert norm(stepped - direct) / norm(packet) < 1e-3

    def test_time_reversal(self, bessel_propagator, packet):
        back = bessel_propagator.evolve(bessel_propagator.evolve(packet, 0.8), -0.8, check_tail=False)
        assert norm(back - packet) / norm(packet) < 1e-3


# ═══════════════════════════════════════════════════════════════
# OBSERVABILITY
# ═══════════════════════════════════════════════════════════════

class TestObservability:
    """Seeded ensemble estimates of C_obs."""

    def test_miller_time(self):
        assert miller_time(3.0, 4.0) == pytest.approx(math.pi)
        with pytest.raises(InvalidParameterError):
            miller_time(0.0, 4.0)

    def test_ensemble_is_unit_norm_and_seeded(self, x_grid, k_grid):
        omega = periodic_set(1.0, 4.0)
        first = build_ensemble(x_grid, k_grid, omega, 1.0, 10, seed=7)
        second = build_ensemble(x_grid, k_grid, omega, 1.0, 10, seed=7)
        assert len(first) == 10
        assert [m[0] for m in first].count("adversarial") == 3
        for (_, u, params), (_, v, _) in zip(first, second):
            assert norm(u) == pytest.approx(1.0)
            assert np.array_equal(u.values, v.values)
            assert params["centre"] <= 0.9 * x_grid.x_max

    def test_full_set_constant(self, x_grid, k_grid):
        spec = PropagatorSpec(OperatorSpec.point_interaction(1.0), x_grid, k_grid, T=2.0)
        report = estimate_cobs(spec, IntervalSet.full(), ensemble_size=4, seed=3, miller=(3.0, 4.0))
        assert report.c_obs_estimate == pytest.approx(0.5, abs=1e-3)
        assert report.miller_T_bound == pytest.approx(math.pi)
        assert set(report.residuals) == {"tail_mass_max", "norm_drift", "time_doubling"}
        assert report.to_dict()["ensemble_size"] == 4

    def test_same_seed_same_report(self, x_grid, k_grid):
        spec = PropagatorSpec(OperatorSpec.inverse_square(0.0), x_grid, k_grid, T=0.5)
        propagator = Propagator(spec)
        omega = periodic_set(1.0, 2.0)
        first = estimate_cobs(spec, omega, ensemble_size=5, seed=11, propagator=propagator)
        second = estimate_cobs(spec, omega, ensemble_size=5, seed=11, propagator=propagator, workers=1)
        assert first.c_obs_estimate == second.c_obs_estimate
        assert first.worst_index == second.worst_index
        assert first.c_obs_estimate >= 1.0 / spec.T


# ═══════════════════════════════════════════════════════════════
# RESOLVENT INEQUALITIES
# ═══════════════════════════════════════════════════════════════

class TestResolvent:
    """Hautus-type and shifted-window inequalities on sampled functions."""

    @pytest.fixture(scope="class")
    def neumann_kernels(self, x_grid, k_grid):
        op = OperatorSpec.point_interaction(1.0)
        return op, (build_kernel(op.forward_kernel(), x_grid, k_grid),
                    build_kernel(op.adjoint_kernel(), k_grid, x_grid))

    def test_shifted_bound_state(self, x_grid, k_grid):
        op = OperatorSpec.point_interaction(-1.0)
        phi = bound_state(op.point_spec, x_grid)
        assert norm(apply_shifted(op, phi, 0.0, k_grid) + phi) < 1e-6

    @pytest.mark.parametrize("lam", [0.0, 5.0, 25.0])
    def test_hautus_holds_for_band_packets(self, x_grid, k_grid, neumann_kernels, lam):
        op, kernels = neumann_kernels
        D = 100.0
        omega = periodic_set(1.0, 2.0)
        band = band_from_energy(EnergyWindow(lam, D), op, PLAIN)
        m = sharp_constant(build_band_subspace(band, x_grid, k_grid, adjoint=kernels[1]), omega)

        centre = math.sqrt(max(lam, 2.25))
        bump = np.exp(-((k_grid.nodes - centre) ** 2) / (2.0 * 0.2 ** 2))
        u = SampledFunction(x_grid, kernels[1].matrix @ bump)
        residual = hautus_residual(op, u, lam, 1.0 / D, m, omega, k_grid, kernels)
        assert residual >= -1e-2 * norm(u) ** 2

    def test_hautus_rejects_nonpositive_weights(self, x_grid, k_grid, neumann_kernels, packet):
        op, kernels = neumann_kernels
        with pytest.raises(InvalidParameterError):
            hautus_residual(op, packet, 1.0, 0.0, 1.0, IntervalSet.full(), k_grid, kernels)

    def test_gap_constant(self):
        assert resolvent_gap_constant(1.0) == pytest.approx(1.0 / 3.0)
        with pytest.raises(InvalidParameterError):
            resolvent_gap_constant(0.5)

    @pytest.fixture(scope="class")
    def bessel_kernels(self, x_grid, k_grid):
        op = OperatorSpec.inverse_square(0.75)
        return op, (build_kernel(op.forward_kernel(), x_grid, k_grid),
                    build_kernel(op.adjoint_kernel(), k_grid, x_grid))

    @pytest.mark.parametrize("kernels_fixture", ["neumann_kernels", "bessel_kernels"])
    @pytest.mark.parametrize("lam", [1.0, 4.0, 16.0])
    def test_gap_inequality_on_random_packets(self, request, x_grid, k_grid, kernels_fixture, lam):
        op, kernels = request.getfixturevalue(kernels_fixture)
        omega = periodic_set(1.0, 2.0)
        band = band_from_energy(EnergyWindow(lam, 1.0), op, SHIFTED)
        c_star = sharp_constant(build_band_subspace(band, x_grid, k_grid, adjoint=kernels[1]), omega)
        C = resolvent_gap_constant(c_star)

        rng = np.random.default_rng(20)
        x = x_grid.nodes
        for _ in range(20):
            centre = rng.uniform(5.0, 20.0)
            width = rng.uniform(0.5, 2.0)
            k0 = rng.uniform(0.0, 5.0)
            f = SampledFunction(x_grid, np.exp(-((x - centre) ** 2) / (2 * width ** 2)) * np.cos(k0 * x))
            residual = resolvent_gap_residual(op, f, lam, C, omega, k_grid, kernels)
            assert residual >= -1e-2 * norm(f) ** 2


class TestObservabilityDichotomy:
    """Growing gaps trap gap-centred packets; a thick set does not."""

    @pytest.mark.slow
    def test_square_gaps_much_worse_than_periodic(self, x_grid, k_grid):
        spec = PropagatorSpec(OperatorSpec.point_interaction(1.0), x_grid, k_grid, T=1.0)
        propagator = Propagator(spec)
        thick = estimate_cobs(spec, periodic_set(1.0, 2.0), ensemble_size=10, seed=5, propagator=propagator)
        sparse = estimate_cobs(spec, square_gaps_set(40.0), ensemble_size=10, seed=5, propagator=propagator)
        assert sparse.worst_kind == "adversarial"
        assert sparse.c_obs_estimate >= 10.0 * thick.c_obs_estimate
