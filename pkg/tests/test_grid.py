"""
Tests for grid: quadrature rules and sampled functions.
"""

import math

import numpy as np
import pytest

from grid import (
    GridScheme,
    SampledFunction,
    assert_tail_mass,
    gauss_legendre_interval,
    inner_product,
    make_grid,
    mass_in,
    norm,
    omega_weights,
    restrict,
    tail_mass,
)
from scripts.errors import DomainViolationError, GridMismatchError, InvalidParameterError
from sets import IntervalSet, periodic_set


@pytest.fixture(scope="module")
def gl_grid():
    return make_grid(10.0, 128)


@pytest.fixture(scope="module")
def mid_grid():
    return make_grid(10.0, 100, GridScheme.MIDPOINT)


class TestMakeGrid:
    """Node placement, weights and parameter validation."""

    def test_weights_sum_to_length(self, gl_grid, mid_grid):
        assert gl_grid.weights.sum() == pytest.approx(10.0, rel=1e-14)
        assert mid_grid.weights.sum() == pytest.approx(10.0, rel=1e-14)

    def test_nodes_inside_open_interval(self, gl_grid):
        assert gl_grid.nodes[0] > 0
        assert gl_grid.nodes[-1] < 10.0
        assert np.all(np.diff(gl_grid.nodes) > 0)

    def test_gauss_legendre_is_exact_for_polynomials(self, gl_grid):
        """Eight-node panels integrate degree 15 exactly."""
        assert gl_grid.integrate(gl_grid.nodes ** 15) == pytest.approx(1e16 / 16, rel=1e-12)

    def test_gauss_legendre_smooth_integrand(self, gl_grid):
        assert gl_grid.integrate(np.exp(-gl_grid.nodes)) == pytest.approx(1.0 - math.exp(-10.0), rel=1e-13)

    def test_arrays_are_read_only(self, gl_grid):
        with pytest.raises(ValueError):
            gl_grid.nodes[0] = 1.0

    def test_signature(self, gl_grid):
        assert gl_grid.signature == ("gauss_legendre", 128, 10.0)
        assert gl_grid.same_as(make_grid(10.0, 128))
        assert not gl_grid.same_as(make_grid(10.0, 136))

    def test_panel_multiple_required(self):
        with pytest.raises(InvalidParameterError):
            make_grid(10.0, 100)

    def test_too_few_nodes(self):
        with pytest.raises(InvalidParameterError):
            make_grid(10.0, 4, GridScheme.MIDPOINT)

    def test_unknown_scheme(self):
        with pytest.raises(InvalidParameterError):
            make_grid(10.0, 64, "simpson")

    def test_nonpositive_radius(self):
        with pytest.raises(InvalidParameterError):
            make_grid(0.0, 64)

    def test_interval_rule(self):
        nodes, weights = gauss_legendre_interval(1.0, 3.0, nodes_per_unit=16)
        assert len(nodes) % 8 == 0
        assert np.sum(weights * nodes ** 3) == pytest.approx((81.0 - 1.0) / 4.0, rel=1e-13)
        with pytest.raises(InvalidParameterError):
            gauss_legendre_interval(2.0, 1.0)


class TestSampledFunction:
    """Discrete L^2 geometry of sampled functions."""

    def test_norm_of_exponential(self, gl_grid):
        f = SampledFunction.from_callable(gl_grid, lambda x: np.exp(-x))
        assert norm(f) ** 2 == pytest.approx(0.5 * (1.0 - math.exp(-20.0)), rel=1e-12)

    def test_inner_product_is_conjugate_linear_in_first_slot(self, gl_grid):
        f = SampledFunction.from_callable(gl_grid, lambda x: np.exp(-x))
        g = f.scale(1j)
        assert inner_product(g, f) == pytest.approx(-1j * inner_product(f, f))

    def test_grid_mismatch(self, gl_grid, mid_grid):
        f = SampledFunction.zeros(gl_grid)
        g = SampledFunction.zeros(mid_grid)
        with pytest.raises(GridMismatchError):
            inner_product(f, g)
        with pytest.raises(GridMismatchError):
            f + g

    def test_wrong_length_rejected(self, gl_grid):
        with pytest.raises(InvalidParameterError):
            SampledFunction(gl_grid, np.zeros(3))

    def test_non_finite_rejected(self, gl_grid):
        values = np.zeros(gl_grid.n)
        values[0] = np.nan
        with pytest.raises(InvalidParameterError):
            SampledFunction(gl_grid, values)

    def test_restrict_to_periodic_set(self, mid_grid):
        one = SampledFunction(mid_grid, np.ones(mid_grid.n))
        # [0,1] ∪ [2,3] ∪ ... inside [0,10]: half the length
        assert norm(restrict(one, periodic_set(1.0, 2.0))) ** 2 == pytest.approx(5.0, abs=0.11)

    def test_tail_mass(self, gl_grid):
        decayed = SampledFunction.from_callable(gl_grid, lambda x: np.exp(-((x - 2.0) ** 2)))
        flat = SampledFunction(gl_grid, np.ones(gl_grid.n))
        assert tail_mass(decayed) < 1e-12
        assert tail_mass(flat) == pytest.approx(0.05, abs=0.01)
        assert tail_mass(SampledFunction.zeros(gl_grid)) == 0.0

    def test_assert_tail_mass_raises_near_radius(self, gl_grid):
        flat = SampledFunction(gl_grid, np.ones(gl_grid.n))
        with pytest.raises(DomainViolationError):
            assert_tail_mass(flat)


class TestOmegaWeights:
    """Mass inside a set that cuts through quadrature cells."""

    def test_cut_panel_is_resolved(self, gl_grid):
        decay = SampledFunction.from_callable(gl_grid, lambda x: np.exp(-x))
        # x = 1 sits inside the panel [0.625, 1.25]
        expected = 0.5 * (1.0 - math.exp(-2.0))
        assert mass_in(decay, IntervalSet(((0.0, 1.0),))) == pytest.approx(expected, abs=1e-7)

    def test_several_cuts_in_one_panel(self, gl_grid):
        decay = SampledFunction.from_callable(gl_grid, lambda x: np.exp(-x))
        omega = IntervalSet(((0.7, 0.8), (0.9, 1.1)))
        expected = sum(0.5 * (math.exp(-2 * a) - math.exp(-2 * b)) for a, b in omega.intervals)
        assert mass_in(decay, omega) == pytest.approx(expected, abs=1e-7)

    def test_midpoint_cells_use_overlap(self, mid_grid):
        one = SampledFunction(mid_grid, np.ones(mid_grid.n))
        assert mass_in(one, periodic_set(1.0, 2.0)) == pytest.approx(5.0, abs=1e-12)
        assert mass_in(one, IntervalSet(((0.0, 0.25),))) == pytest.approx(0.25, abs=1e-12)

    def test_full_and_empty(self, gl_grid):
        assert np.allclose(omega_weights(gl_grid, IntervalSet.full()), gl_grid.weights, rtol=0, atol=1e-15)
        assert not omega_weights(gl_grid, IntervalSet.empty()).any()


class TestSampledCsv:
    """(x, re, im) CSV import/export."""

    def test_round_trip_on_midpoint_grid(self, tmp_path, mid_grid):
        f = SampledFunction.from_callable(mid_grid, lambda x: np.exp(-x) * (1 + 2j))
        path = tmp_path / "f.csv"
        f.to_csv(str(path))

        raw = path.read_bytes()
        assert raw.startswith(b"x,re,im\n")
        assert b"\r\n" not in raw

        back = SampledFunction.read_csv(str(path))
        assert back.grid.n == mid_grid.n
        assert np.allclose(back.grid.nodes, mid_grid.nodes, rtol=1e-14)
        assert np.array_equal(back.values, f.values)

    def test_mismatched_grid_rejected(self, tmp_path, mid_grid, gl_grid):
        path = tmp_path / "f.csv"
        SampledFunction.zeros(mid_grid).to_csv(str(path))
        with pytest.raises(GridMismatchError):
            SampledFunction.read_csv(str(path), grid=gl_grid)
