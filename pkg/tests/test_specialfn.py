"""
Tests for specialfn: Bessel J_nu, Hankel H^{+/-}_nu and the asymptotic split.
"""

import math

import numpy as np
import pytest
from scipy.special import hankel1

from scripts.errors import DomainError, InvalidParameterError
from specialfn import (
    BesselOrder,
    asymptotic_branch,
    asymptotic_split,
    bessel_j,
    hankel_h,
    recurrence_residual,
    remainder_bound,
    series_branch,
    wronskian,
)
from tests.oracles import bessel_j_mp, bessel_scale, hankel1_mp

ORDERS = [0.0, 0.3, 0.5, 1.0, 2.0]


# ═══════════════════════════════════════════════════════════════
# BESSEL J
# ═══════════════════════════════════════════════════════════════

class TestBesselAccuracy:
    """J_nu against the mpmath oracle and closed forms."""

    @pytest.mark.parametrize("nu", ORDERS)
    def test_matches_arbitrary_precision_oracle(self, nu):
        """1000 points on [0, 200], 1e-10 relative to the oscillation envelope."""
        xs = np.linspace(0.0, 200.0, 1000)
        expected = bessel_j_mp(nu, xs)
        got = bessel_j(nu, xs)
        err = np.abs(got - expected) / bessel_scale(xs, expected)
        assert len(err) == 1000
        assert err.max() < 1e-10

    def test_half_order_at_half_pi(self):
        """J_{1/2}(pi/2) = 2/pi."""
        assert bessel_j(0.5, math.pi / 2) == pytest.approx(2.0 / math.pi, abs=1e-12)

    def test_values_at_origin(self):
        assert bessel_j(0.0, 0.0) == pytest.approx(1.0)
        assert bessel_j(1.0, 0.0) == 0.0
        assert bessel_j(0.3, 0.0) == 0.0

    def test_scalar_in_scalar_out(self):
        assert isinstance(bessel_j(1.0, 2.5), float)
        assert bessel_j(1.0, np.array([2.5])).shape == (1,)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.0])
    def test_branches_agree_across_switchover(self, nu):
        """Series and asymptotic branches coincide well inside their overlap."""
        xs = np.linspace(nu + 10.0, max(nu + 20.0, 25.0), 80)
        series = series_branch(nu, xs)
        asym = asymptotic_branch(nu, xs)
        assert np.max(np.abs(series - asym) / bessel_scale(xs, series)) < 1e-8

    @pytest.mark.parametrize("nu", [0.5, 1.0, 2.0])
    def test_three_term_recurrence(self, nu):
        xs = np.linspace(0.5, 50.0, 200)
        assert np.max(recurrence_residual(nu, xs)) < 1e-10


class TestBesselDomain:
    """Domain errors for orders and arguments."""

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            bessel_j(1.0, -0.5)

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            BesselOrder(-1.0)

    def test_order_from_alpha(self):
        assert BesselOrder.from_alpha(0.0).nu == pytest.approx(0.5)
        assert BesselOrder.from_alpha(-0.25).nu == 0.0
        assert BesselOrder(0.5).kappa == pytest.approx(2.0)
        with pytest.raises(DomainError):
            BesselOrder.from_alpha(-0.3)


class TestAsymptoticSplit:
    """J_nu = leading + R_nu with |R_nu(x)| x^{3/2} bounded."""

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.0])
    def test_remainder_decays_like_x_to_minus_three_halves(self, nu):
        bound = remainder_bound(nu)
        assert bound is not None
        for x in np.linspace(1.0, 100.0, 200):
            split = asymptotic_split(nu, float(x))
            assert split.scaled_remainder <= bound
            assert split.value == pytest.approx(bessel_j(nu, float(x)), abs=1e-15)

    def test_half_order_remainder_vanishes(self):
        """J_{1/2} is exactly its leading term."""
        split = asymptotic_split(0.5, 30.0)
        assert abs(split.remainder) < 1e-14

    def test_unrecorded_order(self):
        assert remainder_bound(0.7) is None

    def test_split_needs_positive_x(self):
        with pytest.raises(DomainError):
            asymptotic_split(1.0, 0.0)


# ═══════════════════════════════════════════════════════════════
# HANKEL FUNCTIONS
# ═══════════════════════════════════════════════════════════════

class TestHankel:
    """H^{+/-}_nu = J_nu +/- i Y_nu."""

    def test_half_order_closed_form(self):
        """H^+_{1/2}(x) = -i sqrt(2/(pi x)) e^{ix}."""
        xs = np.linspace(0.5, 30.0, 100)
        expected = -1j * np.sqrt(2.0 / (np.pi * xs)) * np.exp(1j * xs)
        assert np.max(np.abs(hankel_h(1, 0.5, xs) - expected)) < 1e-9

    def test_second_kind_is_conjugate(self):
        xs = np.linspace(0.5, 30.0, 50)
        assert np.allclose(hankel_h(-1, 0.3, xs), np.conj(hankel_h(1, 0.3, xs)), atol=1e-12)

    @pytest.mark.parametrize("nu", [0.0, 1.0])
    def test_integer_order_matches_scipy(self, nu):
        xs = np.linspace(0.5, 40.0, 80)
        assert np.max(np.abs(hankel_h(1, nu, xs) - hankel1(nu, xs))) < 1e-7

    @pytest.mark.parametrize("nu", [1.0 - 1e-6, 1.0 - 1e-9, 1.0 - 1e-11, 2.0 + 1e-10, 1e-7, 1.0 - 2e-4])
    def test_near_integer_order(self, nu):
        """Orders next to an integer keep full accuracy, not just their J part."""
        xs = np.array([0.5, 1.0, 2.5, 6.0, 12.0, 17.5])
        reference = hankel1_mp(nu, xs)
        assert np.max(np.abs(hankel_h(1, nu, xs) - reference) / np.abs(reference)) < 1e-9

    @pytest.mark.parametrize("nu, lam", [(0.3, 1.0), (1.0, 4.0), (0.5, 2.0), (1.0 - 1e-8, 1.0)])
    def test_wronskian_is_two_i_over_pi(self, nu, lam):
        xs = np.linspace(0.5, 10.0, 40)
        assert np.max(np.abs(wronskian(nu, xs, lam) - 2j / math.pi)) < 1e-8

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(DomainError):
            hankel_h(1, 1.0, 0.0)

    def test_rejects_bad_sign(self):
        with pytest.raises(InvalidParameterError):
            hankel_h(0, 1.0, 1.0)
