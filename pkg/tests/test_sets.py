"""
Tests for sets: interval unions, thickness profiles and the transfer constants.
"""

import math

import numpy as np
import pytest

from scripts.errors import ConfigError, HorizonMissingError, InvalidParameterError, WitnessMissingError
from sets import (
    MU_TO_THICK,
    THICK_TO_MU,
    IntervalSet,
    ThicknessWitness,
    left_packed_mu_ratio,
    monotone_weight_gap,
    mu_thickness_profile,
    periodic_set,
    square_gaps_set,
    thickness_profile,
    thickness_transfer_constants,
    trim_tail,
)
from tests.oracles import brute_force_profile, random_lattice_intervals


@pytest.fixture(scope="module")
def even_cells():
    """[0,1] ∪ [2,3] ∪ [4,5] ∪ ..."""
    return periodic_set(1.0, 2.0)


# ═══════════════════════════════════════════════════════════════
# INTERVAL SETS
# ═══════════════════════════════════════════════════════════════

class TestIntervalSet:
    """Construction, measure and membership."""

    def test_overlapping_intervals_rejected(self):
        with pytest.raises(InvalidParameterError):
            IntervalSet(((0.0, 2.0), (1.0, 3.0)))

    def test_negative_start_rejected(self):
        with pytest.raises(InvalidParameterError):
            IntervalSet(((-1.0, 2.0),))

    def test_from_unsorted_merges(self):
        s = IntervalSet.from_unsorted([(3.0, 4.0), (0.0, 1.0), (0.5, 2.0), (2.0, 2.5)])
        assert s.intervals == ((0.0, 2.5), (3.0, 4.0))

    def test_periodic_measure(self, even_cells):
        assert even_cells.measure(0.0, 10.0) == pytest.approx(5.0)
        assert even_cells.measure(0.5, 2.5) == pytest.approx(1.0)
        assert even_cells.density() == pytest.approx(0.5)

    def test_contains(self, even_cells):
        assert list(even_cells.contains([0.5, 1.5, 2.0, 101.0])) == [True, False, True, True]

    def test_cut_below(self, even_cells):
        cut = even_cells.cut_below(3.0)
        assert cut.measure(0.0, 10.0) == pytest.approx(3.0)
        assert not cut.contains(2.5)
        assert cut.is_periodic

    def test_full_and_empty(self):
        assert IntervalSet.full().is_full
        assert IntervalSet.full().measure(0.0, 7.0) == pytest.approx(7.0)
        assert IntervalSet.empty().measure(0.0, 7.0) == 0.0

    def test_square_gaps_set(self):
        s = square_gaps_set(40.0)
        assert s.intervals[:3] == ((0.0, 2.0), (4.0, 5.0), (9.0, 10.0))
        assert s.intervals[-1] == (36.0, 37.0)

    def test_from_dict_reports_pointer(self):
        with pytest.raises(ConfigError) as exc:
            IntervalSet.from_dict({"intervals": [[0, 1], [1]]}, "/omega")
        assert exc.value.pointer == "/omega/intervals/1"

    def test_to_dict_from_dict(self, even_cells):
        cut = even_cells.cut_below(3.0)
        assert IntervalSet.from_dict(cut.to_dict()) == cut


# ═══════════════════════════════════════════════════════════════
# THICKNESS
# ═══════════════════════════════════════════════════════════════

class TestThicknessProfile:
    """Exact infimum over windows."""

    @pytest.mark.parametrize("L, gamma", [(1.0, 0.0), (2.0, 0.5), (4.0, 0.5), (3.0, 1.0 / 3.0)])
    def test_even_cells(self, even_cells, L, gamma):
        """gamma(1) = 0 because [1, 2] misses the set."""
        assert thickness_profile(even_cells, L) == pytest.approx(gamma, abs=1e-12)

    def test_full_and_empty(self):
        assert thickness_profile(IntervalSet.full(), 1.0) == 1.0
        assert thickness_profile(IntervalSet.empty(), 1.0) == 0.0

    def test_aperiodic_needs_horizon(self):
        with pytest.raises(HorizonMissingError):
            thickness_profile(IntervalSet(((0.0, 1.0),)), 1.0)

    def test_growing_gaps_are_not_thick(self):
        assert thickness_profile(square_gaps_set(40.0), 4.0, horizon=40.0) == 0.0

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_brute_force_scan(self, seed):
        rng = np.random.default_rng(seed)
        step = 0.125
        intervals = random_lattice_intervals(rng, 20.0, step)
        omega = IntervalSet(tuple(intervals))
        for L in (1.0, 2.5, 4.0):
            exact = thickness_profile(omega, L, horizon=20.0)
            brute = brute_force_profile(intervals, L, 20.0, step)
            assert exact == pytest.approx(brute, abs=1e-9)

    def test_witness_verify(self, even_cells):
        assert ThicknessWitness(0.5, 2.0).verify(even_cells)
        assert not ThicknessWitness(0.6, 2.0).verify(even_cells)
        with pytest.raises(InvalidParameterError):
            ThicknessWitness(1.5, 2.0)


class TestMuThickness:
    """Thickness against t^{2 nu + 1} dt."""

    def test_full_set(self):
        assert mu_thickness_profile(IntervalSet.full(), 0.5, 2.0) == 1.0

    def test_left_packed_lower_bound(self, even_cells):
        """A (1/2, 2)-thick set is mu_0-thick with at least r^2 = 1/4."""
        bound = left_packed_mu_ratio(0.5, 2.0, 0.0)
        assert bound == pytest.approx(0.25)
        assert mu_thickness_profile(even_cells, 0.0, 2.0) >= bound - 1e-12

    def test_never_exceeds_one(self, even_cells):
        assert 0.0 < mu_thickness_profile(even_cells, 1.0, 4.0) <= 1.0


class TestTransferConstants:
    """thick <-> mu_nu-thick constants."""

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5])
    def test_mu_to_thick_is_r_over_kappa_plus_one(self, nu):
        assert thickness_transfer_constants(MU_TO_THICK, 0.5, 1.0, nu) == pytest.approx(0.5 / (2 * nu + 2))

    def test_thick_to_mu_example(self):
        """min{1/4, 1/8, 1/8, 1/3} with eps = rL."""
        assert thickness_transfer_constants(THICK_TO_MU, 0.5, 1.0, 0.0) == pytest.approx(0.125)

    def test_thick_to_mu_shrinks_with_order(self):
        values = [thickness_transfer_constants(THICK_TO_MU, 0.5, 1.0, nu) for nu in (0.0, 0.5, 1.0)]
        assert values[0] > values[1] > values[2] > 0

    def test_bad_arguments(self):
        with pytest.raises(InvalidParameterError):
            thickness_transfer_constants(MU_TO_THICK, 1.5, 1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            thickness_transfer_constants("sideways", 0.5, 1.0, 0.0)


class TestTrimTail:
    """Removing [0, c) keeps thickness with (L1, r1)."""

    def test_constants(self, even_cells):
        _, L1, r1 = trim_tail(even_cells, 3.0, ThicknessWitness(0.5, 2.0))
        assert L1 == pytest.approx(6.0)
        assert r1 == pytest.approx(1.0 / 6.0)

    def test_witness_required(self, even_cells):
        with pytest.raises(WitnessMissingError):
            trim_tail(even_cells, 3.0, None)

    @pytest.mark.parametrize("seed", range(10))
    def test_trimmed_set_stays_thick(self, seed):
        rng = np.random.default_rng(100 + seed)
        period = float(rng.uniform(1.0, 5.0))
        on = float(rng.uniform(0.1, 0.9)) * period
        offset = float(rng.uniform(0.0, period - on))
        omega = periodic_set(on, period, offset)
        gamma = thickness_profile(omega, period)
        c = float(rng.uniform(0.0, 12.0))

        trimmed, L1, r1 = trim_tail(omega, c, ThicknessWitness(gamma, period))
        assert L1 == pytest.approx((math.floor(c / period) + 2) * period)
        assert thickness_profile(trimmed, L1) >= r1 - 1e-12


class TestMonotoneWeightGap:
    """Mass pushed to the right of a window only gains weight under t^k."""

    def test_nonnegative(self):
        assert monotone_weight_gap([[1.5, 2.0]], 1.0, 1.0, 0.5, 2.0) > 0
        assert monotone_weight_gap([[1.0, 1.5]], 1.0, 1.0, 0.5, 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_random_pieces(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            x = float(rng.uniform(0.0, 10.0))
            cuts = np.sort(rng.uniform(x, x + 2.0, 4))
            pieces = cuts.reshape(-1, 2)
            gamma = float((pieces[:, 1] - pieces[:, 0]).sum() / 2.0)
            assert monotone_weight_gap(pieces, x, 2.0, gamma, 3.0) >= -1e-9

    def test_piece_outside_window(self):
        with pytest.raises(InvalidParameterError):
            monotone_weight_gap([[0.0, 3.0]], 1.0, 1.0, 0.5, 2.0)
