"""Fixed-point verification, search, bounds and the exhaustive oracle."""

import numpy as np
import pytest

import relayosc as ro
from conftest import first_order, random_assumption2_vector, random_lag_spec


def square(P):
    return np.array([1] * (P // 2) + [-1] * (P // 2), dtype=np.int8)


class TestLoopGain:
    @pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
    def test_two_sample_closed_form(self, a):
        # hand computation: gbar = [1, a] / (1 - a^2), one shift, negate
        u = ro.loop_gain(first_order(a, delay=1), [1, -1], 2)
        np.testing.assert_allclose(u, [1 / (1 + a), -1 / (1 + a)], rtol=1e-14)

    def test_zero_pattern_gives_zero(self):
        u = ro.loop_gain(first_order(0.3, delay=2), [0, 0, 0, 0], 4)
        np.testing.assert_array_equal(u, np.zeros(4))

    def test_odd_symmetry(self):
        spec = first_order(0.4, delay=2)
        pat = np.array([1, 1, 0, -1, -1, 0], dtype=np.int8)
        np.testing.assert_allclose(ro.loop_gain(spec, -pat, 6),
                                   -ro.loop_gain(spec, pat, 6), rtol=0, atol=0)

    def test_length_mismatch(self):
        with pytest.raises(ro.InvalidInputError):
            ro.loop_gain(first_order(0.3, delay=1), [1, -1], 3)


class TestCheckFixedPoint:
    def test_example_system_square_wave(self):
        rep = ro.check_fixed_point(first_order(0.1, delay=9), square(18), 18)
        assert rep is not None and rep.P == 18 and rep.form == "d"
        assert rep.assumption2 and rep.thm1_balance and rep.within_bounds

    def test_no_delay_admits_nothing(self):
        spec = first_order(0.1)
        for P in range(2, 13):
            for pat in ro.candidate_patterns(P):
                assert ro.check_fixed_point(spec, pat, P) is None

    def test_amplitude_closed_form_and_oracle_agree(self):
        spec = first_order(0.1, delay=1)
        rep = ro.check_fixed_point(spec, [1, -1], 2)
        np.testing.assert_allclose(rep.amplitudes, [1 / 1.1, -1 / 1.1], rtol=1e-14)
        pairs = ro.brute_force_fixed_points(spec, 2)
        matches = [u for s, u in pairs if np.array_equal(s, rep.pattern)]
        assert len(matches) == 1
        np.testing.assert_allclose(matches[0], rep.amplitudes, rtol=1e-12)

    def test_rotated_input_reports_canonical(self):
        spec = first_order(0.1, delay=9)
        rep = ro.check_fixed_point(spec, np.roll(square(18), 5), 18)
        assert rep is not None
        np.testing.assert_array_equal(rep.pattern, square(18))

    def test_requires_matching_length_and_period(self):
        with pytest.raises(ro.InvalidInputError):
            ro.check_fixed_point(first_order(0.1, delay=1), [1, -1], 1)


class TestCandidatePatterns:
    def test_small_periods(self):
        assert [list(p) for p in ro.candidate_patterns(2)] == [[1, -1]]
        assert [list(p) for p in ro.candidate_patterns(4)] == [
            [1, 1, -1, -1], [1, 0, -1, 0]]
        assert [list(p) for p in ro.candidate_patterns(5)] == [
            [1, 1, -1, -1, 0], [1, 1, 0, -1, -1]]
        assert [list(p) for p in ro.candidate_patterns(3)] == [
            [1, -1, 0], [1, 0, -1]]

    def test_degenerate_period_rejected(self):
        with pytest.raises(ro.InvalidInputError):
            ro.candidate_patterns(1)

    def test_all_candidates_are_balanced_and_one_peaked(self):
        for P in range(2, 20):
            for pat in ro.candidate_patterns(P):
                counts = ro.count_signs(pat)
                assert counts.positive == counts.negative
                assert ro.satisfies_assumption2(np.asarray(pat, dtype=float))


class TestSearch:
    def test_example_system_periods(self):
        reports = ro.search_oscillations(first_order(0.1, delay=9), 2, 20)
        assert sorted(r.P for r in reports) == [2, 6, 18]

    def test_delay_four_has_only_the_double_period(self):
        reports = ro.search_oscillations(first_order(0.1, delay=4), 4, 12)
        assert [r.P for r in reports] == [8]

    def test_no_delay_finds_nothing(self):
        assert ro.search_oscillations(first_order(0.1), 2, 12) == []

    def test_bad_range(self):
        with pytest.raises(ro.InvalidInputError):
            ro.search_oscillations(first_order(0.1, delay=1), 5, 4)

    def test_out_of_window_periods_are_flagged(self):
        reports = ro.search_oscillations(first_order(0.1, delay=9), 2, 20)
        by_period = {r.P: r for r in reports}
        assert by_period[18].within_bounds is True
        assert by_period[2].within_bounds is False  # found anyway, flagged

    def test_pruning_drops_out_of_window_periods(self):
        pruned = ro.search_oscillations(first_order(0.1, delay=9), 2, 20, prune=True)
        assert sorted(r.P for r in pruned) == [18]


class TestComputePs:
    def test_derived_single_lag_values(self):
        # condition for g0(t) = a^t reduces to a^t < 1/2
        assert ro.compute_Ps(first_order(0.1)) == 1
        assert ro.compute_Ps(first_order(0.9)) == 7
        assert ro.compute_Ps(first_order(0.5)) == 2

    def test_matches_partial_sum_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            spec = random_lag_spec(rng)
            g = [spec.kernel.sample(t) for t in range(4000)]
            total = spec.kernel.total()
            expect = next(t for t in range(1, 4000)
                          if 2 * sum(g[:t]) - total > 0)
            assert ro.compute_Ps(spec) == expect

    def test_exact_raw_samples(self):
        spec = ro.SystemSpec(delay=0, kernel=ro.RawSamples(g0=(4.0, 3.0, 2.0, 1.0)))
        # prefix sums 4,7,9,10 vs tails 6,3,1,0; first strict win at t=2
        assert ro.compute_Ps(spec) == 2

    def test_undecidable_tail_bound(self):
        spec = ro.SystemSpec(delay=0,
                             kernel=ro.RawSamples(g0=(1.0, 0.99), tail_bound=0.5))
        with pytest.raises(ro.UndecidableError):
            ro.compute_Ps(spec)


class TestPeriodBounds:
    def test_contract_examples(self):
        b = ro.period_bounds(first_order(0.9, delay=8))
        assert (b.lower, b.upper, b.upper_convex) == (16, 30, 34)
        assert b.effective_upper == 30
        b = ro.period_bounds(first_order(0.1, delay=5))
        assert (b.lower, b.upper, b.upper_convex) == (10, 12, 22)
        assert b.effective_upper == 12

    def test_unit_delay(self):
        b = ro.period_bounds(first_order(0.3, delay=1))
        assert b.lower == 2
        assert b.upper_convex is None  # convex cap stated for delay > 1 only

    def test_delay_free_not_applicable(self):
        with pytest.raises(ro.NotApplicableError):
            ro.period_bounds(first_order(0.3))


class TestExistsDoubleDelayPeriod:
    def test_fast_pole_full_diagonal(self):
        for pd in range(1, 13):
            assert ro.exists_period_2Pd(first_order(0.1, delay=pd))

    def test_unit_delay_closed_form(self):
        # zero-lag entry is (1 - a) / (1 - a^2) > 0 for every pole
        for a in np.linspace(0.05, 0.95, 10):
            spec = first_order(a, delay=1)
            assert ro.exists_period_2Pd(spec)
            gbar = ro.periodic_summation(spec, 2).gbar
            value = ro.circulant_apply(gbar, [1.0, -1.0])[0]
            assert value == pytest.approx((1 - a) / (1 - a**2), rel=1e-12)

    def test_slow_pole_long_delay_fails(self):
        # geometric evaluation: 1 - sum_{1..9} 0.9^i + sum_{10..17} 0.9^i < 0
        a = 0.9
        raw = 1 - sum(a**i for i in range(1, 10)) + sum(a**i for i in range(10, 18))
        assert raw == pytest.approx(-2.5274, abs=1e-4)
        assert not ro.exists_period_2Pd(first_order(a, delay=9))

    def test_delay_free_not_applicable(self):
        with pytest.raises(ro.NotApplicableError):
            ro.exists_period_2Pd(first_order(0.5))


class TestDerivedPeriods:
    def test_contract_examples(self):
        assert ro.derived_periods(9) == {18, 6, 2}
        assert ro.derived_periods(12) == {24, 8}
        assert ro.derived_periods(4) == {8}

    def test_members_are_even_divisor_quotients(self):
        for pd in range(1, 40):
            periods = ro.derived_periods(pd)
            assert 2 * pd in periods
            for p in periods:
                assert p % 2 == 0 and (2 * pd) % p == 0
                assert ((2 * pd) // p) % 2 == 1


class TestAbsence:
    def test_positive_leading_sample_no_delay(self):
        spec = ro.SystemSpec(delay=0, kernel=ro.LagSum(terms=((1.0, 0.3), (2.0, 0.5))))
        assert ro.absence_guaranteed(spec)

    def test_any_delay_disqualifies(self):
        assert not ro.absence_guaranteed(first_order(0.3, delay=1))

    def test_oracle_confirms_absence(self):
        spec = ro.SystemSpec(delay=0, kernel=ro.LagSum(terms=((1.0, 0.3), (2.0, 0.5))))
        for P in range(2, 11):
            pairs = ro.brute_force_fixed_points(spec, P)
            assert not any(ro.satisfies_assumption2(u) for _, u in pairs)


class TestBruteForceOracle:
    def test_two_sample_enumeration(self):
        pairs = ro.brute_force_fixed_points(first_order(0.1, delay=1), 2)
        found = {tuple(int(x) for x in s): u for s, u in pairs}
        assert set(found) == {(1, -1), (-1, 1)}
        np.testing.assert_allclose(found[(1, -1)], [1 / 1.1, -1 / 1.1], rtol=1e-14)
        np.testing.assert_allclose(found[(-1, 1)], [-1 / 1.1, 1 / 1.1], rtol=1e-14)

    def test_example_system_period_six_orbit(self):
        pairs = ro.brute_force_fixed_points(first_order(0.1, delay=9), 6)
        one_peaked = {tuple(int(x) for x in s) for s, u in pairs
                      if ro.satisfies_assumption2(u)}
        assert one_peaked == {tuple(np.roll(square(6), k)) for k in range(6)}
        # the period-2 oscillation tiled three times also closes the loop
        # at P = 6; the oracle reports it unfiltered
        rest = {tuple(int(x) for x in s) for s, _ in pairs} - one_peaked
        assert rest == {(1, -1, 1, -1, 1, -1), (-1, 1, -1, 1, -1, 1)}

    def test_enumeration_guard(self):
        with pytest.raises(ro.EnumerationLimitError):
            ro.brute_force_fixed_points(first_order(0.1, delay=1), 15)

    def test_rotation_and_negation_closure(self):
        spec = first_order(0.35, delay=2)
        for P in (4, 5, 6):
            pairs = ro.brute_force_fixed_points(spec, P)
            found = {tuple(int(x) for x in s): u for s, u in pairs}
            for s, u in pairs:
                neg = tuple(int(x) for x in -s)
                assert neg in found
                np.testing.assert_allclose(found[neg], -u, rtol=0, atol=1e-15)
                for k in range(P):
                    rot = tuple(int(x) for x in np.roll(s, k))
                    assert rot in found
                    np.testing.assert_allclose(found[rot], np.roll(u, k),
                                               rtol=0, atol=1e-15)

    def test_balance_of_one_peaked_fixed_points(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            spec = random_lag_spec(rng, delay=int(rng.integers(0, 4)))
            for P in range(2, 9):
                for s, u in ro.brute_force_fixed_points(spec, P):
                    if ro.satisfies_assumption2(u):
                        counts = ro.count_signs(np.asarray(s, dtype=float))
                        assert counts.positive == counts.negative


class TestLoopGainPreservesOnePeak:
    def test_random_kernels_and_periods(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            spec = random_lag_spec(rng)
            P = int(rng.integers(4, 17))
            u = random_assumption2_vector(rng, P)
            gbar = ro.periodic_summation(spec, P).gbar
            o = -ro.circulant_apply(gbar, np.sign(u))
            assert ro.cyclic_variation(ro.cyclic_diff(o)) <= 2
            assert ro.cyclic_variation(o, "plus") <= 2


class TestOraclePeriodWindow:
    """No one-peaked fixed point lands outside the admissible window."""

    @pytest.mark.parametrize("a,delay", [(0.1, 5), (0.9, 3)])
    def test_window_holds_up_to_p14(self, a, delay):
        spec = first_order(a, delay=delay)
        bounds = ro.period_bounds(spec)
        cap = min(bounds.upper, 4 * delay + 2)
        for P in range(2, 15):
            for s, u in ro.brute_force_fixed_points(spec, P):
                if not ro.satisfies_assumption2(u):
                    continue
                if P >= delay:
                    assert bounds.lower <= P <= cap
                    assert not delay <= P < 2 * delay

    def test_canonicalization_identifies_orbits(self):
        spec = first_order(0.1, delay=9)
        pairs = ro.brute_force_fixed_points(spec, 6)
        canon = {tuple(int(x) for x in ro.canonical_rotation(s)[0]) for s, _ in pairs}
        assert canon == {tuple(square(6))}


class TestSlowPoleMaxPeriods:
    """Verified maxima for the slow pole (a = 0.9): exact fixed-point
    verification, the exhaustive oracle and time stepping all agree, and
    disagree with the published figure from delay 4 onward (whose series
    matches pole 0.99 instead)."""

    def test_exact_maxima(self):
        maxima = []
        for pd in range(1, 9):
            spec = first_order(0.9, delay=pd)
            cap = min(ro.period_bounds(spec).upper, 4 * pd + 2)
            reports = ro.search_oscillations(spec, max(2, pd), cap + 2)
            maxima.append(max(r.P for r in reports))
        assert maxima == [2, 6, 10, 12, 16, 18, 20, 24]

    def test_oracle_and_dynamics_corroborate_delay_four(self):
        spec = first_order(0.9, delay=4)
        assert ro.brute_force_fixed_points(spec, 14) == []
        traj = ro.simulate(spec, [1, 1, 1, 1], 400)
        assert ro.detect_period(traj, 40)[0] == 12

    def test_pole_099_reproduces_published_series(self):
        maxima = []
        for pd in range(1, 9):
            spec = first_order(0.99, delay=pd)
            cap = min(ro.period_bounds(spec).upper, 4 * pd + 2)
            reports = ro.search_oscillations(spec, max(2, pd), cap + 2)
            maxima.append(max(r.P for r in reports))
        assert maxima == [2, 6, 10, 14, 18, 22, 26, 30]
