import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfdx.bayes_factors import BfKind, GaussianSummary, robert_bf, robert_bf_upper, robert_required_mean
from bfdx.errors import InfeasibleError
from bfdx.lindley import (
    detect_lindley_case,
    lindley_asymptote,
    lindley_bf_range,
    lindley_mean_range,
    lindley_probability,
    max_conventional_mean,
    min_lindley_mean,
)
from bfdx.numerics import std_normal_cdf

KINDS = list(BfKind)


class TestMeanRange:
    def test_robert_example(self):
        iv = lindley_mean_range(5000, 3, BfKind.ROBERT)
        assert iv.lo == pytest.approx(0.0209629, abs=1e-6)
        assert iv.hi == pytest.approx(0.035557, abs=1e-5)

    def test_jzs_example(self):
        iv = lindley_mean_range(5000, 3, "jzs")
        assert iv.lo == pytest.approx(0.0209629, abs=1e-6)
        assert iv.hi == pytest.approx(2.467 / math.sqrt(5000), abs=1e-4)

    def test_empty_at_small_n(self):
        # the Robert factor can reach 3 at n = 10, but the counter interval needs a larger mean
        assert lindley_mean_range(10, 3, BfKind.ROBERT) is None

    def test_unreachable_threshold(self):
        with pytest.raises(InfeasibleError):
            max_conventional_mean(5000, 1e6, BfKind.ROBERT)

    @pytest.mark.parametrize("kind", KINDS)
    def test_upper_end_is_threshold(self, kind):
        hi = max_conventional_mean(5000, 3, kind)
        s = GaussianSummary(5000, hi)
        assert detect_lindley_case(s, 3, kind).conventional_bf == pytest.approx(3.0, rel=1e-7)


class TestBfRange:
    @pytest.mark.parametrize(
        "kind, top, tol",
        [(BfKind.ROBERT, 23.5778, 0.02), (BfKind.JZS, 20.9126, 0.05), (BfKind.SCALED_INFORMATION, 16.6752, 0.1)],
    )
    def test_examples(self, kind, top, tol):
        iv = lindley_bf_range(5000, 3, kind)
        assert iv.lo == 3
        assert iv.hi == pytest.approx(top, abs=tol)

    def test_robert_top_matches_closed_form(self):
        for n in (100, 5000, 10**6):
            assert lindley_bf_range(n, 3, "robert").hi == pytest.approx(robert_bf_upper(n, 3), rel=1e-12)
            closed = math.sqrt(n + 1) * math.exp(-n * math.log(3) / (n + 1))
            assert robert_bf_upper(n, 3) == pytest.approx(closed, rel=1e-12)

    def test_empty_range_raises(self):
        with pytest.raises(InfeasibleError):
            lindley_bf_range(10, 3, "robert")


class TestProbability:
    @pytest.mark.parametrize(
        "kind, expected, tol",
        [(BfKind.ROBERT, 0.1263, 5e-4), (BfKind.JZS, 0.1246, 1e-3), (BfKind.SCALED_INFORMATION, 0.1206, 1e-3)],
    )
    def test_examples(self, kind, expected, tol):
        assert lindley_probability(5000, 3, kind) == pytest.approx(expected, abs=tol)

    @pytest.mark.parametrize("n, expected", [(10_000, 0.130), (20_000, 0.133)])
    def test_growth_with_n(self, n, expected):
        assert lindley_probability(n, 3, "robert") == pytest.approx(expected, abs=1e-3)

    def test_matches_cdf_difference(self):
        iv = lindley_mean_range(5000, 3, "robert")
        r = math.sqrt(5000)
        direct = 2 * (std_normal_cdf(iv.hi * r) - std_normal_cdf(iv.lo * r))
        assert lindley_probability(5000, 3, "robert") == pytest.approx(direct, rel=1e-12)

    def test_zero_when_infeasible_or_empty(self):
        assert lindley_probability(5000, 1e6, "robert") == 0.0
        assert lindley_probability(10, 3, "robert") == 0.0

    def test_converges_to_asymptote(self):
        ns = [5_000, 10_000, 100_000, 1_000_000, 100_000_000]
        probs = [lindley_probability(n, 3, "robert") for n in ns]
        limit = lindley_asymptote(3)
        gaps = [limit - p for p in probs]
        assert all(g > 0 for g in gaps)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-3

    def test_nondecreasing_in_n(self):
        grid = np.unique(np.geomspace(5000, 1e9, 60).astype(int))
        probs = [lindley_probability(int(n), 3, "robert") for n in grid]
        assert all(b >= a for a, b in zip(probs, probs[1:]))

    @pytest.mark.parametrize("kind", KINDS)
    def test_decreasing_in_q(self, kind):
        probs = [lindley_probability(5000, q, kind) for q in (1.2, 1.5, 2, 3, 5, 8, 12, 20)]
        assert all(b < a or a == b == 0.0 for a, b in zip(probs, probs[1:]))
        assert probs[-1] == 0.0


class TestAsymptote:
    @pytest.mark.parametrize("q, expected", [(3, 0.138), (10, 0.032)])
    def test_examples(self, q, expected):
        assert lindley_asymptote(q) == pytest.approx(expected, abs=1e-3)

    def test_q_one(self):
        assert lindley_asymptote(1) == 1.0

    @given(st.floats(1.0, 1e6))
    def test_equivalent_forms(self, q):
        a = lindley_asymptote(q)
        assert a == pytest.approx(2 - math.erfc(-math.sqrt(math.log(q))), abs=1e-14)
        assert a == pytest.approx(2 * (1 - std_normal_cdf(math.sqrt(2 * math.log(q)))), abs=1e-14)


class TestDetect:
    def test_example_case(self):
        mean = robert_required_mean(3, 5000)
        rep = detect_lindley_case(GaussianSummary(5000, mean), 3, "robert")
        assert rep.is_lindley_case
        assert rep.conventional_bf == pytest.approx(3.0, rel=1e-12)
        assert rep.counter_interval.lo == pytest.approx(0.0068368, abs=1e-6)
        assert rep.counter_interval.hi == pytest.approx(0.0642769, abs=1e-6)

    def test_rounded_example_mean_sits_just_past_threshold(self):
        # 0.035557 is the threshold mean rounded up, so the factor is a hair under 3
        rep = detect_lindley_case(GaussianSummary(5000, 0.035557), 3, "robert")
        assert rep.conventional_bf == pytest.approx(3.0, abs=1e-3)
        assert rep.conventional_bf < 3
        assert not rep.is_lindley_case
        assert rep.counter_interval.lo == pytest.approx(0.0068368, abs=1e-6)

    def test_zero_mean(self):
        rep = detect_lindley_case(GaussianSummary(5000, 0.0), 3, "robert")
        assert rep.conventional_bf == pytest.approx(math.sqrt(5001), rel=1e-14)
        assert rep.counter_interval is None
        assert not rep.is_lindley_case

    def test_large_mean(self):
        s = GaussianSummary(5000, 0.05)
        rep = detect_lindley_case(s, 3, "robert")
        assert rep.conventional_bf == pytest.approx(robert_bf(s), rel=1e-14)
        assert rep.conventional_bf < 3
        assert rep.counter_interval is not None
        assert not rep.is_lindley_case

    @pytest.mark.parametrize("kind", KINDS)
    def test_grid_sweep_matches_range(self, kind):
        iv = lindley_mean_range(5000, 3, kind)
        width = iv.hi - iv.lo
        inside = np.linspace(iv.lo, iv.hi, 41)[1:-1]
        outside = np.concatenate(
            [np.linspace(0, iv.lo - 1e-3 * width, 15), np.linspace(iv.hi + 1e-3 * width, 0.1, 15)]
        )
        for m in inside:
            assert detect_lindley_case(GaussianSummary(5000, float(m)), 3, kind).is_lindley_case
            assert detect_lindley_case(GaussianSummary(5000, -float(m)), 3, kind).is_lindley_case
        for m in outside:
            assert not detect_lindley_case(GaussianSummary(5000, float(m)), 3, kind).is_lindley_case

    @settings(max_examples=200)
    @given(st.integers(2, 10**6), st.floats(0.0, 0.5), st.floats(1.01, 50))
    def test_report_invariants(self, n, mean, q):
        rep = detect_lindley_case(GaussianSummary(n, mean), q, "robert")
        assert rep.is_lindley_case == (rep.conventional_bf >= q and rep.counter_interval is not None)
        if rep.counter_interval is not None and mean > 0:
            assert 0 < rep.counter_interval.lo and rep.counter_interval.hi < 2 * mean

    def test_reflection(self):
        for kind in KINDS:
            a = detect_lindley_case(GaussianSummary(5000, 0.03), 3, kind)
            b = detect_lindley_case(GaussianSummary(5000, -0.03), 3, kind)
            assert a.conventional_bf == pytest.approx(b.conventional_bf, rel=1e-12)
            assert a.is_lindley_case == b.is_lindley_case
            assert b.counter_interval.hi < 0
            assert a.counter_interval.lo == pytest.approx(-b.counter_interval.hi, rel=1e-12)


def test_upper_factor_turns_at_pivot():
    # robert_bf_upper rises with n exactly past n = 2 log q - 1
    q = 1e4
    pivot = 2 * math.log(q) - 1
    for n in range(2, 40):
        diff = robert_bf_upper(n + 1, q) - robert_bf_upper(n, q)
        if n > pivot:
            assert diff > 0
        elif n + 1 < pivot:
            assert diff < 0


def test_min_lindley_mean():
    assert min_lindley_mean(5000, 3) == pytest.approx(0.0209629, abs=1e-7)
