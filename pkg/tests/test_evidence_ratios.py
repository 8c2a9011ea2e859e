import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bfdx.bayes_factors import BinomialData, GaussianSummary, Interval, binom_bf01, binom_point_bf, point_bf
from bfdx.errors import DomainError, InfeasibleError
from bfdx.evidence_ratios import (
    RegionSet,
    binom_er,
    binom_regions,
    binom_support_region,
    er_from_point_bf,
    gaussian_log_er,
    gaussian_log_er_exact,
    gaussian_regions,
    gaussian_required_mean,
    gaussian_support_region,
    quandary_pair,
)

EXAMPLE = BinomialData(985, 524)
GAUSS = GaussianSummary(5000, 0.035557)
LOG3 = math.log(3)


def binomial_data():
    return st.integers(1, 3000).flatmap(lambda n: st.builds(BinomialData, st.just(n), st.integers(0, n)))


class TestGaussianLogEr:
    def test_at_sample_mean(self):
        s = GaussianSummary(200, 0.3)
        assert gaussian_log_er(s, 0.3) == pytest.approx((0.09 + math.log(200)) / 2, rel=1e-14)

    @pytest.mark.parametrize("mu", [0.0, 0.07111])
    def test_example_boundary(self, mu):
        assert gaussian_log_er(GAUSS, mu) == pytest.approx(LOG3, abs=1e-3)

    def test_exact_form_against_conjugate_densities(self):
        # posterior N(n*mean/(n+1), 1/(n+1)) over prior N(0, 1)
        s = GaussianSummary(37, 0.21)
        for mu in (-0.3, 0.0, 0.2, 0.5):
            post_var = 1 / 38
            post_mean = 37 * 0.21 / 38
            log_post = -0.5 * math.log(2 * math.pi * post_var) - (mu - post_mean) ** 2 / (2 * post_var)
            log_prior = -0.5 * math.log(2 * math.pi) - mu * mu / 2
            assert gaussian_log_er_exact(s, mu) == pytest.approx(log_post - log_prior, rel=1e-12)

    def test_proportional_to_point_bf(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            s = GaussianSummary(int(rng.integers(2, 10**5)), float(rng.normal(0, 0.1)))
            mu, mu2 = rng.normal(s.mean, 3 / math.sqrt(s.n), size=2)
            ratio = math.exp(gaussian_log_er(s, mu) - gaussian_log_er(s, mu2)) / point_bf(mu2, mu, s)
            assert ratio == pytest.approx(1.0, rel=1e-9)
            ratio_exact = math.exp(gaussian_log_er_exact(s, mu) - gaussian_log_er_exact(s, mu2))
            assert ratio_exact == pytest.approx(point_bf(mu2, mu, s), rel=1e-9)


class TestRequiredMean:
    def test_example(self):
        assert gaussian_required_mean(3, 5000) == pytest.approx(0.035556, abs=1e-6)

    def test_radicand_zero(self):
        assert gaussian_required_mean(math.sqrt(400), 400) == pytest.approx(0.0, abs=1e-7)

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            gaussian_required_mean(30, 400)

    @settings(max_examples=100)
    @given(st.integers(10, 10**7), st.floats(0.0, 0.99))
    def test_round_trip(self, n, frac):
        q = 1.0 + (math.sqrt(n) - 1.0) * frac
        assume(q > 1.0)
        m = gaussian_required_mean(q, n)
        assert gaussian_log_er(GaussianSummary(n, m), 0.0) == pytest.approx(math.log(q), abs=1e-10)


class TestGaussianSupport:
    def test_example(self):
        iv = gaussian_support_region(GAUSS, 3)
        assert iv.lo == pytest.approx(0.0, abs=1e-4)
        assert iv.hi == pytest.approx(0.07111, abs=1e-4)

    @settings(max_examples=200)
    @given(st.integers(2, 10**6), st.floats(-1, 1), st.floats(1.01, 100))
    def test_endpoints_and_symmetry(self, n, mean, q):
        s = GaussianSummary(n, mean)
        iv = gaussian_support_region(s, q)
        if iv is None:
            assert mean * mean + math.log(n) < 2 * math.log(q)
            return
        assert iv.contains(mean)
        assert mean - iv.lo == pytest.approx(iv.hi - mean, rel=1e-12, abs=1e-15)
        for end in (iv.lo, iv.hi):
            assert gaussian_log_er(s, end) == pytest.approx(math.log(q), abs=1e-10 * max(1.0, n * mean * mean))

    def test_empty_when_threshold_too_high(self):
        assert gaussian_support_region(GaussianSummary(10, 0.0), 100) is None


class TestQuandary:
    def test_example(self):
        lo, hi = quandary_pair(5000, 3)
        assert lo == pytest.approx(-0.01074, abs=2e-4)
        assert hi == pytest.approx(0.08185, abs=2e-4)

    @pytest.mark.parametrize("n", [10, 1000, 5000, 10**4, 10**6])
    def test_substitution_recovers_inverse_threshold(self, n):
        s = GaussianSummary(n, gaussian_required_mean(3, n))
        lo, hi = quandary_pair(n, 3)
        for mu in (lo, hi):
            assert gaussian_log_er(s, mu) == pytest.approx(-LOG3, abs=1e-8)
        assert lo < 0 < hi
        assert lo < s.mean < hi

    def test_separation_shrinks(self):
        widths = [quandary_pair(n, 3)[1] - quandary_pair(n, 3)[0] for n in (10**3, 10**4, 10**5, 10**6)]
        assert all(b < a for a, b in zip(widths, widths[1:]))


class TestBinomialEr:
    def test_null_equals_bf01(self):
        assert binom_er(0.5, EXAMPLE) == pytest.approx(binom_bf01(EXAMPLE), rel=1e-12)
        assert binom_er(0.5, EXAMPLE) == pytest.approx(3.344, rel=5e-3)

    def test_no_data(self):
        for theta in (0.1, 0.5, 0.93):
            assert binom_er(theta, BinomialData(0, 0)) == pytest.approx(1.0)

    @pytest.mark.parametrize("theta", [0.499, 0.565])
    def test_support_endpoints(self, theta):
        # |d log ER / d theta| is about 132 at the upper end, so half a unit in
        # the third decimal moves ER by up to ~7%
        assert binom_er(theta, EXAMPLE) == pytest.approx(3.0, abs=0.2)

    def test_normalized_density(self):
        # ER under a uniform prior is a posterior density: it integrates to 1
        grid = np.linspace(0, 1, 200_001)
        vals = np.array([binom_er(t, EXAMPLE) if 0 < t < 1 else 0.0 for t in grid])
        assert np.trapezoid(vals, grid) == pytest.approx(1.0, rel=1e-6)

    @settings(max_examples=1000, deadline=None)
    @given(binomial_data(), st.floats(0.001, 0.999))
    def test_ratio_identity(self, d, theta):
        lhs = binom_er(theta, d)
        rhs = binom_point_bf(theta, d) * binom_er(0.5, d)
        assume(0 < rhs < 1e300 and lhs > 1e-300)
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestBinomialSupport:
    def test_example(self):
        iv = binom_support_region(EXAMPLE, 3)
        assert iv.lo == pytest.approx(0.499, abs=1e-3)
        assert iv.hi == pytest.approx(0.565, abs=1e-3)

    def test_boundary_quandary(self):
        regions = binom_regions(BinomialData(6193, 3193), 3)
        (support,) = regions.support
        assert support.contains(0.5)
        assert not support.contains(0.495)
        assert any(r.contains(0.495) for r in regions.rejection)

    def test_threshold_above_peak(self):
        assert binom_support_region(EXAMPLE, 1e6) is None

    def test_all_successes(self):
        iv = binom_support_region(BinomialData(20, 20), 3)
        assert iv.hi == 1.0
        assert binom_er(iv.lo, BinomialData(20, 20)) == pytest.approx(3.0, rel=1e-8)

    @settings(max_examples=100, deadline=None)
    @given(binomial_data(), st.floats(1.01, 30))
    def test_regions_disjoint_and_contain_mode(self, d, q):
        regions = binom_regions(d, q)
        for s in regions.support:
            assert s.contains(d.k_successes / d.n_trials, slack=1e-9)
            for r in regions.rejection:
                assert not s.overlaps(r)


def test_er_from_point_bf():
    assert er_from_point_bf(3, 3.344) == pytest.approx(10.032, abs=1e-12)
    assert er_from_point_bf(3, 3) == 9
    assert er_from_point_bf(1, math.e) == math.e
    with pytest.raises(DomainError):
        er_from_point_bf(0, 1)


def test_gaussian_regions_are_disjoint():
    regions = gaussian_regions(GAUSS, 3)
    assert len(regions.support) == 1 and len(regions.rejection) == 2
    for r in regions.rejection:
        assert not regions.support[0].overlaps(r)


def test_regionset_rejects_overlap():
    with pytest.raises(DomainError):
        RegionSet(support=[Interval(0, 1)], rejection=[Interval(0.5, 2)], threshold=3)
