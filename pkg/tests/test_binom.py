import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robust_median.binom import (
    BinomialSpec,
    alpha_star,
    binom_cdf,
    binom_pmf,
    binom_sf,
    classical_alpha,
    h_interior,
    log_alpha_star,
    log_binom_cdf,
)
from robust_median.errors import DomainError

from oracles import exact_cdf, mp_cdf_all


class TestBinomCdf:
    def test_two_coin_flips(self):
        assert binom_cdf(BinomialSpec(2, 0.5), 1) == pytest.approx(0.75, rel=1e-15)

    def test_n20_k5_matches_rational_sum(self):
        expected = Fraction(5425, 2**18)  # frozen from exact_cdf(20, 0.5, 5)
        assert exact_cdf(20, 0.5, 5) == expected
        assert binom_cdf(BinomialSpec(20, 0.5), 5) == pytest.approx(float(expected), rel=1e-14)

    def test_extreme_lower_tail_stays_in_log_space(self):
        spec = BinomialSpec(2000, 0.45)
        exact_log = 2000 * math.log1p(-0.45)  # about -1195.67, i.e. 10**-519
        assert log_binom_cdf(spec, 0) == pytest.approx(exact_log, rel=1e-14)
        # below the smallest subnormal double, so the linear-scale value is 0
        assert binom_cdf(spec, 0) == 0.0

    def test_underflow_free_moderate_tail(self):
        spec = BinomialSpec(2000, 0.45)
        k = 700
        with_log = math.exp(log_binom_cdf(spec, k))
        oracle = float(exact_cdf(2000, 0.45, k))
        assert oracle > 0
        assert with_log == pytest.approx(oracle, rel=1e-11)

    @pytest.mark.parametrize("n,p", [(0, 0.5), (-3, 0.5), (10, -0.1), (10, 1.5), (2.5, 0.3)])
    def test_invalid_parameters(self, n, p):
        with pytest.raises(DomainError):
            BinomialSpec(n, p)

    def test_out_of_range_k_clamps(self):
        spec = BinomialSpec(10, 0.3)
        assert binom_cdf(spec, -1) == 0.0
        assert binom_cdf(spec, 10) == 1.0
        assert binom_cdf(spec, 50) == 1.0

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_degenerate_p(self, p):
        spec = BinomialSpec(7, p)
        cdfs = [binom_cdf(spec, k) for k in range(8)]
        if p == 0.0:
            assert cdfs == [1.0] * 8
        else:
            assert cdfs == [0.0] * 7 + [1.0]

    @pytest.mark.parametrize("n", [1, 2, 7, 40, 137, 500])
    @pytest.mark.parametrize("p", [0.001, 0.05, 0.3, 0.45, 0.5, 0.62, 0.97])
    def test_against_high_precision_oracle(self, n, p):
        ref = mp_cdf_all(n, p)
        spec = BinomialSpec(n, p)
        for k in range(n + 1):
            want = float(ref[k])
            got = binom_cdf(spec, k)
            if want < 1e-300:
                continue
            assert abs(got - want) <= 1e-10 * want, (n, p, k, got, want)

    @given(n=st.integers(1, 400), p=st.floats(0.0, 1.0), data=st.data())
    @settings(max_examples=200, deadline=None)
    def test_complement_identity(self, n, p, data):
        k = data.draw(st.integers(0, n))
        spec = BinomialSpec(n, p)
        assert binom_cdf(spec, k) + binom_sf(spec, k) == pytest.approx(1.0, abs=1e-12)

    def test_pmf_sums_to_one_large_n(self):
        spec = BinomialSpec(10_000, 0.37)
        total = math.fsum(binom_pmf(spec, i) for i in range(10_001))
        assert total == pytest.approx(1.0, abs=1e-12)


class TestClassicalAlpha:
    def test_n20_k5(self):
        a = classical_alpha(20, 5)
        assert a == pytest.approx(0.0414, abs=5e-5)
        assert round(1 - a, 3) == 0.959

    def test_n100_k40(self):
        assert round(1 - classical_alpha(100, 40), 3) == 0.943

    def test_n2_k0(self):
        assert classical_alpha(2, 0) == pytest.approx(0.5, rel=1e-15)

    @pytest.mark.parametrize("n,k", [(2, 1), (20, 10), (21, 10), (20, -1), (1, 0)])
    def test_empty_acceptance_region(self, n, k):
        with pytest.raises(DomainError):
            classical_alpha(n, k)


class TestHInterior:
    def test_n2_k1(self):
        assert h_interior(2, 1, 0.5) == pytest.approx(0.5, rel=1e-15)

    def test_symmetry_example(self):
        assert h_interior(10, 3, 0.3) == pytest.approx(h_interior(10, 3, 0.7), rel=1e-14)

    @pytest.mark.parametrize("k", range(0, 6))
    def test_nondecreasing_on_grid(self, k):
        grid = np.round(np.arange(0.05, 0.5001, 0.05), 2)
        vals = [h_interior(20, k, p) for p in grid]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_inverted_bounds_rejected(self):
        with pytest.raises(DomainError):
            h_interior(10, 6, 0.5)

    @given(n=st.integers(1, 200), data=st.data())
    @settings(max_examples=300, deadline=None)
    def test_symmetry_property(self, n, data):
        k = data.draw(st.integers(0, n // 2))
        p = data.draw(st.integers(0, 100)) / 100
        assert h_interior(n, k, p) == pytest.approx(h_interior(n, k, 1 - p), rel=1e-12, abs=1e-300)

    @given(n=st.integers(1, 200), data=st.data())
    @settings(max_examples=300, deadline=None)
    def test_monotone_property(self, n, data):
        k = data.draw(st.integers(0, n // 2))
        i = data.draw(st.integers(0, 49))
        p1, p2 = i / 100, (i + 1) / 100
        assert h_interior(n, k, p2) >= h_interior(n, k, p1) * (1 - 1e-12)


class TestAlphaStar:
    def test_n20_eps005(self):
        a = alpha_star(20, 5, 0.05)
        assert a == pytest.approx(0.046, abs=5e-4)
        assert round(1 - a, 3) == 0.954

    def test_n100_eps010(self):
        a = alpha_star(100, 40, 0.10)
        assert a == pytest.approx(0.185, abs=5e-4)
        assert round(1 - a, 3) == 0.815

    @pytest.mark.parametrize("n,k", [(2, 0), (20, 5), (100, 40), (2000, 956)])
    def test_reduces_to_classical(self, n, k):
        assert alpha_star(n, k, 0.0) == pytest.approx(classical_alpha(n, k), rel=1e-12)

    @pytest.mark.parametrize("eps", [-0.01, 0.5, 0.7])
    def test_eps_domain(self, eps):
        with pytest.raises(DomainError):
            alpha_star(20, 5, eps)

    def test_log_variant(self):
        assert math.exp(log_alpha_star(200, 80, 0.1)) == pytest.approx(alpha_star(200, 80, 0.1), rel=1e-13)
        # level far below the double range is still finite in log space
        assert log_alpha_star(5000, 10, 0.0) < -3000

    @given(n=st.integers(2, 300), data=st.data())
    @settings(max_examples=200, deadline=None)
    def test_monotone_in_eps_and_k(self, n, data):
        k = data.draw(st.integers(0, n // 2 - 1))
        e1 = data.draw(st.floats(0.0, 0.49))
        e2 = data.draw(st.floats(e1, 0.49))
        assert alpha_star(n, k, e2) >= alpha_star(n, k, e1) * (1 - 1e-12)
        if k + 1 <= n // 2 - 1:
            assert alpha_star(n, k + 1, e1) >= alpha_star(n, k, e1)
