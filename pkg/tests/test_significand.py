import math

import numpy as np
import pytest

from benford import (
    Base,
    DomainError,
    NonPositiveInput,
    decompose,
    first_digit,
    log_map,
    mul_mod_b,
)

EPS = float(np.finfo(float).eps)


class TestBase:
    def test_rejects_small_bases(self):
        for bad in (1, 0, -3):
            with pytest.raises(DomainError):
                Base(bad)

    def test_rejects_non_integers(self):
        with pytest.raises(DomainError):
            Base(2.5)
        with pytest.raises(DomainError):
            Base(True)

    def test_ln(self):
        assert Base(10).ln == math.log(10)


class TestDecompose:
    def test_decimal_examples(self):
        d = decompose(123.45, Base(10))
        assert (d.significand, d.exponent) == (1.2345, 2)
        d = decompose(0.002, Base(10))
        assert (d.significand, d.exponent) == (2.0, -3)
        d = decompose(8.0, Base(2))
        assert (d.significand, d.exponent) == (1.0, 3)
        d = decompose(1.0, Base(10))
        assert (d.significand, d.exponent) == (1.0, 0)

    def test_rejects_nonpositive_and_nonfinite(self):
        base = Base(10)
        for bad in (0.0, -1.0, math.nan, math.inf, -math.inf):
            with pytest.raises(NonPositiveInput):
                decompose(bad, base)

    def test_exact_powers_decompose_exactly(self):
        for b in (2, 3, 10, 16):
            base = Base(b)
            for k in range(-20, 21):
                d = decompose(float(b) ** k, base)
                assert d.significand == 1.0, (b, k, d)
                assert d.exponent == k

    def test_reconstruction_bulk(self):
        # 1e5 random reals across exponents -30..30, four bases
        rng = np.random.default_rng(42)
        for b in (2, 3, 10, 16):
            base = Base(b)
            mantissas = rng.uniform(0.1, 1.0, 25_000)
            exps = rng.integers(-30, 31, 25_000)
            for m, e in zip(mantissas, exps):
                v = float(m * 10.0**e)
                d = decompose(v, base)
                recon = d.significand * float(b) ** d.exponent
                assert abs(recon - v) <= 4 * EPS * v
                assert 1.0 <= d.significand < b


class TestFirstDigit:
    def test_examples(self):
        assert first_digit(123.45, Base(10)) == 1
        assert first_digit(0.002, Base(10)) == 2
        assert first_digit(7.0, Base(2)) == 1

    def test_base2_always_one(self):
        rng = np.random.default_rng(3)
        base = Base(2)
        for v in rng.uniform(1e-12, 1e12, 1000):
            assert first_digit(float(v), base) == 1

    def test_range(self):
        rng = np.random.default_rng(4)
        for b in (3, 10, 16):
            base = Base(b)
            for v in rng.uniform(0.001, 1e6, 500):
                assert 1 <= first_digit(float(v), base) <= b - 1


class TestLogMap:
    def test_identity_maps_to_zero(self):
        assert log_map(1.0, Base(10)) == 0.0

    def test_value_of_two(self):
        # leading digit 1 in base 10 has probability log10(2) ~ 0.301
        assert log_map(2.0, Base(10)) == pytest.approx(0.30102999566, abs=1e-11)

    def test_half_period(self):
        assert log_map(math.sqrt(10.0), Base(10)) == pytest.approx(0.5, abs=1e-15)

    def test_domain(self):
        base = Base(10)
        for bad in (0.5, 10.0, 11.0, -1.0, math.nan):
            with pytest.raises(DomainError):
                log_map(bad, base)


class TestMulModB:
    def test_examples(self):
        base = Base(10)
        assert mul_mod_b(2.0, 3.0, base) == 6.0
        assert mul_mod_b(4.0, 5.0, base) == 2.0

    def test_identity_element(self):
        base = Base(10)
        rng = np.random.default_rng(5)
        for s in rng.uniform(1.0, 10.0, 200):
            s = float(s)
            if s >= 10.0:
                continue
            assert mul_mod_b(s, 1.0, base) == s

    def test_domain(self):
        base = Base(10)
        with pytest.raises(DomainError):
            mul_mod_b(0.5, 2.0, base)
        with pytest.raises(DomainError):
            mul_mod_b(2.0, 10.0, base)

    def test_commutative(self):
        base = Base(10)
        rng = np.random.default_rng(6)
        for s1, s2 in rng.uniform(1.0, 10.0, (300, 2)):
            assert mul_mod_b(float(s1), float(s2), base) == mul_mod_b(
                float(s2), float(s1), base
            )

    def test_result_in_range(self):
        rng = np.random.default_rng(7)
        for b in (2, 10, 16):
            base = Base(b)
            for s1, s2 in rng.uniform(1.0, b, (500, 2)):
                p = mul_mod_b(float(s1), float(s2), base)
                assert 1.0 <= p < b


def test_log_map_is_group_homomorphism():
    # products mod b map to sums mod 1, checked over 1e4 random pairs
    rng = np.random.default_rng(8)
    for b in (2, 10, 16):
        base = Base(b)
        pairs = rng.uniform(1.0, b, (3334, 2))
        for s1, s2 in pairs:
            s1, s2 = float(s1), float(s2)
            lhs = log_map(mul_mod_b(s1, s2, base), base)
            rhs = (log_map(s1, base) + log_map(s2, base)) % 1.0
            diff = abs(lhs - rhs)
            assert min(diff, 1.0 - diff) < 1e-12
