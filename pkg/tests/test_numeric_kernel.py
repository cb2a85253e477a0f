import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from xiconst.errors import DomainError, PoleError
from xiconst.numeric_kernel import (
    PrecisionPolicy,
    DEFAULT_POLICY,
    bernoulli_fraction,
    digamma_half,
    from_decimal,
    hurwitz_zeta,
    loggamma1p,
    mangoldt_table,
    polygamma_half,
    to_decimal,
    zeta,
    zeta_continued,
)

BITS = 256


def close(a, b, bits=BITS, slack=16):
    with mp.workprec(bits + 32):
        return abs(a - b) <= mpf(2) ** (-bits + slack) * max(1, abs(b))


def test_policy_default_rule():
    assert DEFAULT_POLICY.effective_bits(0) == 128
    assert DEFAULT_POLICY.effective_bits(32) == 128
    assert DEFAULT_POLICY.effective_bits(100) == 264


@given(st.integers(0, 2000))
def test_policy_monotone(n):
    p = PrecisionPolicy(base_bits=70, per_n_bits=Fraction(3, 2), guard_bits=10)
    assert p.effective_bits(n + 1) >= p.effective_bits(n) >= 64


def test_policy_rejects_tiny_base():
    with pytest.raises(ValueError):
        PrecisionPolicy(base_bits=32, per_n_bits=0, guard_bits=8)


@pytest.mark.parametrize("s,exact", [
    (2, lambda: mp.pi ** 2 / 6),
    (4, lambda: mp.pi ** 4 / 90),
    (6, lambda: mp.pi ** 6 / 945),
])
def test_zeta_even_closed_forms(s, exact):
    with mp.workprec(BITS + 32):
        assert close(zeta(s, BITS), exact())


def test_zeta_half_matches_reference():
    with mp.workprec(BITS + 32):
        ref = mpmath.zeta(mpf(1) / 2)
        assert close(zeta(mpf(1) / 2, BITS), ref)
    assert mpmath.nstr(zeta(0.5, 64), 11) == "-1.4603545088"


@pytest.mark.parametrize("s", [mpmath.mpc(0.6, 4), mpmath.mpc(0.75, -20), mpmath.mpc(3, 1)])
def test_zeta_complex_matches_reference(s):
    with mp.workprec(BITS + 32):
        assert close(zeta(s, BITS), mpmath.zeta(s))


def test_zeta_conjugate_symmetry():
    s = mpmath.mpc(0.7, 3.3)
    with mp.workprec(160):
        assert close(zeta(mpmath.conj(s), 128), mpmath.conj(zeta(s, 128)), 128)


def test_zeta_errors():
    with pytest.raises(PoleError):
        zeta(1, 64)
    with pytest.raises(DomainError):
        zeta(-0.5, 64)
    with pytest.raises(DomainError):
        zeta(0, 64)


def test_zeta_continued_negative_axis():
    with mp.workprec(160):
        assert close(zeta_continued(-1, 128), mpf(-1) / 12, 128)
        assert close(zeta_continued(-0.5, 128), mpmath.zeta(-0.5), 128)


def test_zeta_precision_doubling_is_stable():
    a = zeta(mpf(3) / 2, 128)
    b = zeta(mpf(3) / 2, 256)
    with mp.workprec(256):
        assert abs(a - b) < mpf(2) ** (-128 + 16)


@pytest.mark.parametrize("s,a,exact", [
    (2, 1, lambda: mp.pi ** 2 / 6),
    (2, mpf(1) / 2, lambda: mp.pi ** 2 / 2),
    (3, mpf(1) / 2, lambda: 7 * mpmath.zeta(3)),
])
def test_hurwitz_examples(s, a, exact):
    with mp.workprec(BITS + 32):
        assert close(hurwitz_zeta(s, a, BITS), exact())


def test_hurwitz_brute_force_oracle():
    # partial sums plus an integral-midpoint tail for zeta(2, 1/2)
    with mp.workprec(80):
        N = 20000
        partial = mpmath.fsum((k + mpf(1) / 2) ** -2 for k in range(N))
        tail = 1 / (N + mpf(1) / 2 - mpf(1) / 2)
        assert abs(partial + tail - hurwitz_zeta(2, 0.5, 64)) < 1e-8
    assert mpmath.nstr(hurwitz_zeta(2, 0.5, 64), 8) == "4.9348022"


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta(1, 1, 64)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0, 64)


@pytest.mark.parametrize("j", range(1, 31))
def test_polygamma_half_matches_hurwitz(j):
    with mp.workprec(BITS + 64):
        oracle = (-1) ** (j + 1) * math.factorial(j) * hurwitz_zeta(j + 1, mpf(1) / 2, BITS)
        value = polygamma_half(j, BITS)
        assert abs(value - oracle) <= mpf(2) ** (-BITS + 16) * abs(oracle)


def test_polygamma_half_examples():
    with mp.workprec(BITS + 32):
        assert close(polygamma_half(1, BITS), mp.pi ** 2 / 2)
        assert close(polygamma_half(3, BITS), mp.pi ** 4)
        assert close(polygamma_half(2, BITS), mpmath.psi(2, mpf(1) / 2))
    assert mpmath.nstr(polygamma_half(2, 64), 6) == "-16.8288"


def test_digamma_half():
    with mp.workprec(BITS + 32):
        v = digamma_half(BITS)
        assert close(v, mpmath.digamma(mpf(1) / 2))
        assert abs(v / 2 + mp.euler / 2 + mp.ln2) < mpf(2) ** (-BITS + 4)
    assert mpmath.nstr(digamma_half(64), 11) == "-1.963510026"
    # psi(x) = lim ln n - sum_{k=0}^{n} 1/(x + k)
    with mp.workprec(64):
        n = 200000
        approx = mpmath.log(n) - mpmath.fsum(1 / (mpf(1) / 2 + k) for k in range(n + 1))
        assert abs(approx - digamma_half(64)) < 1e-5


@pytest.mark.parametrize("w", [mpf("0.3"), mpf("-0.4"), mpf("2.7"), mpmath.mpc("0.25", "0.6")])
def test_loggamma1p(w):
    with mp.workprec(160):
        assert close(loggamma1p(w, 128), mpmath.loggamma(1 + w), 128)


def test_bernoulli_numbers():
    assert bernoulli_fraction(2) == Fraction(1, 6)
    assert str(bernoulli_fraction(12)) == "-691/2730"


def test_mangoldt_examples():
    t = mangoldt_table(12)
    ln = mpmath.log
    with mp.workprec(64):
        expect = [0, ln(2), ln(3), ln(2), ln(5), 0, ln(7), ln(2)]
        for k, e in enumerate(expect, start=1):
            assert abs(t.value(k) - e) < 1e-15
        assert abs(t.value(9) - ln(3)) < 1e-15
        assert t.value(12) == 0
        assert t.value(1) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_mangoldt_restriction(a, b):
    lo, hi = sorted((a, b))
    assert np.array_equal(mangoldt_table(hi).restrict(lo).base, mangoldt_table(lo).base)


def test_decimal_round_trip():
    with mp.workprec(256):
        x = mp.pi / 7
        assert from_decimal(to_decimal(x, 256), 256) == +x
