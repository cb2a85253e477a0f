import json
import math

import mpmath
import pytest
from mpmath import mp, mpf

from xiconst.constants import d_exact, s1
from xiconst.errors import DomainError, InconclusiveError, PoleError
from xiconst import verification as ver


def test_report_pass_flag_and_json():
    r = ver._report("x", "1..2", mpf("1e-5"), mpf("1e-4"))
    assert r.passed
    data = json.loads(r.to_json())
    assert set(data) == {"name", "range", "max_residual", "tolerance", "pass", "notes"}
    assert data["pass"] is True
    assert not ver._report("x", "", 1, 1).passed


def test_lemma1_small_range_and_tampering(gammas128):
    assert ver.check_lemma1(12, 128, gammas=gammas128).passed
    d = [d_exact(n, 128) for n in range(1, 13)]
    with mp.workprec(128):
        d[0] += mpf(10) ** -10
    assert not ver.check_lemma1(12, 128, gammas=gammas128, d_values=d).passed


def test_lemma1_n1_residual(gammas128):
    r = ver.check_lemma1(1, 128, gammas=gammas128)
    assert r.max_residual < mpf(2) ** -100


def test_corollary_and_variant_offset():
    r = ver.check_corollary(12, 128)
    assert r.passed
    with mp.workprec(128):
        for n, v in enumerate(r.details["variant_residuals"], start=1):
            assert abs(v - (mp.ln2 - mpf(1) / n)) < mpf(2) ** -100
        # hand value at n = 2: S1(2) = pi^2/8
        d2 = d_exact(2, 128)
        assert abs(mp.pi ** 2 / 16 - mp.euler / 2 - mp.ln2 - d2) < mpf(2) ** -100
    d = [d_exact(n, 128) for n in range(1, 13)]
    with mp.workprec(128):
        d[5] -= mpf(10) ** -10
    assert not ver.check_corollary(12, 128, d_values=d).passed


def test_s1_bounds():
    assert ver.check_s1_bounds(40).passed
    with mp.workprec(128):
        fake = {7: s1(7) + 10}
    r = ver.check_s1_bounds(40, values=fake)
    assert not r.passed
    assert r.details["violations"] == [7]


def test_s1_bound_hand_value_n2():
    with mp.workprec(128):
        lo = mpmath.log(2) + mp.euler - 1 + mpf(1) / 2
        hi = mpmath.log(2) + mp.euler + 1 - mpf(1) / 2
        assert lo < mp.pi ** 2 / 8 < hi


def test_eta_signs():
    r = ver.check_eta_signs(30)
    assert r.passed
    assert r.details["etas"][0] < 0
    with pytest.raises(InconclusiveError):
        ver.check_eta_signs(30, bits=24)


def test_funceq_corrected_form():
    r = ver.check_funceq_F((2, 3, -2, 5), 128)
    assert r.passed
    # the principal-branch (-pi)^(1/(z-1))/z version only works when 1/(z-1) is odd
    assert r.details["variant_form_residuals"][2] < mpf(2) ** -60
    assert r.details["variant_form_residuals"][3] > 1


def test_funceq_singular_points():
    with pytest.raises(PoleError):
        ver.funceq_sides(1, 64)
    with pytest.raises(DomainError):
        ver.funceq_sides(0.5, 64)
    with pytest.raises(PoleError):
        ver.funceq_sides(1.5, 64)  # s = -2, trivial zero


def test_logzeta_integral_small_cutoff():
    r = ver.check_logzeta_integral((2, 3), 10 ** 5)
    assert r.passed
    d2 = r.details[2]
    assert 0 <= d2["residual"] <= d2["tail_bound"]
    assert d2["residual"] < d2["residual_half_X"]


def test_logzeta_integral_matches_quadrature():
    # compare the prime-gap sum with direct numerical integration on [2, 50]
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    with mp.workprec(64):
        pi_x = lambda x: sum(1 for p in primes if p <= x)
        pts = [2] + primes[1:] + [50]
        quad = 2 * mpmath.quad(lambda x: pi_x(x) / (x * (x ** 2 - 1)), pts)
    import numpy as np
    assert abs(ver.logzeta_integral(2, 50, np.array(primes)) - float(quad)) < 1e-12


def test_phi_steps():
    assert ver.phi_step(0.5) == 1
    assert ver.phi_step(0.8) == 0
    assert ver.phi_step(-1) == 0
    assert ver.phi_step(math.log(3.5)) == 1
    assert ver.phi1_step(0) == 1
    with mp.workprec(64):
        x = mpf("1.2")  # N = 3
        assert abs(ver.phi1_step(x) - (3 * (1 - x) + mpmath.log(6))) < 1e-15


def test_appendixB():
    r = ver.check_appendixB()
    assert r.passed
    with mp.workprec(64):
        assert abs(r.details[("phi", 2)]["target"] - mp.pi ** 2 / 12) < 1e-15
        assert abs(r.details[("phi1", 3)]["target"] - 2 * mpmath.zeta(3) / 9) < 1e-15
    assert round(float(r.details[("phi1", 3)]["target"]), 7) == 0.2671238
    for v in r.details.values():
        assert abs(v["quadrature"] - v["exact"]) < 1e-5


def test_appendixB_coarse_step(monkeypatch):
    from xiconst.errors import PrecisionError
    monkeypatch.setattr(ver, "_GL_ORDER", 1)  # midpoint rule
    with pytest.raises(PrecisionError):
        ver.check_appendixB(h=1.0, X=6.0)


def test_appendixA():
    r = ver.check_appendixA(bits=192)
    assert r.passed
    assert max(r.details.values()) < mpf(10) ** -50


def test_d_asymptotics():
    r = ver.check_d_asymptotics()
    assert r.passed
    assert 8 <= r.details["ratio"] <= 32


def test_lambda1():
    r = ver.check_lambda1(128)
    assert r.passed
    assert r.details["zeros_error"] < 1e-2


def test_delta_sequence():
    assert ver.delta_sequence([3, 3, 3, 3]) == [0, 0]
    q = mpf(1) / 3
    with mp.workprec(128):
        geo = [q ** n for n in range(1, 8)]
        assert all(abs(v) < mpf(2) ** -120 for v in ver.delta_sequence(geo))
    with pytest.raises(Exception):
        ver.delta_sequence([1, 2])


def test_dft_magnitude():
    assert [float(v) for v in ver.dft_magnitude([1, 1, 1, 1])] == pytest.approx([4, 0, 0, 0], abs=1e-30)
    assert [float(v) for v in ver.dft_magnitude([1, 0, 0, 0, 0])] == pytest.approx([1] * 5)
    assert [float(v) for v in ver.dft_magnitude([1, -1, 1, -1])] == pytest.approx([0, 0, 4, 0], abs=1e-30)


def test_dft_matches_numpy():
    import numpy as np
    x = [0.3, -1.2, 2.5, 0.0, 7.1, -0.4]
    got = [float(v) for v in ver.dft_magnitude(x)]
    assert got == pytest.approx(list(np.abs(np.fft.fft(x))), abs=1e-12)


def test_conjecture_fit_synthetic():
    c = [0.5 * n ** -0.5 for n in range(1, 65)]
    f = ver.conjecture_fit(c)
    assert abs(f.slope + 0.5) < 0.01
    assert f.bound_holds
    bad = list(c)
    bad[9] = 1.0
    f = ver.conjecture_fit(bad, start=3)
    assert f.violations == [10]
    assert not f.bound_holds


def test_agree_digits():
    with mp.workprec(128):
        assert ver.agree_digits([mpf(1), mpf(1) + mpf(10) ** -20]) == 20
