"""Checks tying the constant families together, plus figure-data helpers.

Every ``check_*`` function returns a :class:`CheckReport` whose ``passed``
flag is exactly ``max_residual < tolerance``.  Per-point numbers that do not
fit that single scalar go in ``details``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from math import factorial

import mpmath
import numpy as np
from mpmath import mp, mpf

from .constants import (
    c_from_stieltjes,
    d_asymptotic,
    d_exact,
    lambda_from_S,
    lambda_from_zeros,
    s1,
)
from .contour import ContourPlan, ZeroOrdinates, bundled_zeros, c_contour_raw, max_imag_residue
from .errors import DomainError, InconclusiveError, InsufficientDataError, PoleError, PrecisionError
from .numeric_kernel import DEFAULT_POLICY, PrecisionPolicy, prime_sieve, to_decimal, zeta, zeta_continued
from .series import eta_series, f_series, lambda_series
from .stieltjes import StieltjesTable, stieltjes_table


@dataclass
class CheckReport:
    name: str
    range: str
    max_residual: mpf
    tolerance: mpf
    passed: bool
    notes: str = ""
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "range": self.range,
            "max_residual": to_decimal(self.max_residual, 64),
            "tolerance": to_decimal(self.tolerance, 64),
            "pass": self.passed,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _report(name, rng, residual, tolerance, notes="", details=None) -> CheckReport:
    residual = mpf(residual)
    tolerance = mpf(tolerance)
    return CheckReport(name, rng, residual, tolerance, bool(residual < tolerance),
                       notes, details or {})


def _table(gammas: StieltjesTable | None, K: int, bits: int) -> StieltjesTable:
    if gammas is not None and gammas.K >= K and gammas.bits >= bits:
        return gammas
    return stieltjes_table(K, bits)


# ---------------------------------------------------------------------------
# lambda / c / d identity and the S1 identity
# ---------------------------------------------------------------------------

def check_lemma1(n_max: int = 64, bits: int = 256, *, gammas=None, d_values=None) -> CheckReport:
    """lambda_n/n - c_n - 1/n + ln(pi)/2 - d_n = 0 for 1 <= n <= n_max.

    lambda_n/n and c_n come from the series route, d_n from the m-sum.
    ``d_values`` (d_1..d_n_max) replaces the latter, e.g. to test
    sensitivity.  Residuals are relative to max(1, |lambda_n/n|).
    """
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    table = _table(gammas, n_max, bits)
    lam = lambda_series(table, n_max)
    c = f_series(table, n_max)
    worst = mpf(0)
    with mp.workprec(bits + 16):
        half_log_pi = mpmath.log(mp.pi) / 2
        for n in range(1, n_max + 1):
            d = d_values[n - 1] if d_values is not None else d_exact(n, bits)
            r = abs(lam[n] - c[n] - mpf(1) / n + half_log_pi - d) / max(1, abs(lam[n]))
            worst = max(worst, r)
    return _report("lemma1", f"1..{n_max}", worst, mpf(2) ** (-bits // 2))


def check_corollary(n_max: int = 64, bits: int = 256, *, d_values=None) -> CheckReport:
    """S1(n)/n - gamma/2 - ln 2 - d_n = 0 for 1 <= n <= n_max.

    Follows from lambda_n/n = c_n + 1/n - ln(pi)/2 + d_n and S2(n)/n = c_n
    once lambda_n carries its constant 1.  The variant with -1/n in place
    of -ln 2 is off by exactly ln 2 - 1/n; that offset is recorded in
    ``details``.
    """
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    worst = mpf(0)
    variant = []
    with mp.workprec(bits + 16):
        for n in range(1, n_max + 1):
            d = d_values[n - 1] if d_values is not None else d_exact(n, bits)
            base = s1(n, bits) / n - mp.euler / 2 - d
            r = abs(base - mp.ln2) / max(1, abs(d))
            worst = max(worst, r)
            variant.append(base - mpf(1) / n)
    return _report("corollary", f"1..{n_max}", worst, mpf(2) ** (-bits // 2),
                   "variant with -1/n instead of -ln 2 leaves residual ln 2 - 1/n",
                   {"variant_residuals": variant})


def check_s1_bounds(n_max: int = 200, *, values=None,
                    policy: PrecisionPolicy = DEFAULT_POLICY) -> CheckReport:
    """n/2 ln n + (gamma-1) n/2 + 1/2 <= S1(n) <= n/2 ln n + (gamma+1) n/2 - 1/2.

    The residual is the largest signed violation, so it is negative when
    both bounds hold with room to spare and the tolerance is 0.
    ``values`` maps n to a substitute S1(n).
    """
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    worst = None
    violations = []
    with mp.workprec(128):
        for n in range(2, n_max + 1):
            v = values[n] if values is not None and n in values else s1(n, policy=policy)
            main = mpf(n) / 2 * mpmath.log(n)
            lo = main + (mp.euler - 1) * n / 2 + mpf(1) / 2
            hi = main + (mp.euler + 1) * n / 2 - mpf(1) / 2
            excess = max(lo - v, v - hi)
            if excess >= 0:
                violations.append(n)
            worst = excess if worst is None else max(worst, excess)
    return _report("s1_bounds", f"2..{n_max}", worst, 0,
                   f"violations at n={violations}" if violations else "",
                   {"violations": violations})


# ---------------------------------------------------------------------------
# eta signs
# ---------------------------------------------------------------------------

def check_eta_signs(j_max: int = 30, bits: int | None = None,
                    policy: PrecisionPolicy = DEFAULT_POLICY) -> CheckReport:
    """(-1)^(j+1) eta_j > 0 for 0 <= j <= j_max.

    eta_j is computed at ``bits`` and at ``bits + 64``; their difference
    plus a 2^(8-bits) floor is taken as the error.  A value not clear of
    its error raises :class:`InconclusiveError` rather than failing.
    The residual is the largest -(-1)^(j+1) eta_j, negative on success.
    """
    if j_max < 0:
        raise DomainError("j_max must be nonnegative")
    if bits is None:
        bits = policy.effective_bits(j_max)
    lo = eta_series(stieltjes_table(j_max, bits), j_max)
    hi = eta_series(stieltjes_table(j_max, bits + 64), j_max)
    worst = None
    wrong = []
    with mp.workprec(bits + 64):
        floor = mpf(2) ** (8 - bits)
        for j in range(j_max + 1):
            err = abs(lo[j] - hi[j]) + floor
            if abs(hi[j]) <= err:
                raise InconclusiveError(
                    f"|eta_{j}| = {mpmath.nstr(abs(hi[j]), 3)} is within its error "
                    f"{mpmath.nstr(err, 3)} at {bits} bits"
                )
            signed = -(-1) ** (j + 1) * hi[j]
            if signed > 0:
                wrong.append(j)
            worst = signed if worst is None else max(worst, signed)
    return _report("eta_signs", f"0..{j_max}", worst, 0,
                   f"wrong sign at j={wrong}" if wrong else "", {"etas": hi})


# ---------------------------------------------------------------------------
# functional equation of F
# ---------------------------------------------------------------------------

def _g(z, wp):
    # (z/(1-z)) zeta(1/(1-z)), continued to every s != 1
    s = 1 / (1 - z)
    return (s - 1) * zeta_continued(s, wp)


def funceq_sides(z, bits: int, form: str = "corrected"):
    """Both sides of the exponentiated functional equation of F at real z.

    With s = 1/(1-z):

        G(1/z) = G(z) (-1/z) pi^(1/(z-1)) 2^(z/(z-1)) Gamma(s) sin[(pi/2) z/(z-1)].

    Gamma(s) sin(pi(1-s)/2) is evaluated as pi / (2 Gamma(1-s) sin(pi s/2)),
    which stays finite where Gamma(s) has a pole and the sine a zero.
    ``form="variant"`` swaps -1/z pi^(1/(z-1)) for (-pi)^(1/(z-1)) / z on
    the principal branch, which agrees only when 1/(z-1) is an odd integer.
    """
    wp = bits + 32
    with mp.workprec(wp):
        z = mpf(z)
        if z == 1:
            raise PoleError("z = 1 is excluded")
        if abs(z) <= 1:
            raise DomainError("need |z| > 1 so that 1/z lies inside the disc")
        s = 1 / (1 - z)
        if mpmath.isint(s / 2):
            raise PoleError("trivial zero of zeta(s): both sides vanish")
        lhs = _g(1 / z, wp)
        gamma_sin = mp.pi / (2 * mpmath.gamma(1 - s) * mpmath.sin(mp.pi * s / 2))
        common = _g(z, wp) * mpf(2) ** (z / (z - 1)) * gamma_sin
        if form == "corrected":
            rhs = common * (-1 / z) * mp.pi ** (1 / (z - 1))
        elif form == "variant":
            rhs = common / z * mpmath.power(-mp.pi, 1 / (z - 1))
        else:
            raise ValueError(f"unknown form {form!r}")
        return lhs, rhs


def check_funceq_F(points=(2, 3), bits: int = 256) -> CheckReport:
    """Relative mismatch of the exponentiated functional equation of F."""
    worst = mpf(0)
    variant = {}
    with mp.workprec(bits + 32):
        for z in points:
            lhs, rhs = funceq_sides(z, bits)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
            plhs, prhs = funceq_sides(z, bits, "variant")
            variant[z] = abs(plhs - prhs) / abs(plhs)
    bad = [z for z, r in variant.items() if r > mpf(2) ** (-bits // 2)]
    notes = "sign factor -1/z; (-pi)^(1/(z-1))/z variant fails at z=" + str(bad) if bad else ""
    return _report("funceq_F", ",".join(str(z) for z in points), worst,
                   mpf(2) ** (-bits // 2), notes, {"variant_form_residuals": variant})


# ---------------------------------------------------------------------------
# ln zeta as a prime-counting integral
# ---------------------------------------------------------------------------

PI_X_CONSTANT = 1.25506  # pi(x) < 1.25506 x / ln x for x > 1


def logzeta_integral(s: float, X: int, primes: np.ndarray | None = None) -> float:
    """s * int_2^X pi(x) / (x (x^s - 1)) dx, exact on each prime gap.

    With the antiderivative ln(1 - x^-s) and summation by parts this is
    pi(X) ln(1 - X^-s) - sum_{p <= X} ln(1 - p^-s).
    """
    if primes is None:
        primes = np.nonzero(prime_sieve(X))[0]
    p = primes[primes <= X].astype(float)
    if p.size == 0:
        raise InsufficientDataError("no primes below X")
    terms = -np.log1p(-(p ** -s))
    return math.fsum(terms) + p.size * math.log1p(-(float(X) ** -s))


def logzeta_tail_bound(s: float, X: int) -> float:
    """Upper bound for s int_X^inf pi(x)/(x(x^s-1)) dx."""
    lx = math.log(X)
    return PI_X_CONSTANT * s / lx * X ** (1 - s) / ((s - 1) * (1 - X ** -s))


def check_logzeta_integral(s_values=(2, 3), X: int = 10 ** 6,
                           sieve_limit: int | None = None) -> CheckReport:
    """ln zeta(s) - (finite integral) must lie in [0, tail bound] and shrink
    as X doubles.

    The residual is the larger of (residual / tail bound) and
    residual(X) / residual(X/2), so the tolerance is 1.
    """
    if sieve_limit is None:
        sieve_limit = X
    if X > sieve_limit:
        raise InsufficientDataError(f"X={X} exceeds the sieve limit {sieve_limit}")
    if X < 4:
        raise DomainError("X must be at least 4")
    primes = np.nonzero(prime_sieve(X))[0]
    worst = -math.inf
    details = {}
    for s in s_values:
        target = float(mpmath.log(zeta(s, 64)))
        res = target - logzeta_integral(s, X, primes)
        res_half = target - logzeta_integral(s, X // 2, primes)
        bound = logzeta_tail_bound(s, X)
        ratio = abs(res) / bound if res >= -1e-15 else math.inf
        shrink = res / res_half if res_half > 0 else math.inf
        worst = max(worst, ratio, shrink)
        details[s] = {"residual": res, "residual_half_X": res_half, "tail_bound": bound}
    return _report("logzeta_integral", f"s={list(s_values)}, X={X}", worst, 1,
                   "residual normalised by the analytic tail bound", details)


# ---------------------------------------------------------------------------
# step-function Laplace representations
# ---------------------------------------------------------------------------

def phi_step(x) -> int:
    """1 on the intervals [ln(2n-1), ln(2n)], n >= 1, else 0."""
    if x < 0:
        return 0
    y = math.exp(x)
    k = math.floor(y)
    return 1 if k % 2 == 1 or y == k else 0


def phi1_step(x, bits: int = 53) -> mpf:
    """sum_{1 <= n <= e^x} (1 + ln n - x) = N (1 - x) + ln N!, N = floor(e^x)."""
    with mp.workprec(bits + 16):
        x = mpf(x)
        if x < 0:
            return mpf(0)
        N = int(mpmath.floor(mpmath.exp(x)))
        value = N * (1 - x) + mpmath.loggamma(N + 1)
    with mp.workprec(bits):
        return +value


_GL_ORDER = 8


def _pieces(X: float) -> np.ndarray:
    """Breakpoints 0 = ln 1 < ln 2 < ... < ln N <= X, with X appended."""
    N = int(math.floor(math.exp(X)))
    edges = np.log(np.arange(1, N + 1, dtype=float))
    if edges[-1] < X:
        edges = np.append(edges, X)
    return edges


def _composite(f, edges: np.ndarray, h: float) -> float:
    """Gauss-Legendre with every piece split into steps no longer than h.

    ``f(x, k)`` receives the nodes and the piece index k (piece k spans
    [ln(k+1), ln(k+2)]).
    """
    nodes, weights = np.polynomial.legendre.leggauss(_GL_ORDER)
    a, b = edges[:-1], edges[1:]
    steps = np.maximum(1, np.ceil((b - a) / h)).astype(int)
    total = []
    for count in np.unique(steps):
        idx = np.nonzero(steps == count)[0]
        width = (b[idx] - a[idx]) / count
        for i in range(count):
            lo = a[idx] + i * width
            x = lo[:, None] + (nodes[None, :] + 1) * (width[:, None] / 2)
            vals = f(x, idx[:, None])
            total.append(np.sum(vals * weights[None, :], axis=1) * width / 2)
    return math.fsum(np.concatenate(total))


def _laplace_phi(s: float, edges: np.ndarray, h: float) -> float:
    # pieces starting at ln(k+1) with k+1 odd carry phi = 1
    def f(x, k):
        return np.exp(-s * x) * ((k % 2) == 0)
    return s * _composite(f, edges, h)


def _laplace_phi1(s: float, edges: np.ndarray, h: float) -> float:
    N = np.arange(1, len(edges), dtype=float)
    log_fact = np.cumsum(np.log(N))

    def f(x, k):
        n = N[k]
        return np.exp(-s * x) * (n * (1 - x) + log_fact[k])
    return _composite(f, edges, h)


def _exact_phi(s: float, X: float) -> float:
    # s * sum over whole intervals [ln(2n-1), ln 2n] below X, plus a partial one
    N = int(math.floor(math.exp(X)))
    n = np.arange(1, N // 2 + 1, dtype=float)
    total = math.fsum((2 * n - 1) ** -s - (2 * n) ** -s)
    if N % 2 == 1:
        total += N ** -s - math.exp(-s * X)
    return total


def _exact_phi1(s: float, edges: np.ndarray) -> float:
    # int_a^b e^{-sx} (A - N x) dx per piece, A = N + ln N!
    a, b = edges[:-1], edges[1:]
    N = np.arange(1, len(edges), dtype=float)
    A = N + np.cumsum(np.log(N))
    ea, eb = np.exp(-s * a), np.exp(-s * b)
    first = (ea - eb) / s
    second = (a / s + 1 / s ** 2) * ea - (b / s + 1 / s ** 2) * eb
    return math.fsum(A * first - N * second)


def check_appendixB(s_values=(2, 3), h: float = 0.05, X: float = 10.0,
                    tolerance: float = 1e-6) -> CheckReport:
    """Laplace transforms of the step functions against their zeta forms.

        s int_0^inf e^{-sx} phi(x) dx   = (1 - 2^{1-s}) zeta(s)
        int_0^inf e^{-sx} phi_1(x) dx   = (s - 1) zeta(s) / s^2

    Quadrature stops at X; the tails are bounded analytically (phi <= 1,
    |phi_1| <= (x + ln 2 pi)/2 + 1).  Each quadrature is also compared with
    exact piecewise integration (which must agree within 10x the
    tolerance) and with a run at step h/2 (PrecisionError if they differ
    by more than the tolerance).  The residual is the larger of
    |quadrature - zeta form| - tail bound and |quadrature - exact| / 10.
    """
    edges = _pieces(X)
    worst = mpf(0)
    details = {}
    for s in s_values:
        zs = float(zeta(s, 64))
        cases = {
            "phi": (_laplace_phi, _exact_phi(s, X), (1 - 2.0 ** (1 - s)) * zs,
                    math.exp(-s * X)),
            "phi1": (_laplace_phi1, _exact_phi1(s, edges), (s - 1) * zs / s ** 2,
                     math.exp(-s * X) * (((X + math.log(2 * math.pi)) / 2 + 1) / s
                                         + 1 / (2 * s * s))),
        }
        for key, (quad, exact, target, tail) in cases.items():
            q = quad(s, edges, h)
            q_fine = quad(s, edges, h / 2)
            if abs(q - q_fine) > tolerance:
                raise PrecisionError(f"step h={h} too coarse for {key} at s={s}")
            r = max(abs(q - target) - tail, abs(q - exact) / 10, 0.0)
            worst = max(worst, mpf(r))
            details[(key, s)] = {"quadrature": q, "exact": exact, "target": target,
                                 "tail_bound": tail}
    return _report("appendixB", f"s={list(s_values)}, X={X}, h={h}", worst, tolerance,
                   details=details)


# ---------------------------------------------------------------------------
# golden formulas
# ---------------------------------------------------------------------------

def appendix_c(g) -> list:
    """The polynomials for c_1..c_5 in gamma = g[0], gamma_1..gamma_4."""
    G, g1, g2, g3, g4 = g[0], g[1], g[2], g[3], g[4]
    return [
        G,
        G - G ** 2 / 2 - g1,
        G - G ** 2 + G ** 3 / 3 - 2 * g1 + G * g1 + g2 / 2,
        (G ** 3 - G ** 4 / 4 - G ** 2 * (3 + 2 * g1) / 2 + G * (1 + 3 * g1 - g2 / 2)
         + (-3 * g1 * (6 + g1) + 9 * g2 - g3) / 6),
        (-G ** 4 + G ** 5 / 5 + G ** 3 * (2 + g1) + G ** 2 * (-4 - 8 * g1 + g2) / 2
         + G * (1 + g1 * (6 + g1) - 2 * g2 + g3 / 6)
         + (72 * g2 + 12 * g1 * (-8 - 4 * g1 + g2) - 16 * g3 + g4) / 24),
    ]


def appendix_d_derivatives(bits: int) -> list:
    """The closed forms for n! d_n, n = 0..5 (the z-derivatives of
    ln Gamma[1/(2(1-z))] at z = 0)."""
    with mp.workprec(bits):
        G, pi, ln2 = mp.euler, mp.pi, mp.ln2
        z3, z5 = zeta(3, bits), zeta(5, bits)
        return [
            mpmath.log(pi) / 2,
            -G / 2 - ln2,
            -G + pi ** 2 / 8 - 2 * ln2,
            -3 * G + 3 * pi ** 2 / 4 - 6 * ln2 - 7 * z3 / 4,
            -12 * G + 9 * pi ** 2 / 2 + pi ** 4 / 16 - 24 * ln2 - 21 * z3,
            -60 * G + 30 * pi ** 2 + 5 * pi ** 4 / 4 - 120 * ln2 - 210 * z3 - 93 * z5 / 4,
        ]


def check_appendixA(gammas: StieltjesTable | None = None, bits: int = 256) -> CheckReport:
    """c_1..c_5 (series route) and n! d_n, n = 0..5 (m-sum) against the
    golden closed forms.  Residuals are relative to max(1, |value|)."""
    table = _table(gammas, 5, bits)
    c = f_series(table, 5)
    worst = mpf(0)
    with mp.workprec(bits):
        golden_c = appendix_c(table.values)
        golden_d = appendix_d_derivatives(bits)
        per = {}
        for n in range(1, 6):
            r = abs(c[n] - golden_c[n - 1]) / max(1, abs(c[n]))
            per[f"c_{n}"] = r
            worst = max(worst, r)
        for n in range(6):
            value = factorial(n) * d_exact(n, bits)
            r = abs(value - golden_d[n]) / max(1, abs(value))
            per[f"{n}!d_{n}"] = r
            worst = max(worst, r)
    return _report("appendixA", "c_1..c_5, d_0..d_5", worst, mpf(10) ** -40,
                   "d closed forms are for n! d_n", per)


# ---------------------------------------------------------------------------
# cross-method agreement
# ---------------------------------------------------------------------------

def agree_digits(values) -> int:
    """floor(-log10) of the largest pairwise relative discrepancy."""
    values = list(values)
    worst = mpf(0)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            worst = max(worst, abs(values[i] - values[j]) / max(1, abs(values[j])))
    if worst == 0:
        return int(mp.dps)
    return int(mpmath.floor(-mpmath.log10(worst)))


def check_three_way(n_max: int = 32, bits: int | None = None, digits: int = 20,
                    policy: PrecisionPolicy = DEFAULT_POLICY) -> CheckReport:
    """c_n from the Stieltjes closed form, the series and the contour."""
    if bits is None:
        bits = policy.effective_bits(n_max)
    table = stieltjes_table(n_max, bits)
    series = f_series(table, n_max)
    plan = ContourPlan.for_order(n_max, bits=bits, policy=policy)
    raw = c_contour_raw(plan)
    worst = mpf(0)
    with mp.workprec(bits):
        imag = max_imag_residue(raw)
        if imag > mpf(2) ** (-bits / 4):
            raise PrecisionError(f"contour imaginary residue {mpmath.nstr(imag, 3)}")
        per = []
        for n in range(1, n_max + 1):
            trio = (c_from_stieltjes(n, table), series[n], mpmath.re(raw[n]))
            d = max(abs(a - b) / max(1, abs(b)) for a in trio for b in trio)
            per.append(d)
            worst = max(worst, d)
    return _report("three_way_c", f"1..{n_max}", worst, mpf(10) ** -digits,
                   f"contour M={plan.samples}, r={mpmath.nstr(plan.radius, 3)}, "
                   f"{plan.bits} bits",
                   {"discrepancies": per, "imag_residue": imag})


def lambda1_closed_form(bits: int) -> mpf:
    with mp.workprec(bits):
        return 1 + mp.euler / 2 - mpmath.log(mp.pi) / 2 - mp.ln2


def check_lambda1(bits: int = 256, zeros: ZeroOrdinates | None = None,
                  zeros_tolerance: float = 1e-2) -> CheckReport:
    """lambda_1 by the series and S routes to working precision, and by the
    zeros sum within ``zeros_tolerance``.

    The residual is the larger of the exact-route error over 2^(-bits/2)
    and the zeros error over ``zeros_tolerance``, with tolerance 1.
    """
    target = lambda1_closed_form(bits)
    table = stieltjes_table(2, bits)
    with mp.workprec(bits):
        routes = {
            "series": lambda_series(table, 1)[1],
            "S": lambda_from_S(1, bits, gammas=table),
        }
        exact = max(abs(v - target) for v in routes.values())
    if zeros is None:
        zeros = bundled_zeros(100)
    approx = lambda_from_zeros(1, zeros)
    with mp.workprec(bits):
        zerr = abs(approx.value - target)
        residual = max(exact / mpf(2) ** (-bits // 2), zerr / zeros_tolerance)
    return _report("lambda1", "n=1", residual, 1,
                   f"zeros route K={approx.count}: error {mpmath.nstr(zerr, 3)}",
                   {"closed_form": target, "exact_error": exact, "zeros_error": zerr,
                    **routes})


def check_d_asymptotics(n: int = 100, bits: int = 256, tolerance: float = 1e-6,
                        ratio_window=(8, 32)) -> CheckReport:
    """|d_n - d_asymptotic(n)| < tolerance and e(n/2)/e(n) in the window.

    The residual is max(e(n)/tolerance, distance of the ratio outside the
    window + 0 inside it scaled so that 1 means failure).
    """
    with mp.workprec(bits):
        e_n = abs(d_exact(n, bits) - d_asymptotic(n, bits))
        e_half = abs(d_exact(n // 2, bits) - d_asymptotic(n // 2, bits))
        ratio = e_half / e_n
        lo, hi = ratio_window
        in_window = lo <= ratio <= hi
        residual = max(e_n / tolerance, mpf(0) if in_window else mpf(1))
    return _report("d_asymptotics", f"n={n // 2},{n}", residual, 1,
                   f"e({n})={mpmath.nstr(e_n, 3)}, ratio={mpmath.nstr(ratio, 4)}",
                   {"e_n": e_n, "e_half": e_half, "ratio": ratio})


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------

def delta_sequence(c) -> list:
    """delta_i = c_i^2 - c_{i-1} c_{i+1} for every interior index."""
    if len(c) < 3:
        raise InsufficientDataError("need at least three terms")
    return [c[i] * c[i] - c[i - 1] * c[i + 1] for i in range(1, len(c) - 1)]


def dft_magnitude(x, bits: int = 128) -> list:
    """|sum_m x_m exp(-2 pi i k m / N)| for k = 0..N-1."""
    N = len(x)
    with mp.workprec(bits + 16):
        roots = [mpmath.expjpi(-mpf(2 * j) / N) for j in range(N)]
        out = [abs(mpmath.fsum(x[m] * roots[(k * m) % N] for m in range(N)))
               for k in range(N)]
    with mp.workprec(bits):
        return [+v for v in out]


@dataclass
class FitReport:
    n_range: tuple
    start: int
    violations: list
    slope: float
    intercept: float
    log_over_sqrt_scale: float
    log_over_sqrt_rms: float
    power_rms: float
    first_clean_start: int | None

    @property
    def bound_holds(self) -> bool:
        return not self.violations


def conjecture_fit(c, first_index: int = 1, start: int = 6) -> FitReport:
    """Advisory comparison of |c_n| with 6/(pi^2 sqrt n).

    ``c[i]`` is c_{first_index + i}.  Violations are listed for n >= start;
    ``first_clean_start`` is the smallest index from which the bound holds
    to the end of the data.  Also reports the least-squares slope of
    ln|c_n| against ln n and a one-parameter fit |c_n| ~ A ln n / sqrt n.
    """
    n = np.arange(first_index, first_index + len(c), dtype=float)
    a = np.array([abs(float(v)) for v in c])
    bound = 6 / (math.pi ** 2 * np.sqrt(n))
    over = a > bound
    violations = [int(k) for k in n[(n >= start) & over]]
    first_clean = None
    if not over[-1]:
        last_bad = np.nonzero(over)[0]
        first_clean = int(n[last_bad[-1] + 1]) if last_bad.size else int(n[0])

    keep = a > 0
    ln_n, ln_a = np.log(n[keep]), np.log(a[keep])
    slope, intercept = np.polyfit(ln_n, ln_a, 1)
    power_rms = float(np.sqrt(np.mean((ln_a - (slope * ln_n + intercept)) ** 2)))
    shape = np.log(n[keep]) / np.sqrt(n[keep])
    pos = shape > 0
    if pos.any():
        scale = float(np.exp(np.mean(ln_a[pos] - np.log(shape[pos]))))
        rms = float(np.sqrt(np.mean((ln_a[pos] - np.log(scale * shape[pos])) ** 2)))
    else:
        scale, rms = math.nan, math.nan
    return FitReport((int(n[0]), int(n[-1])), start, violations, float(slope),
                     float(intercept), scale, rms, power_rms, first_clean)
