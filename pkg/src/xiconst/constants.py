"""Closed-form and summation routes to S1, S2, lambda_n, c_n, d_n and eta_j.

The Stieltjes-multinomial formulas for eta_{k-1}, lambda_n and c_n share one
inner quantity,

    T_k = sum_{h=1}^{k} (1/h) sum_{j_1+...+j_h = k-h} prod_b gamma_{j_b} / j_b!,

with eta_{k-1} = (-1)^k k T_k.  The inner sum runs over ordered tuples; it is
evaluated over unordered multisets weighted by their number of orderings.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

import mpmath
import numpy as np
from mpmath import mp, mpf

from .contour import ZeroOrdinates
from .errors import CapError, DomainError, InsufficientDataError, PrecisionError
from .numeric_kernel import (
    DEFAULT_POLICY,
    Approximation,
    PrecisionPolicy,
    digamma_half,
    from_decimal,
    hurwitz_zeta,
    mangoldt_table,
    MangoldtTable,
    polygamma_half,
    to_decimal,
    zeta_int,
)
from .series import eta_series
from .stieltjes import StieltjesTable, stieltjes_table

CLOSED_FORM_CAP = 32


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

_NUMERIC_FIELDS = ("lambda_over_n", "c", "d", "S1", "S2")


@dataclass(frozen=True)
class ConstantsRecord:
    n: int
    lambda_over_n: mpf
    c: mpf
    d: mpf
    S1: mpf
    S2: mpf
    method: str
    bits: int
    agree_digits: int

    def lemma1_residual(self) -> mpf:
        with mp.workprec(self.bits + 16):
            return (self.lambda_over_n - self.c - mpf(1) / self.n
                    + mpmath.log(mp.pi) / 2 - self.d)

    def lemma2_residual(self) -> mpf:
        with mp.workprec(self.bits + 16):
            return self.S2 / self.n - self.c

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in _NUMERIC_FIELDS:
            out[key] = to_decimal(out[key], self.bits)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ConstantsRecord":
        bits = int(data["bits"])
        kwargs = dict(data)
        for key in _NUMERIC_FIELDS:
            kwargs[key] = from_decimal(data[key], bits)
        kwargs["n"] = int(data["n"])
        kwargs["bits"] = bits
        kwargs["agree_digits"] = int(data["agree_digits"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, line: str) -> "ConstantsRecord":
        return cls.from_dict(json.loads(line))


# ---------------------------------------------------------------------------
# compositions as weighted partitions
# ---------------------------------------------------------------------------

def _partitions(total: int, max_part: int, max_len: int) -> Iterator[tuple]:
    """Nonincreasing tuples of positive ints summing to ``total``."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_len - 1):
            yield (first,) + rest


def weighted_partitions(total: int, parts: int) -> Iterator[tuple[tuple, int]]:
    """Multisets of ``parts`` nonnegative ints summing to ``total``.

    Yields ``(multiset, weight)`` where the multiset is nonincreasing and the
    weight is the number of distinct orderings, so the weights add up to
    C(total + parts - 1, parts - 1).
    """
    if parts < 1 or total < 0:
        return
    for positive in _partitions(total, total, parts):
        multiset = positive + (0,) * (parts - len(positive))
        weight = factorial(parts)
        run = 1
        for i in range(1, parts + 1):
            if i < parts and multiset[i] == multiset[i - 1]:
                run += 1
            else:
                weight //= factorial(run)
                run = 1
        yield multiset, weight


@lru_cache(maxsize=4096)
def _multinomial_sum(k: int, gammas: StieltjesTable) -> mpf:
    # T_k as defined in the module docstring
    gammas.require(k - 1)
    with mp.workprec(gammas.bits + 32):
        scaled = [gammas[j] / factorial(j) for j in range(k)]
        total = mpf(0)
        for h in range(1, k + 1):
            inner = mpf(0)
            for multiset, weight in weighted_partitions(k - h, h):
                prod = mpf(weight)
                for j in multiset:
                    prod *= scaled[j]
                inner += prod
            total += inner / h
        return total


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapError(f"closed-form route capped at {cap}, got {n}")


# ---------------------------------------------------------------------------
# S1, S2 and lambda
# ---------------------------------------------------------------------------

def s1(n: int, bits: int | None = None, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """S1(n) = sum_{m=2}^{n} (-1)^m C(n, m) (1 - 2^-m) zeta(m).

    n = 1 gives the empty sum 0.
    """
    if n < 1:
        raise DomainError("S1 needs n >= 1")
    if bits is None:
        bits = policy.effective_bits(n)
    wp = -(-(bits + n + 16) // 64) * 64  # bucketed so zeta_int's cache is shared
    with mp.workprec(wp):
        total = mpf(0)
        for m in range(2, n + 1):
            total += (-1) ** m * comb(n, m) * (1 - mpf(2) ** (-m)) * zeta_int(m, wp)
    with mp.workprec(bits):
        return +total


def _mantissa_bits(values) -> int:
    return max((v._mpf_[3] for v in values if isinstance(v, mpf)), default=53)


def s2(n: int, etas: Sequence, bits: int | None = None) -> mpf:
    """S2(n) = -sum_{m=1}^{n} C(n, m) eta_{m-1}.

    ``bits`` defaults to the widest mantissa among the supplied etas.
    """
    if n < 1:
        raise DomainError("S2 needs n >= 1")
    if len(etas) < n:
        raise InsufficientDataError(f"S2({n}) needs eta_0..eta_{n - 1}")
    if bits is None:
        bits = max(_mantissa_bits(etas[:n]), 53)
    with mp.workprec(bits + n + 16):
        value = -mpmath.fsum(comb(n, m) * etas[m - 1] for m in range(1, n + 1))
    with mp.workprec(bits):
        return +value


def eta_from_stieltjes(k: int, gammas: StieltjesTable, cap: int = CLOSED_FORM_CAP) -> mpf:
    """eta_{k-1} = (-1)^k k T_k for k >= 2."""
    if k < 2:
        raise DomainError("closed form for eta_{k-1} needs k >= 2")
    _check_cap(k, cap)
    gammas.require(k - 1)
    with mp.workprec(gammas.bits):
        return +((-1) ** k * k * _multinomial_sum(k, gammas))


def eta_limit_oracle(k: int, N: int, table: MangoldtTable | None = None) -> Approximation:
    """Partial limit (-1)^k/k! (sum_{m<=N} Lambda(m) ln^k m / m - ln^{k+1} N/(k+1)).

    Converges slowly (roughly like N^{-1/2} up to logs); double precision is
    ample for the loose checks this is meant for.
    """
    if k < 0 or N < 2:
        raise DomainError("need k >= 0 and N >= 2")
    if table is None:
        table = mangoldt_table(N)
    elif table.limit < N:
        raise InsufficientDataError("Mangoldt table shorter than N")
    lam = table.as_float()[1 : N + 1]
    m = np.arange(1, N + 1, dtype=float)
    logm = np.log(m)
    partial = math.fsum(lam * logm ** k / m)
    value = (-1) ** k / math.factorial(k) * (partial - math.log(N) ** (k + 1) / (k + 1))
    return Approximation(mpf(value), N, "partial limit; slow O(log^k N / sqrt N)-type convergence")


def lambda_from_S(n: int, bits: int | None = None, gammas: StieltjesTable | None = None,
                  policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """lambda_n = 1 + S1(n) + S2(n) - n (gamma + ln pi + 2 ln 2) / 2.

    The constant 1 is what makes n = 1 reproduce
    lambda_1 = 1 + gamma/2 - ln(pi)/2 - ln 2.
    """
    if n < 1:
        raise DomainError("lambda_n needs n >= 1")
    if bits is None:
        bits = gammas.bits if gammas is not None else policy.effective_bits(n)
    if gammas is None:
        gammas = stieltjes_table(n, bits)
    etas = eta_series(gammas, n - 1)
    with mp.workprec(bits + 16):
        value = (1 + s1(n, bits) + s2(n, etas, bits)
                 - n * (mp.euler + mpmath.log(mp.pi) + 2 * mp.ln2) / 2)
    with mp.workprec(bits):
        return +value


def _binomial_eta_sum(n: int, gammas: StieltjesTable) -> mpf:
    # sum_{j=2}^{n} (-1)^j C(n, j) j T_j
    with mp.workprec(gammas.bits + n + 16):
        return mpmath.fsum((-1) ** j * comb(n, j) * j * _multinomial_sum(j, gammas)
                           for j in range(2, n + 1))


def lambda_from_stieltjes(n: int, gammas: StieltjesTable, cap: int = CLOSED_FORM_CAP) -> mpf:
    if n < 2:
        raise DomainError("the Stieltjes formula for lambda_n needs n >= 2")
    _check_cap(n, cap)
    gammas.require(n - 1)
    bits = gammas.bits
    with mp.workprec(bits + n + 16):
        value = (1 - mpf(n) / 2 * (mpmath.log(mp.pi) + 2 * mp.ln2 - mp.euler)
                 + s1(n, bits + n) - _binomial_eta_sum(n, gammas))
    with mp.workprec(bits):
        return +value


def c_from_stieltjes(n: int, gammas: StieltjesTable, cap: int = CLOSED_FORM_CAP) -> mpf:
    """c_n = gamma - (1/n) sum_{j=2}^{n} (-1)^j C(n, j) j T_j; c_1 = gamma."""
    if n < 1:
        raise DomainError("c_n needs n >= 1")
    if n == 1:
        return gammas[0]
    _check_cap(n, cap)
    gammas.require(n - 1)
    with mp.workprec(gammas.bits + n + 16):
        value = gammas[0] - _binomial_eta_sum(n, gammas) / n
    with mp.workprec(gammas.bits):
        return +value


def lambda_from_zeros(n: int, zeros: ZeroOrdinates, bits: int = 64) -> Approximation:
    """sum over the loaded zeros of 1 - (1 - 1/rho)^n, conjugates folded in."""
    if not zeros.ordinates:
        raise InsufficientDataError("no zeros loaded")
    if n < 0:
        raise DomainError("n must be nonnegative")
    with mp.workprec(bits):
        half = mpf(1) / 2
        total = mpf(0)
        for t in zeros.ordinates:
            rho = mpmath.mpc(half, t)
            total += 2 * mpmath.re(1 - (1 - 1 / rho) ** n)
    return Approximation(total, len(zeros.ordinates), f"truncated at K={len(zeros.ordinates)} zeros")


# ---------------------------------------------------------------------------
# d_n and polygamma machinery
# ---------------------------------------------------------------------------

def _split_point(n: int) -> int:
    return max(64, n * n)


def d_exact(n: int, bits: int | None = None, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """d_n = psi(1/2)/2 + (1/2n) sum_{m>=1} [2(1-1/m)^n - 2(1-1/(2m))^n + n/m].

    Terms with m < m* = max(64, n^2) are summed directly.  Beyond m* the
    summand is a polynomial in 1/m with no 1/m term, so the tail is an exact
    combination of Hurwitz zeta values at m*.  d_0 = ln(pi)/2.
    """
    if n < 0:
        raise DomainError("d_n needs n >= 0")
    if bits is None:
        bits = policy.effective_bits(n)
    if n == 0:
        with mp.workprec(bits + 8):
            v = mpmath.log(mp.pi) / 2
        with mp.workprec(bits):
            return +v
    wp = bits + 32 + n.bit_length()
    m_star = _split_point(n)
    with mp.workprec(wp):
        head = mpf(0)
        for m in range(1, m_star):
            head += (2 * (mpf(m - 1) / m) ** n - 2 * (mpf(2 * m - 1) / (2 * m)) ** n
                     + mpf(n) / m)
        tail = mpf(0)
        for i in range(2, n + 1):
            coeff = (-1) ** i * comb(n, i) * (2 - mpf(2) ** (1 - i))
            tail += coeff * hurwitz_zeta(i, m_star, wp)
        value = digamma_half(wp) / 2 + (head + tail) / (2 * n)
    with mp.workprec(bits):
        return +value


def d_asymptotic(j: int, bits: int = 128) -> mpf:
    """(1/2)[ln j - 1/(2j) - 1/(12 j^2) + gamma - ln 2 - 1], remainder O(j^-4).

    Exponentially small terms such as 2^{1-j}/j are dropped, so there is no
    accuracy claim for small j.
    """
    if j < 1:
        raise DomainError("d_asymptotic needs j >= 1")
    with mp.workprec(bits):
        j = mpf(j)
        return (mpmath.log(j) - 1 / (2 * j) - 1 / (12 * j * j) + mp.euler - mp.ln2 - 1) / 2


def digamma_deriv_at0(n: int, bits: int | None = None,
                      policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """n-th z-derivative of psi[1/(2(1-z))] at z = 0 by the m-sum.

    n! sum_m m^-2 [2(1-1/m)^{n-1} - (1/2)(1-1/(2m))^{n-1}], with the same
    direct-plus-Hurwitz split as :func:`d_exact`.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if bits is None:
        bits = policy.effective_bits(n)
    wp = bits + 32 + n.bit_length()
    m_star = _split_point(n)
    with mp.workprec(wp):
        head = mpf(0)
        for m in range(1, m_star):
            head += (2 * (mpf(m - 1) / m) ** (n - 1)
                     - (mpf(2 * m - 1) / (2 * m)) ** (n - 1) / 2) / (m * m)
        tail = mpf(0)
        for i in range(0, n):
            coeff = (-1) ** i * comb(n - 1, i) * (2 - mpf(2) ** (-i - 1))
            tail += coeff * hurwitz_zeta(i + 2, m_star, wp)
        value = factorial(n) * (head + tail)
    with mp.workprec(bits):
        return +value


def digamma_deriv_faa_di_bruno(n: int, bits: int | None = None,
                               policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """Same derivative as a polygamma sum:
    sum_{j=1}^{n} C(n, j) (n-1)!/(j-1)! psi^(j)(1/2) / 2^j."""
    if n < 1:
        raise DomainError("need n >= 1")
    if bits is None:
        bits = policy.effective_bits(n)
    wp = bits + 2 * n + 16
    with mp.workprec(wp):
        total = mpf(0)
        for j in range(1, n + 1):
            weight = comb(n, j) * factorial(n - 1) // factorial(j - 1)
            total += weight * polygamma_half(j, wp) / mpf(2) ** j
    with mp.workprec(bits):
        return +total


def digamma_deriv_estimate(n: int, bits: int = 128) -> mpf:
    """Leading Euler--Maclaurin estimate n! ((1 + 2^-n)/n - 2^{-n-1})."""
    with mp.workprec(bits):
        half_n = mpf(2) ** (-n)
        return factorial(n) * ((1 + half_n) / n - half_n / 2)


def polylog_half(z, bits: int = 128, budget: int = 10_000) -> mpf:
    """L(z) = sum_{n>=1} z^n / sqrt(n) for -1 <= z <= 0.

    Written as -sum_k (-1)^k |z|^{k+1}/sqrt(k+1), an alternating series with
    completely monotone terms, and summed with the Cohen--Rodriguez
    Villegas--Zagier acceleration (error about 5.83^-terms).
    """
    with mp.workprec(bits + 16):
        z = mpf(z)
        if not -1 <= z <= 0:
            raise DomainError("polylog_half is implemented for -1 <= z <= 0")
        if z == 0:
            return mpf(0)
        terms = int(math.ceil((bits + 16) * math.log(2) / math.log(3 + math.sqrt(8)))) + 2
        if terms > budget:
            raise PrecisionError(f"need {terms} terms, budget is {budget}")
        x = -z
        d = (3 + mpmath.sqrt(8)) ** terms
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        total = mpf(0)
        for k in range(terms):
            c = b - c
            total += c * x ** (k + 1) / mpmath.sqrt(k + 1)
            b = b * (k + terms) * (k - terms) / ((k + mpf(1) / 2) * (k + 1))
        value = -(total / d)
    with mp.workprec(bits):
        return +value
