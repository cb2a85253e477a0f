"""Arbitrary-precision special functions used throughout the package.

All values are :mod:`mpmath` numbers.  Every public function takes an explicit
``bits`` argument and does its work inside ``mp.workprec``, so results do not
depend on whatever global precision the caller happens to have set.

The Riemann and Hurwitz zeta functions are evaluated by Euler--Maclaurin
summation.  Internally :data:`ZETA_GUARD_BITS` extra bits are carried, and the
documented accuracy is an absolute error below ``2**(-bits + 4) * max(1, |value|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError, PrecisionError

ZETA_GUARD_BITS = 16


class Approximation(NamedTuple):
    """A value from a truncated or slowly converging route.

    ``count`` is the truncation size (zeros used, terms summed).
    """

    value: object
    count: int
    note: str


def dps_for_bits(bits: int) -> int:
    """Decimal digits needed to round-trip a ``bits``-bit mantissa."""
    return int(math.ceil(bits * math.log10(2))) + 2


def to_decimal(x, bits: int) -> str:
    """Decimal string carrying the full ``bits`` of ``x``."""
    with mp.workprec(bits):
        return mpmath.nstr(+mpf(x), dps_for_bits(bits), min_fixed=-5, max_fixed=30)


def from_decimal(text: str, bits: int) -> mpf:
    with mp.workprec(bits):
        return mpf(text)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Maps a target index ``n`` to a working precision in bits.

    ``effective_bits(n) = max(base_bits, ceil(per_n_bits * n) + guard_bits)``.
    The default (128, 2, 64) budgets for the roughly ``n`` bits lost to
    cancellation in alternating binomial sums of length ``n``.
    """

    base_bits: int = 128
    per_n_bits: Fraction = Fraction(2)
    guard_bits: int = 64

    def __post_init__(self):
        if self.base_bits < 1 or self.guard_bits < 1:
            raise ValueError("base_bits and guard_bits must be positive")
        object.__setattr__(self, "per_n_bits", Fraction(self.per_n_bits))
        if self.per_n_bits < 0:
            raise ValueError("per_n_bits must be nonnegative")
        if self.effective_bits(0) < 64:
            raise ValueError("policy must give at least 64 bits at n = 0")

    def effective_bits(self, n: int) -> int:
        scaled = self.per_n_bits * max(n, 0)
        return max(self.base_bits, math.ceil(scaled) + self.guard_bits)


DEFAULT_POLICY = PrecisionPolicy()


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_fraction(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2)."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=64)
def _em_coefficients(count: int, wp: int) -> tuple:
    # B_{2j} / (2j)! for j = 1..count, rounded once per precision
    with mp.workprec(wp):
        out = []
        fact = 1
        for j in range(1, count + 1):
            fact *= (2 * j - 1) * (2 * j)
            b = bernoulli_fraction(2 * j)
            out.append(mpf(b.numerator) / (mpf(b.denominator) * fact))
        return tuple(out)


def _em_coefficient(j: int, wp: int) -> mpf:
    block = 64
    count = ((j + block - 1) // block) * block
    return _em_coefficients(count, wp)[j - 1]


# ---------------------------------------------------------------------------
# Zeta functions
# ---------------------------------------------------------------------------

def _euler_maclaurin(s, a, wp: int):
    """Sum_{k>=0} (k + a)^(-s) continued analytically, a > 0.

    The Euler--Maclaurin remainder expansion is valid for any complex s != 1,
    so this also continues zeta(s, a) into Re s <= 0 for moderate |s|.
    """
    with mp.workprec(wp):
        eps = mpf(2) ** (-wp)
        sigma = mpmath.re(s)
        abs_s = float(abs(s))
        target = int(math.ceil(0.15 * wp + abs_s / 3.0)) + 2
        n_terms = max(0, target - int(mpmath.floor(a)))

        # large real part: plain summation converges before the EM point
        if sigma > 2 and n_terms > 0:
            first = abs(a ** (-s))
            for k in range(1, n_terms + 1):
                tail = (k + a - 1) ** (1 - sigma) / (sigma - 1)
                if tail < eps * first:
                    total = mpf(0) if not isinstance(s, mpc) else mpc(0)
                    for i in range(k):
                        total += (i + a) ** (-s)
                    return total

        total = mpf(0) if not isinstance(s, mpc) else mpc(0)
        for k in range(n_terms):
            total += (k + a) ** (-s)
        x = n_terms + a
        x_pow = x ** (-s)
        total += x * x_pow / (s - 1) + x_pow / 2
        poch = s
        x_inv2 = 1 / (x * x)
        power = x_pow / x
        scale = max(abs(total), eps)
        prev = None
        for j in range(1, 4 * wp + 8):
            term = _em_coefficient(j, wp) * poch * power
            total += term
            mag = abs(term)
            if mag < eps * scale:
                return total
            if prev is not None and mag > prev and j > 3:
                raise PrecisionError(
                    f"Euler-Maclaurin series diverging at s={s}, a={a}; "
                    f"shift {n_terms} too small"
                )
            prev = mag
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            power *= x_inv2
        raise PrecisionError("Euler-Maclaurin correction did not converge")


def _coerce(s):
    s = mpmath.mpmathify(s)
    if isinstance(s, mpc) and s.imag == 0:
        s = s.real
    return s


def zeta(s, bits: int):
    """Riemann zeta(s) for Re s > 0, s != 1.

    Real input gives an ``mpf``; complex input an ``mpc``.
    """
    with mp.workprec(bits + ZETA_GUARD_BITS):
        s = _coerce(s)
        if s == 1:
            raise PoleError("zeta has a pole at s = 1")
        if mpmath.re(s) <= 0:
            raise DomainError("zeta is only supported on Re s > 0")
        value = _euler_maclaurin(s, mpf(1), bits + ZETA_GUARD_BITS)
    with mp.workprec(bits):
        return +value


def zeta_continued(s, bits: int):
    """zeta(s) for any s != 1 via the continued Euler--Maclaurin formula.

    Intended for moderate |s| only (cost grows linearly with |s|).
    """
    with mp.workprec(bits + ZETA_GUARD_BITS):
        s = _coerce(s)
        if s == 1:
            raise PoleError("zeta has a pole at s = 1")
        value = _euler_maclaurin(s, mpf(1), bits + ZETA_GUARD_BITS)
    with mp.workprec(bits):
        return +value


@lru_cache(maxsize=8192)
def zeta_int(m: int, bits: int) -> mpf:
    """zeta(m) for an integer m >= 2, memoised per (m, bits)."""
    if m < 2:
        raise DomainError("zeta_int needs m >= 2")
    return zeta(m, bits)


def hurwitz_zeta(s, a, bits: int) -> mpf:
    """Hurwitz zeta(s, a) = sum_{k>=0} (k + a)^(-s) for real s > 1, a > 0."""
    with mp.workprec(bits + ZETA_GUARD_BITS):
        s = mpf(s)
        a = mpf(a)
        if s <= 1 or a <= 0:
            raise DomainError("hurwitz_zeta needs s > 1 and a > 0")
        value = _euler_maclaurin(s, a, bits + ZETA_GUARD_BITS)
    with mp.workprec(bits):
        return +value


def polygamma_half(j: int, bits: int) -> mpf:
    """psi^(j)(1/2) = (-1)^(j+1) j! (2^(j+1) - 1) zeta(j+1), j >= 1."""
    if j < 1:
        raise DomainError("polygamma_half needs j >= 1")
    z = zeta_int(j + 1, bits + 8)
    with mp.workprec(bits + 8):
        v = (-1) ** (j + 1) * math.factorial(j) * (2 ** (j + 1) - 1) * z
    with mp.workprec(bits):
        return +v


def digamma_half(bits: int) -> mpf:
    """psi(1/2) = -gamma - 2 ln 2."""
    with mp.workprec(bits + 8):
        v = -mp.euler - 2 * mp.ln2
    with mp.workprec(bits):
        return +v


def loggamma1p(w, bits: int):
    """ln Gamma(1 + w) from the zeta-power series of ln Gamma.

    ln Gamma(1 + w) = -gamma w + sum_{k>=2} (-1)^k zeta(k) w^k / k, |w| < 1,
    after shifting Re w into (-1/2, 1/2] with ln Gamma(1 + w) = ln w + ln Gamma(w).
    """
    wp = bits + 24
    with mp.workprec(wp):
        w = _coerce(w)
        if mpmath.re(w) <= -0.5:
            raise DomainError("loggamma1p only supports Re w > -1/2")
        shift = mpf(0) if not isinstance(w, mpc) else mpc(0)
        while mpmath.re(w) > 0.5:
            shift += mpmath.log(w)
            w -= 1
        if abs(w) > 0.75:
            raise DomainError("loggamma1p: |Im w| too large for the series")
        eps = mpf(2) ** (-wp)
        total = -mp.euler * w
        wk = w
        for k in range(2, 40 * wp):
            wk *= w
            term = (-1) ** k * zeta_int(k, wp) * wk / k
            total += term
            if abs(wk) < eps * k:
                break
        else:
            raise PrecisionError("loggamma1p series did not converge")
        value = total + shift
    with mp.workprec(bits):
        return +value


# ---------------------------------------------------------------------------
# von Mangoldt function
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MangoldtTable:
    """Lambda(1..limit), stored as the prime base of each prime power.

    ``base[k]`` is p when k = p^m and 0 otherwise (index 0 unused).
    """

    limit: int
    base: np.ndarray

    def __len__(self):
        return self.limit

    def is_prime_power(self, k: int) -> bool:
        return bool(self.base[k])

    def value(self, k: int, bits: int = 53) -> mpf:
        if not 1 <= k <= self.limit:
            raise IndexError(k)
        p = int(self.base[k])
        with mp.workprec(bits):
            return mpmath.log(p) if p else mpf(0)

    def values(self, bits: int = 53) -> list:
        """Lambda(1), ..., Lambda(limit) as mpf at ``bits``."""
        logs = {}
        out = []
        with mp.workprec(bits):
            for k in range(1, self.limit + 1):
                p = int(self.base[k])
                if p and p not in logs:
                    logs[p] = mpmath.log(p)
                out.append(logs[p] if p else mpf(0))
        return out

    def as_float(self) -> np.ndarray:
        """Lambda(0..limit) as float64 (Lambda(0) := 0)."""
        out = np.zeros(self.limit + 1)
        mask = self.base > 0
        out[mask] = np.log(self.base[mask].astype(float))
        return out

    def restrict(self, limit: int) -> "MangoldtTable":
        if not 1 <= limit <= self.limit:
            raise ValueError("restriction must not exceed the table limit")
        return MangoldtTable(limit, self.base[: limit + 1].copy())


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``is_prime[0..limit]``."""
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return is_prime


def mangoldt_table(limit: int) -> MangoldtTable:
    if limit < 1:
        raise DomainError("mangoldt_table needs limit >= 1")
    is_prime = prime_sieve(limit)
    base = np.zeros(limit + 1, dtype=np.int64)
    primes = np.nonzero(is_prime)[0]
    base[primes] = primes
    for p in primes[primes <= math.isqrt(limit)]:
        q = int(p) * int(p)
        while q <= limit:
            base[q] = p
            q *= int(p)
    base.setflags(write=False)
    return MangoldtTable(limit, base)
