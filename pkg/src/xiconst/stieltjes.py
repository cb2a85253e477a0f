"""Stieltjes constants gamma_k and the Laurent expansion of zeta about s = 1.

gamma_k is the limit of ``sum_{m<=N} ln^k(m)/m - ln^{k+1}(N)/(k+1)``.  The raw
limit converges like ln^{k+1}(N)/N, so the tail sum_{m>=N} ln^k(m)/m is
replaced by its Euler--Maclaurin expansion.  Derivatives of f(x) = ln^k(x)/x
are tracked exactly as f^{(p)}(x) = x^{-1-p} Q_p(ln x) with integer
polynomials Q_{p+1} = Q_p' - (p + 1) Q_p.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, InsufficientDataError, PoleError, PrecisionError
from .numeric_kernel import _em_coefficient, to_decimal

K_CAP = 128
MAX_N = 1 << 16


@dataclass(frozen=True)
class StieltjesTable:
    """gamma_0..gamma_K, each accurate to about ``bits`` bits."""

    K: int
    bits: int
    values: tuple

    def __getitem__(self, k: int) -> mpf:
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def require(self, k: int) -> None:
        if k > self.K:
            raise InsufficientDataError(
                f"need gamma_{k} but the table stops at gamma_{self.K}"
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "gamma_k", "bits"])
        for k, g in enumerate(self.values):
            writer.writerow([k, to_decimal(g, self.bits), self.bits])
        return buf.getvalue()


def _tail_polynomials(k: int, count: int) -> list:
    """Integer coefficient lists of Q_p for odd p = 1, 3, ..., 2*count - 1."""
    q = [0] * k + [1]
    odd = []
    for p in range(0, 2 * count):
        deriv = [i * q[i] for i in range(1, len(q))] + [0]
        q = [deriv[i] - (p + 1) * q[i] for i in range(len(q))]
        if p % 2 == 0:
            odd.append(tuple(q))
    return odd


def _horner(coeffs, x):
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _guard_bits(K: int, N: int) -> int:
    log_n = max(math.log(N), math.e)
    return 32 + int(math.ceil((K + 1) * math.log2(log_n)))


def _stieltjes_at(K: int, N: int, bits: int) -> list:
    wp = bits + _guard_bits(K, N)
    with mp.workprec(wp):
        eps = mpf(2) ** (-wp)
        sums = [mpf(0)] * (K + 1)
        for m in range(2, N):
            L = mpmath.log(m)
            term = mpf(1) / m
            for k in range(K + 1):
                sums[k] += term
                term *= L
        sums[0] += 1  # m = 1 contributes only to k = 0

        LN = mpmath.log(N)
        inv_n = mpf(1) / N
        out = []
        for k in range(K + 1):
            value = sums[k] + LN ** k * inv_n / 2 - LN ** (k + 1) / (k + 1)
            scale = max(abs(value), mpf(1))
            # f^{(2j-1)}(N) = N^{-2j} Q_{2j-1}(ln N); keep polys on demand
            polys = []
            power = inv_n * inv_n
            j = 1
            while True:
                if j > len(polys):
                    polys = _tail_polynomials(k, 2 * len(polys) + 16)
                term = _em_coefficient(j, wp) * _horner(polys[j - 1], LN) * power
                value -= term
                mag = abs(term)
                if mag < eps * scale:
                    break
                # terms shrink roughly like ((k + 2j) / (2 pi N))^2 per step
                if k + 2 * j > 5.5 * N:
                    raise PrecisionError(
                        f"Euler-Maclaurin tail for gamma_{k} diverges at N={N}"
                    )
                power *= inv_n * inv_n
                j += 1
            out.append(value)
        return out


def default_cutoff(K: int, bits: int) -> int:
    return max(16, bits // 2 + 2 * K)


def stieltjes_table(K: int, bits: int, *, cap: int = K_CAP,
                    max_n: int = MAX_N) -> StieltjesTable:
    """Compute gamma_0..gamma_K.

    Two Euler--Maclaurin runs at cutoffs N and 2N must agree to
    ``2**(-bits + 16) * max(1, |gamma_k|)``; the cutoff doubles until they
    do or ``max_n`` is reached, in which case :class:`PrecisionError`.
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    if K > cap:
        raise DomainError(f"K={K} exceeds the cap {cap}")
    N = default_cutoff(K, bits)
    lo = _stieltjes_at(K, N, bits)
    while True:
        if 2 * N > max_n:
            raise PrecisionError(
                f"Stieltjes constants unstable up to cutoff N={N} at {bits} bits"
            )
        hi = _stieltjes_at(K, 2 * N, bits)
        with mp.workprec(bits + 32):
            tol = mpf(2) ** (-bits + 16)
            stable = all(abs(a - b) <= tol * max(1, abs(b)) for a, b in zip(lo, hi))
        if stable:
            break
        N *= 2
        lo = hi
    with mp.workprec(bits):
        values = tuple(+v for v in hi)
    return StieltjesTable(K, bits, values)


def laurent_terms(s, table: StieltjesTable) -> list:
    """The terms (-1)^n gamma_n (s-1)^n / n!, n = 0..K."""
    with mp.workprec(table.bits + 16):
        u = mpf(s) - 1
        terms = []
        upow = mpf(1)
        fact = 1
        for n, g in enumerate(table.values):
            if n:
                upow *= u
                fact *= n
            terms.append((-1) ** n * g * upow / fact)
        return terms


def laurent_tail_bound(s, table: StieltjesTable) -> mpf:
    """Crude truncation estimate: the last two Laurent terms plus roundoff."""
    terms = laurent_terms(s, table)
    with mp.workprec(table.bits + 16):
        last = abs(terms[-1]) + (abs(terms[-2]) if len(terms) > 1 else 0)
        return last + mpf(2) ** (-table.bits + 8)


def zeta_laurent_eval(s, table: StieltjesTable, tolerance=None) -> mpf:
    """zeta(s) from 1/(s-1) + sum_n (-1)^n gamma_n (s-1)^n / n!."""
    with mp.workprec(table.bits + 16):
        s = mpf(s)
        u = s - 1
        if u == 0:
            raise PoleError("Laurent expansion is singular at s = 1")
        if abs(u) >= 1:
            raise DomainError("Laurent evaluation needs 0 < |s - 1| < 1")
        if tolerance is None:
            tolerance = mpf(2) ** (-(table.bits // 2))
        tail = laurent_tail_bound(s, table)
        if tail > tolerance:
            raise InsufficientDataError(
                f"Laurent tail estimate {mpmath.nstr(tail, 5)} exceeds tolerance"
            )
        value = 1 / u + mpmath.fsum(laurent_terms(s, table))
    with mp.workprec(table.bits):
        return +value
