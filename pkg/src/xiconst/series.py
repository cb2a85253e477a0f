"""Truncated power series and the series routes to c_n, eta_j, d_n, lambda_n/n.

A :class:`TruncatedPowerSeries` holds a_0..a_N; coefficients above N are
unknown, so every operation returns a series of the smallest operand order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, InsufficientDataError, PrecisionError
from .numeric_kernel import zeta_int
from .stieltjes import StieltjesTable


@dataclass(frozen=True)
class TruncatedPowerSeries:
    coeffs: tuple
    bits: int

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedPowerSeries":
        return TruncatedPowerSeries(self.coeffs[: order + 1], self.bits)

    def _pair(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            other = constant(other, self.order, self.bits)
        order = min(self.order, other.order)
        return self.coeffs[: order + 1], other.coeffs[: order + 1], min(self.bits, other.bits)

    def __add__(self, other):
        a, b, bits = self._pair(other)
        with mp.workprec(bits):
            return TruncatedPowerSeries(tuple(x + y for x, y in zip(a, b)), bits)

    __radd__ = __add__

    def __neg__(self):
        with mp.workprec(self.bits):
            return TruncatedPowerSeries(tuple(-x for x in self.coeffs), self.bits)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedPowerSeries):
            return series_mul(self, other)
        with mp.workprec(self.bits):
            return TruncatedPowerSeries(tuple(x * other for x in self.coeffs), self.bits)

    __rmul__ = __mul__

    def derivative(self) -> "TruncatedPowerSeries":
        """Formal derivative; the result has order N - 1."""
        if self.order == 0:
            return TruncatedPowerSeries((mpf(0),), self.bits)
        with mp.workprec(self.bits):
            return TruncatedPowerSeries(
                tuple(n * self.coeffs[n] for n in range(1, len(self.coeffs))), self.bits
            )

    def integral(self, constant_term=0) -> "TruncatedPowerSeries":
        with mp.workprec(self.bits):
            out = [mpmath.mpmathify(constant_term)]
            out.extend(c / (n + 1) for n, c in enumerate(self.coeffs))
        return TruncatedPowerSeries(tuple(out), self.bits)


def constant(value, order: int, bits: int) -> TruncatedPowerSeries:
    with mp.workprec(bits):
        return TruncatedPowerSeries((mpmath.mpmathify(value),) + (mpf(0),) * order, bits)


def series_from(coeffs, bits: int) -> TruncatedPowerSeries:
    with mp.workprec(bits):
        return TruncatedPowerSeries(tuple(mpmath.mpmathify(c) for c in coeffs), bits)


def geometric(order: int, bits: int) -> TruncatedPowerSeries:
    """1/(1 - z) = 1 + z + z^2 + ..."""
    return series_from([1] * (order + 1), bits)


def series_mul(a: TruncatedPowerSeries, b: TruncatedPowerSeries) -> TruncatedPowerSeries:
    order = min(a.order, b.order)
    bits = min(a.bits, b.bits)
    x, y = a.coeffs, b.coeffs
    with mp.workprec(bits):
        out = [mpmath.fdot((x[k], y[n - k]) for k in range(n + 1)) for n in range(order + 1)]
    return TruncatedPowerSeries(tuple(out), bits)


def series_recip(a: TruncatedPowerSeries) -> TruncatedPowerSeries:
    x = a.coeffs
    if x[0] == 0:
        raise DomainError("reciprocal needs a nonzero constant term")
    with mp.workprec(a.bits):
        inv0 = 1 / x[0]
        out = [inv0]
        for n in range(1, len(x)):
            acc = mpmath.fdot((x[k], out[n - k]) for k in range(1, n + 1))
            out.append(-acc * inv0)
    return TruncatedPowerSeries(tuple(out), a.bits)


def series_log(a: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """log A via n a_n = sum_{k=1}^{n} k l_k a_{n-k} (i.e. L' = A'/A)."""
    x = a.coeffs
    a0 = x[0]
    if a0 == 0:
        raise DomainError("logarithm needs a nonzero constant term")
    if not isinstance(a0, mpmath.mpc) and a0 < 0:
        raise DomainError("real logarithm needs a positive constant term")
    with mp.workprec(a.bits):
        out = [mpmath.log(a0)]
        inv0 = 1 / a0
        for n in range(1, len(x)):
            acc = mpmath.fdot((k * out[k], x[n - k]) for k in range(1, n))
            out.append((n * x[n] - acc) * inv0 / n)
    return TruncatedPowerSeries(tuple(out), a.bits)


def series_exp(a: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """exp A via n e_n = sum_{k=1}^{n} k a_k e_{n-k}."""
    x = a.coeffs
    with mp.workprec(a.bits):
        out = [mpmath.exp(x[0])]
        for n in range(1, len(x)):
            acc = mpmath.fdot((k * x[k], out[n - k]) for k in range(1, n + 1))
            out.append(acc / n)
    return TruncatedPowerSeries(tuple(out), a.bits)


# ---------------------------------------------------------------------------
# routes to the constants
# ---------------------------------------------------------------------------

def xi_kernel_series(gammas: StieltjesTable, N: int) -> TruncatedPowerSeries:
    """(z/(1-z)) zeta(1/(1-z)) = 1 + sum_n (-1)^n gamma_n/n! (z/(1-z))^{n+1}."""
    if N < 0:
        raise DomainError("order must be nonnegative")
    if N >= 1:
        gammas.require(N - 1)
    bits = gammas.bits
    w = series_mul(series_from([0, 1] + [0] * max(N - 1, 0), bits).truncate(N),
                   geometric(N, bits))
    total = constant(1, N, bits)
    power = w
    fact = 1
    for n in range(N):
        if n:
            fact *= n
            power = series_mul(power, w)
        with mp.workprec(bits):
            coeff = (-1) ** n * gammas[n] / fact
        total = total + power * coeff
    return total


def f_series(gammas: StieltjesTable, N: int) -> TruncatedPowerSeries:
    """F(z) = ln[(z/(1-z)) zeta(1/(1-z))] through z^N; coefficient n is c_n."""
    return series_log(xi_kernel_series(gammas, N))


def eta_series(gammas: StieltjesTable, N: int) -> list:
    """eta_0..eta_N from zeta'/zeta = -1/u - sum_p eta_p u^p, u = s - 1.

    With P(u) = u zeta(1 + u) = 1 + sum_n (-1)^n gamma_n u^{n+1}/n!, the
    regular part of zeta'/zeta is P'/P, so eta_p = -[u^p] P'/P.
    """
    if N < 0:
        raise DomainError("order must be nonnegative")
    gammas.require(N)
    bits = gammas.bits
    coeffs = [mpf(1)]
    fact = 1
    with mp.workprec(bits):
        for n in range(N + 1):
            if n:
                fact *= n
            coeffs.append((-1) ** n * gammas[n] / fact)
    P = series_from(coeffs, bits)
    ratio = series_mul(P.derivative(), series_recip(P.truncate(N)))
    with mp.workprec(bits):
        return [-c for c in ratio.coeffs]


def loggamma_half_series(N: int, bits: int) -> TruncatedPowerSeries:
    """ln Gamma[1/(2(1-z))] through z^N; coefficient n is d_n.

    From Gamma(w) = exp(-gamma w + sum_k (-1)^k zeta(k) w^k / k) / w with
    w = 1/(2(1-z)): coefficient n collects -1/n - gamma/2 and
    sum_k (-1)^k zeta(k) C(n+k-1, n) / (k 2^k).  The alternating terms peak
    near 2^n in size, so N extra bits are carried.
    """
    if N < 0:
        raise DomainError("order must be nonnegative")
    wp = bits + N + 32
    with mp.workprec(wp):
        eps = mpf(2) ** (-wp)
        out = [mpmath.log(2) - mp.euler / 2]
        out.extend(-mpf(1) / n - mp.euler / 2 for n in range(1, N + 1))
        k = 2
        while True:
            z = zeta_int(k, wp)
            base = z / (k * mpf(2) ** k)
            sign = 1 if k % 2 == 0 else -1
            biggest = mpf(0)
            for n in range(N + 1):
                term = base * comb(n + k - 1, n)
                out[n] += sign * term
                if term > biggest:
                    biggest = term
            if k > N and biggest < eps:
                break
            k += 1
            if k > 64 * wp:
                raise PrecisionError("ln Gamma series did not converge")
    with mp.workprec(bits):
        return TruncatedPowerSeries(tuple(+c for c in out), bits)


def lambda_series(gammas: StieltjesTable, N: int,
                  loggamma: TruncatedPowerSeries | None = None) -> TruncatedPowerSeries:
    """ln xi_Li(1/(1-z)) through z^N; coefficient n (n >= 1) is lambda_n / n.

    ln xi_Li(1/(1-z)) = F(z) - ln(1-z) + ln(pi)/(2(z-1)) + ln Gamma[1/(2(1-z))],
    with xi_Li = 2 xi so that the constant term vanishes.
    """
    bits = gammas.bits
    F = f_series(gammas, N)
    if loggamma is None:
        loggamma = loggamma_half_series(N, bits)
    elif loggamma.order < N:
        raise InsufficientDataError("ln Gamma series is shorter than N")
    with mp.workprec(bits):
        half_log_pi = mpmath.log(mp.pi) / 2
        extra = [-half_log_pi] + [1 / mpf(n) - half_log_pi for n in range(1, N + 1)]
    return F + series_from(extra, bits) + loggamma.truncate(N)
