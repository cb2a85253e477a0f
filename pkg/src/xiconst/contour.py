"""F(z) = ln[(z/(1-z)) zeta(1/(1-z))] evaluated directly, its Taylor
coefficients by the trapezoidal rule on a circle, and its representation as a
sum over zeta zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError, InsufficientDataError, PrecisionError, ZeroFileError
from .numeric_kernel import (
    DEFAULT_POLICY,
    Approximation,
    PrecisionPolicy,
    loggamma1p,
    zeta,
)

FIRST_ZERO = 14.134725141734693
BUNDLED_ZEROS = "zeta_zeros_200.txt"


# ---------------------------------------------------------------------------
# zero ordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroOrdinates:
    """Ordinates t_1 < t_2 < ... of zeros 1/2 + i t_k (taken on trust)."""

    ordinates: tuple

    def __post_init__(self):
        ts = tuple(self.ordinates)
        object.__setattr__(self, "ordinates", ts)
        if not ts:
            return
        if ts[0] <= 0:
            raise ZeroFileError("ordinates must be positive")
        for i in range(1, len(ts)):
            if not ts[i] > ts[i - 1]:
                raise ZeroFileError(f"ordinate {i + 1} is not above its predecessor")
        if abs(ts[0] - FIRST_ZERO) > 0.5:
            raise ZeroFileError(f"first ordinate {ts[0]} is not near {FIRST_ZERO:.2f}")

    @property
    def count(self) -> int:
        return len(self.ordinates)

    def __len__(self):
        return len(self.ordinates)

    def truncated(self, K: int) -> "ZeroOrdinates":
        if K > len(self.ordinates):
            raise InsufficientDataError(f"only {len(self.ordinates)} zeros loaded")
        return ZeroOrdinates(self.ordinates[:K])


def parse_zeros(text: str, bits: int = 64) -> ZeroOrdinates:
    """One positive decimal per line; '#' comments and blank lines skipped."""
    values = []
    prev = None
    with mp.workprec(bits):
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                t = mpf(line)
            except (ValueError, TypeError):
                raise ZeroFileError(f"not a decimal number: {line!r}", lineno) from None
            if not mpmath.isfinite(t) or t <= 0:
                raise ZeroFileError(f"ordinate must be positive, got {line}", lineno)
            if prev is not None and t <= prev:
                raise ZeroFileError("ordinates must be strictly ascending", lineno)
            if prev is None and abs(t - FIRST_ZERO) > 0.5:
                raise ZeroFileError(f"first ordinate {line} is not near {FIRST_ZERO:.2f}", lineno)
            values.append(t)
            prev = t
    if not values:
        raise ZeroFileError("file contains no ordinates")
    return ZeroOrdinates(tuple(values))


def load_zeros(path, bits: int = 64) -> ZeroOrdinates:
    return parse_zeros(Path(path).read_text(encoding="utf-8"), bits)


def bundled_zeros(K: int | None = None, bits: int = 64) -> ZeroOrdinates:
    """The first 200 zero ordinates shipped with the package."""
    text = resources.files("xiconst").joinpath("data").joinpath(BUNDLED_ZEROS).read_text("utf-8")
    zeros = parse_zeros(text, bits)
    return zeros if K is None else zeros.truncated(K)


# ---------------------------------------------------------------------------
# direct evaluation
# ---------------------------------------------------------------------------

def _xi_kernel(z, wp: int):
    # (z/(1-z)) zeta(1/(1-z)) = (s - 1) zeta(s)
    with mp.workprec(wp):
        s = 1 / (1 - z)
        return (s - 1) * zeta(s, wp)


def f_eval(z, bits: int):
    """F(z) on the principal branch; F(0) = 0 exactly.

    Accepts the closed disc |z| <= 1 minus z = 1 (the boundary maps to the
    critical line, where zeta is still evaluated directly).  For real z the
    kernel is positive and an ``mpf`` is returned.
    """
    with mp.workprec(bits + 16):
        z = mpmath.mpmathify(z)
        if isinstance(z, mpc) and z.imag == 0:
            z = z.real
        if z == 0:
            return mpf(0)
        if z == 1:
            raise PoleError("F is singular at z = 1")
        if abs(z) > 1:
            raise DomainError("F is only evaluated on the closed unit disc")
        value = mpmath.log(_xi_kernel(z, bits + 16))
    with mp.workprec(bits):
        return +value


# ---------------------------------------------------------------------------
# contour extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContourPlan:
    radius: mpf
    samples: int
    bits: int
    n_max: int
    policy: PrecisionPolicy = field(default=DEFAULT_POLICY, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "radius", mpf(self.radius))
        if not 0 < self.radius < 1:
            raise DomainError("radius must lie in (0, 1)")
        if self.n_max < 1:
            raise DomainError("n_max must be at least 1")
        M = self.samples
        if M < 1 or M & (M - 1):
            raise DomainError("sample count must be a power of two")
        if M < 8 * self.n_max:
            raise DomainError("need at least 8 samples per coefficient")
        if self.bits < self.required_bits(self.n_max, self.radius, self.policy):
            raise DomainError("precision too low to absorb the r^-n amplification")

    @property
    def aliasing_bits(self) -> float:
        """-log2 of r^(M - n_max), the size of the wrapped-around tail.

        Coefficients of F do not decay (its singularities sit on the unit
        circle), so c_n picks up roughly r^(M - n) from c_{n+M}.
        """
        return (self.samples - self.n_max) * math.log2(1 / float(self.radius))

    @staticmethod
    def required_bits(n_max: int, radius, policy: PrecisionPolicy = DEFAULT_POLICY) -> int:
        return policy.effective_bits(n_max) + math.ceil(n_max * math.log2(1 / float(radius)))

    @classmethod
    def for_order(cls, n_max: int, radius="0.9", samples: int | None = None,
                  bits: int | None = None, policy: PrecisionPolicy = DEFAULT_POLICY):
        if samples is None:
            samples = max(1024, 1 << (8 * n_max - 1).bit_length())
        need = cls.required_bits(n_max, radius, policy)
        return cls(mpf(radius), samples, max(bits or 0, need), n_max, policy)


def _unwrapped_log(values, start: int, max_step: float):
    """ln of every sample, with the argument continued around the circle.

    Continuation starts at index ``start`` (where the value is real positive)
    and walks forward; a step larger than ``max_step`` or a nonzero net
    winding is an error.
    """
    M = len(values)
    out = [None] * M
    arg = mpf(0)
    out[start] = mpmath.log(values[start])
    prev = values[start]
    for step in range(1, M + 1):
        i = (start + step) % M
        cur = values[i]
        delta = mpmath.arg(cur / prev)
        if abs(delta) > max_step:
            raise PrecisionError(
                f"phase jumps by {float(delta):.3f} between samples {i - 1} and {i}; "
                "increase the sample count"
            )
        arg += delta
        if i == start:
            if abs(arg) > 1:
                raise PrecisionError("F winds around the circle; a zero lies inside it")
            break
        out[i] = mpc(mpmath.log(abs(cur)), arg)
        prev = cur
    return out


def sample_f(plan: ContourPlan) -> list:
    """F at z_m = r exp(2 pi i m / M), m = 0..M-1, branch continued from z = -r."""
    M = plan.samples
    wp = plan.bits + 16
    with mp.workprec(wp):
        r = plan.radius
        values = [_xi_kernel(r * mpmath.expjpi(mpf(2 * m) / M), wp) for m in range(M)]
        start = M // 2
        if abs(mpmath.im(values[start])) > abs(values[start]) * mpf(2) ** (-plan.bits // 2) \
                or mpmath.re(values[start]) <= 0:
            raise PrecisionError("kernel is not real positive at z = -r")
        return _unwrapped_log(values, start, max_step=math.pi / 2)


def c_contour_raw(plan: ContourPlan) -> list:
    """Complex coefficients r^-n X_n / M, n = 0..n_max, with
    X_n = sum_m F_m exp(-2 pi i n m / M)."""
    M = plan.samples
    F = sample_f(plan)
    wp = plan.bits + 16
    with mp.workprec(wp):
        roots = [mpmath.expjpi(-mpf(2 * j) / M) for j in range(M)]
        out = []
        rn = mpf(1)
        for n in range(plan.n_max + 1):
            X = mpmath.fsum(F[m] * roots[(n * m) % M] for m in range(M))
            out.append(X / (M * rn))
            rn *= plan.radius
        return out


def c_contour(plan: ContourPlan, imag_tolerance=None) -> list:
    """c_1..c_{n_max}; fails if any imaginary residue exceeds
    ``2^(-bits/4) * max(1, |Re c_n|)``."""
    raw = c_contour_raw(plan)
    with mp.workprec(plan.bits):
        if imag_tolerance is None:
            imag_tolerance = mpf(2) ** (-plan.bits / 4)
        out = []
        for n in range(1, plan.n_max + 1):
            re, im = mpmath.re(raw[n]), mpmath.im(raw[n])
            if abs(im) > imag_tolerance * max(1, abs(re)):
                raise PrecisionError(f"c_{n} has imaginary residue {mpmath.nstr(im, 5)}")
            out.append(+re)
        return out


def max_imag_residue(raw) -> mpf:
    """max_n |Im c_n| / max(1, |Re c_n|) over n >= 1."""
    return max(abs(mpmath.im(c)) / max(1, abs(mpmath.re(c))) for c in raw[1:])


# ---------------------------------------------------------------------------
# zeros representation
# ---------------------------------------------------------------------------

def f_from_zeros(z, zeros: ZeroOrdinates, bits: int = 64) -> Approximation:
    """F(z) = ln(pi)/(2(1-z)) - ln 2 - ln Gamma[(3-2z)/(2(1-z))]
    + sum_rho ln[1 - 1/(rho (1-z))], truncated to the loaded zeros.

    Each zero is paired with its conjugate so the truncated sum stays real
    for real z.
    """
    if not zeros.ordinates:
        raise InsufficientDataError("no zeros loaded")
    wp = bits + 16
    with mp.workprec(wp):
        z = mpmath.mpmathify(z)
        if abs(z) >= 1:
            raise DomainError("need |z| < 1")
        one_minus = 1 - z
        value = (mpmath.log(mp.pi) / (2 * one_minus) - mp.ln2
                 - loggamma1p(1 / (2 * one_minus), wp))
        half = mpf(1) / 2
        for t in zeros.ordinates:
            rho = mpc(half, t)
            value += mpmath.log(1 - 1 / (rho * one_minus))
            value += mpmath.log(1 - 1 / (mpmath.conj(rho) * one_minus))
        if isinstance(value, mpc) and not isinstance(z, mpc):
            value = value.real
    with mp.workprec(bits):
        return Approximation(+value, len(zeros.ordinates),
                             f"truncated at K={len(zeros.ordinates)} zeros")
