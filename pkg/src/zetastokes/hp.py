"""Arbitrary-precision foundation.

Precision contexts, complex numbers carried in polar form with a
*continuous* (unreduced) argument, exact Bernoulli numbers, and the base
special functions every other module consumes.  All heavy lifting is done
with mpmath; values are computed at ``digits + guard`` decimal digits (plus
any operation-specific inflation) and returned as mpmath numbers.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, mpc
import mpmath

from .errors import DomainError, PoleError

HPComplex = mpc  # alias: high-precision complex values are mpmath mpc


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits plus guard digits.

    ``tol()`` is the derived comparison tolerance 10^(-digits+10) used by
    all identity checks in the package.
    """

    digits: int = 60
    guard: int = 20

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError(f"digits must be >= 30, got {self.digits}")
        if self.guard < 10:
            raise ValueError(f"guard must be >= 10, got {self.guard}")

    def tol(self) -> mpf:
        with mp.workdps(self.digits + self.guard):
            return mpf(10) ** (-self.digits + 10)

    def working(self, extra: int = 0):
        """Context manager setting the working decimal precision."""
        return mp.workdps(self.digits + self.guard + extra)


@dataclass(frozen=True)
class RayComplex:
    """A complex number as (modulus, continuous argument).

    The argument is *not* reduced mod 2pi: two rays whose arguments differ
    by 2pi have equal ``value()`` but are distinct data.  This makes branch
    choices (a*exp(-i*pi), arguments beyond pi, ...) explicit.
    """

    modulus: mpf
    argument: mpf

    def value(self) -> mpc:
        with mp.extraprec(10):
            return mpc(self.modulus) * mp.expj(self.argument)

    def rotate(self, phi) -> "RayComplex":
        return RayComplex(self.modulus, mpf(self.argument) + phi)

    def scale(self, factor) -> "RayComplex":
        """Multiply the modulus by a positive real factor."""
        f = mpf(factor)
        if f <= 0:
            raise DomainError("scale factor must be positive")
        return RayComplex(self.modulus * f, self.argument)

    @classmethod
    def from_value(cls, z, argument=None) -> "RayComplex":
        """Build a ray from a complex value, principal argument by default."""
        z = mpc(z)
        if argument is None:
            argument = mp.arg(z)
        return cls(abs(z), mpf(argument))

    @classmethod
    def from_polar(cls, modulus, argument) -> "RayComplex":
        return cls(mpf(modulus), mpf(argument))


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact rationals, cached)

_bernoulli_cache = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m in terms of B_0..B_{m-1}
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            if m % 2 == 1:
                _bernoulli_cache.append(Fraction(0))
                continue
            acc = sum(
                Fraction(math.comb(m + 1, j)) * _bernoulli_cache[j]
                for j in range(m)
            )
            _bernoulli_cache.append(-acc / (m + 1))


def bernoulli_even(k: int) -> Fraction:
    """Exact even-order Bernoulli number B_{2k}, k >= 1."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _extend_bernoulli(2 * k)
    return _bernoulli_cache[2 * k]


def zeta_even(m: int, ctx: PrecisionContext) -> mpf:
    """zeta(m) for even m >= 2, from B_m = 2(-1)^(m/2-1) zeta(m) m! / (2 pi)^m."""
    if m < 2 or m % 2 != 0:
        raise DomainError(f"m must be even and >= 2, got {m}")
    r = m // 2
    b = bernoulli_even(r)
    with ctx.working():
        sign = 1 if (r - 1) % 2 == 0 else -1
        val = sign * mpf(b.numerator) / b.denominator
        return val * (2 * mp.pi) ** m / (2 * mp.factorial(m))


def hurwitz_zeta_integer(m: int, base: int, ctx: PrecisionContext) -> mpf:
    """zeta(m, base) = sum_{j >= base} j^(-m) for even m >= 2, base >= 1.

    Evaluated with full *relative* accuracy even when the value is far
    below 1 (large m): never computed as zeta(m) minus a partial sum,
    which loses every significant digit once base^(-m) << 1.
    """
    if base < 1:
        raise DomainError(f"base must be >= 1, got {base}")
    if m < 2 or m % 2 != 0:
        raise DomainError(f"m must be even and >= 2, got {m}")
    if base == 1:
        return zeta_even(m, ctx)
    with ctx.working(10):
        return mp.zeta(m, mpf(base))


def gamma_complex(z, ctx: PrecisionContext) -> mpc:
    """Gamma(z) for complex z away from the nonpositive-integer poles."""
    z = mpc(z)
    if z.real < 0.5:
        nearest = round(z.real)
        if nearest <= 0:
            dist = abs(z - nearest)
            if dist < ctx.tol():
                raise PoleError(
                    f"Gamma evaluated within tolerance of pole at {nearest}",
                    distance=dist,
                )
    with ctx.working():
        return mp.gamma(z)


def erf_hp(z, ctx: PrecisionContext) -> mpc:
    """erf(z) for real or complex z at context precision."""
    with ctx.working():
        return mp.erf(mpc(z))


def pow_ray(base: RayComplex, exponent, ctx: PrecisionContext,
            extra: int = 0) -> mpc:
    """base**exponent using the ray's carried argument.

    Never applies a principal-value reduction: exp(exponent * (log modulus
    + i * argument)).
    """
    if base.modulus <= 0:
        raise DomainError("pow_ray requires a strictly positive modulus")
    with ctx.working(extra):
        logz = mp.log(mpf(base.modulus)) + mpc(0, 1) * base.argument
        return mp.exp(mpc(exponent) * logz)
