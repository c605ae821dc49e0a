"""Exponentially improved expansion machinery.

Truncation plans, the coefficients A_r(a), the per-scale remainders R_k
carried by terminant functions, and the exact reconstructions of Z(s,a)
both with per-scale truncations and with a single common truncation.  The
reconstructions are exact contracts: for any admissible plan they must
reproduce the direct-summation reference to working precision.

The k-sum over the algebraic series converges only algebraically, so its
tail is always folded in closed form through integer-base Hurwitz zeta
values (the reversed-order double sum); only the terminant remainders are
truncated, with a geometric tail bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from .errors import DomainError, TailBoundError
from .hp import (PrecisionContext, RayComplex, bernoulli_even, gamma_complex,
                 hurwitz_zeta_integer, pow_ray)
from .oracle import ZetaPoint
from .terminant import TerminantQuery, terminant


@dataclass(frozen=True)
class TruncationPlan:
    """Per-scale truncation indices for the a-series and the a'-series.

    Scales beyond k_max implicitly reuse the last index; the implicit
    N_0 = N'_0 = 0 anchors the reversed-order block sums.
    """

    nk: tuple
    nk_prime: tuple
    k_max: int

    def __post_init__(self):
        object.__setattr__(self, "nk", tuple(int(n) for n in self.nk))
        object.__setattr__(self, "nk_prime",
                           tuple(int(n) for n in self.nk_prime))
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if len(self.nk) != self.k_max or len(self.nk_prime) != self.k_max:
            raise ValueError("plan must carry exactly k_max indices per ray")
        if any(n < 1 for n in self.nk + self.nk_prime):
            raise ValueError("all truncation indices must be >= 1")

    @classmethod
    def constant(cls, n: int, k_max: int) -> "TruncationPlan":
        return cls((n,) * k_max, (n,) * k_max, k_max)


@dataclass(frozen=True)
class GeometryPack:
    """xi = 1 - 1/a and delta = arg xi, the offset of the second Stokes line."""

    xi: mpc
    delta: mpf

    @classmethod
    def from_ray(cls, a: RayComplex, ctx: PrecisionContext) -> "GeometryPack":
        with ctx.working():
            xi = 1 - 1 / a.value()
        return cls(xi=xi, delta=mp.arg(xi))


def a_r_coefficient(r: int, s, a: RayComplex, ctx: PrecisionContext) -> mpc:
    """A_r(a) = (-1)^r Gamma(2r+s+1) / (2 pi a)^(2r+s+1)."""
    if r < 0:
        raise DomainError("r must be >= 0")
    s = mpc(s)
    with ctx.working():
        g = gamma_complex(2 * r + s + 1, ctx)
        ray = RayComplex(2 * mp.pi * a.modulus, a.argument)
        denom = pow_ray(ray, 2 * r + s + 1, ctx)
        return (-1) ** r * g / denom


def optimal_truncation(k: int, s, a: RayComplex, ctx: PrecisionContext) -> int:
    """Least-term truncation index for the scale-k inner series.

    Inspects |Gamma(2r+s+1)| / (2 pi k |a|)^(2r+Re s+1) and returns the
    index of the smallest term (ties broken toward the smaller index);
    close to pi*k*|a| by Stirling.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if a.modulus < 1:
        raise DomainError("optimal truncation needs |a| >= 1")
    s = mpc(s)
    with mp.workdps(30):
        logscale = mp.log(2 * mp.pi * k * a.modulus)

        def logterm(r):
            return mp.re(mp.loggamma(2 * r + s + 1)) \
                - (2 * r + s.real + 1) * logscale

        cap = int(10 * math.pi * k * float(a.modulus)) + 50
        prev = logterm(0)
        for r in range(1, cap):
            cur = logterm(r)
            if cur >= prev:
                return r - 1 if r > 1 else 1
            prev = cur
    raise DomainError("no least term found (series unexpectedly decreasing)")


def remainder_rk(k: int, s, a: RayComplex, nk: int,
                 ctx: PrecisionContext) -> mpc:
    """Scale-k remainder R_k(a; N_k) built from two terminant evaluations.

    The terminant arguments 2 pi i k a and -2 pi i k a ride on the rays
    arg a + pi/2 and arg a - pi/2 respectively, never principal-reduced.
    """
    s = mpc(s)
    nu = 2 * nk + s
    with ctx.working(10):
        halfpi = mp.pi / 2
        mod = 2 * mp.pi * k * a.modulus
        t_plus = terminant(
            TerminantQuery(nu, RayComplex(mod, a.argument + halfpi)), ctx)
        t_minus = terminant(
            TerminantQuery(nu, RayComplex(mod, a.argument - halfpi)), ctx)
        e2 = mp.exp(2 * mp.pi * mpc(0, 1) * k * a.value())
        half_is = mp.expjpi(s / 2)
        return mp.expjpi(-s) * (e2 * half_is * t_plus
                                - t_minus / (e2 * half_is))


def _block_sum(s, a: RayComplex, nlist, ctx: PrecisionContext) -> mpc:
    """(1/pi) sum_m sum_{r=N_{m-1}}^{N_m - 1} A_r(a) zeta(2r+2, m).

    Reversed-order form of the algebraic double sum; with the plan extended
    constantly past its last entry this covers every scale k >= 1 exactly.
    Blocks for non-monotone plans are handled by splitting into the direct
    part (k <= K) plus a constant-extension tail, which needs no
    monotonicity.
    """
    s = mpc(s)
    K = len(nlist)
    with ctx.working(10):
        if all(nlist[i] <= nlist[i + 1] for i in range(K - 1)):
            total = mpc(0)
            prev = 0
            for m in range(1, K + 1):
                for r in range(prev, nlist[m - 1]):
                    total += a_r_coefficient(r, s, a, ctx) \
                        * hurwitz_zeta_integer(2 * r + 2, m, ctx)
                prev = nlist[m - 1]
            return total / mp.pi
        # non-monotone plan: direct scales k <= K, closed-form tail beyond
        total = mpc(0)
        for k in range(1, K + 1):
            kk = mpf(k) ** 2
            kpow = mpf(1)
            for r in range(nlist[k - 1]):
                kpow *= kk
                total += a_r_coefficient(r, s, a, ctx) / kpow
        for r in range(nlist[-1]):
            total += a_r_coefficient(r, s, a, ctx) \
                * hurwitz_zeta_integer(2 * r + 2, K + 1, ctx)
        return total / mp.pi


def _remainder_total(s, a: RayComplex, nlist, ctx: PrecisionContext,
                     scale) -> mpc:
    """sum_{k>=1} k^(s-1) R_k(a; N_k) with constant extension past the plan.

    For a fixed index N the terms decay only like k^(-1-2N), so the tail is
    never summed term by term: beyond the plan each remainder is converted
    to a near-optimal index (where it decays like e^(-2 pi k |Im a|)) and
    the difference is compensated exactly by closed-form zeta(2r+2, k)
    blocks (the per-scale truncation invariance of the expansion).  The
    conversion stops once the dropped tail -- estimated by its first
    omitted series term summed in closed form plus the exponential bound --
    clears one percent of the tolerance budget.
    """
    s = mpc(s)
    K = len(nlist)
    with ctx.working(10):
        im_abs = a.modulus * abs(mp.sin(a.argument))
        if im_abs <= ctx.tol():
            raise TailBoundError(
                "remainder tail needs Im(a) != 0 to decay",
                required_k_max=None)
        budget = ctx.tol() * scale / 100
        total = mpc(0)
        for k in range(1, K + 1):
            total += mp.exp((s - 1) * mp.log(k)) \
                * remainder_rk(k, s, a, nlist[k - 1], ctx)
        comp = mpc(0)
        prev = nlist[-1]
        k = K
        while True:
            alg_est = abs(a_r_coefficient(prev, s, a, ctx)) \
                * hurwitz_zeta_integer(2 * prev + 2, k + 1, ctx) / mp.pi
            exp_est = 2 * mpf(k + 1) ** max(float(s.real) - 1, 0.0) \
                * mp.exp(-2 * mp.pi * (k + 1) * im_abs)
            if alg_est + exp_est < budget:
                break
            k += 1
            if k > K + 300:
                raise TailBoundError(
                    "remainder tail did not clear the budget within 300 "
                    "extension scales", required_k_max=None)
            n = max(prev, optimal_truncation(k, s, a, ctx))
            total += mp.exp((s - 1) * mp.log(k)) \
                * remainder_rk(k, s, a, n, ctx)
            for r in range(prev, n):
                comp += a_r_coefficient(r, s, a, ctx) \
                    * hurwitz_zeta_integer(2 * r + 2, k, ctx)
            prev = n
        return total + comp / mp.pi


def z_improved(s, a: RayComplex, plan: TruncationPlan,
               ctx: PrecisionContext) -> mpc:
    """Z(s,a) from the exponentially improved expansion; exact for any plan."""
    s = mpc(s)
    if abs(s.imag) < ctx.tol():
        nearest = round(float(s.real))
        if nearest <= -1 and abs(s - nearest) < ctx.tol():
            raise DomainError("s must not be -1, -2, ...")
    with ctx.working(10):
        algebraic = _block_sum(s, a, plan.nk, ctx)
        rsum = _remainder_total(s, a, plan.nk, ctx,
                                scale=abs(algebraic) + ctx.tol())
        return (2 * mp.pi) ** s * (algebraic + rsum)


def z_equal_truncation(s, a: RayComplex, n: int, k_max: int,
                       ctx: PrecisionContext) -> mpc:
    """Z(s,a) via the common-truncation form: truncated Poincare series
    through B_{2N} plus (2 pi)^s sum_k k^(s-1) R_k(a; N)."""
    s = mpc(s)
    if n < 1:
        raise DomainError("truncation index must be >= 1")
    with ctx.working(10):
        poincare = mpc(0)
        for r in range(1, n + 1):
            b = bernoulli_even(r)
            poincare += (mpf(b.numerator) / b.denominator) \
                / mp.factorial(2 * r) \
                * gamma_complex(2 * r + s - 1, ctx) \
                * pow_ray(a, -(2 * r + s - 1), ctx)
        rsum = _remainder_total(s, a, (n,) * k_max, ctx,
                                scale=abs(poincare) + ctx.tol())
        return poincare + (2 * mp.pi) ** s * rsum


def script_r_k(k: int, point: ZetaPoint, nk: int, nk_prime: int,
               ctx: PrecisionContext) -> mpc:
    """Combined remainder for Ftilde, composed from the two R_k values:
    e^(i pi s/2) R_k(a; N_k) + e^(-i pi s/2) R_k(a'; N'_k)."""
    s = point.s
    with ctx.working(10):
        half_is = mp.expjpi(s / 2)
        return half_is * remainder_rk(k, s, point.a, nk, ctx) \
            + remainder_rk(k, s, point.a_prime, nk_prime, ctx) / half_is


def rearranged_double_sum(point: ZetaPoint, plan: TruncationPlan,
                          ctx: PrecisionContext, which: str = "a") -> mpc:
    """Reversed-order algebraic double sum for the a- or a'-part of Ftilde.

    Equals (1/pi) sum_k sum_{r < N_k} A_r / k^(2r+2) with the plan extended
    constantly past k_max; requires a nondecreasing plan.
    """
    if which == "a":
        ray, nlist = point.a, plan.nk
    elif which == "aPrime":
        ray, nlist = point.a_prime, plan.nk_prime
    else:
        raise ValueError(f"which must be 'a' or 'aPrime', got {which!r}")
    if any(nlist[i] > nlist[i + 1] for i in range(len(nlist) - 1)):
        raise DomainError("reversed-order blocks need a nondecreasing plan")
    return _block_sum(point.s, ray, nlist, ctx)


def leading_blocks(s, a: RayComplex, nlist, ctx: PrecisionContext) -> mpc:
    """(1/pi) sum_{m<=len(nlist)} sum_{r=N_{m-1}}^{N_m-1} A_r(a) zeta(2r+2, m).

    The first blocks of the reversed-order double sum only, without the
    constant-extension tail; this is the piece peeled off when a Stokes
    multiplier is extracted.  Requires a nondecreasing index list.
    """
    s = mpc(s)
    if any(nlist[i] > nlist[i + 1] for i in range(len(nlist) - 1)):
        raise DomainError("leading blocks need a nondecreasing index list")
    with ctx.working(10):
        total = mpc(0)
        prev = 0
        for m in range(1, len(nlist) + 1):
            for r in range(prev, nlist[m - 1]):
                total += a_r_coefficient(r, s, a, ctx) \
                    * hurwitz_zeta_integer(2 * r + 2, m, ctx)
            prev = nlist[m - 1]
        return total / mp.pi


def default_k_max(s, a: RayComplex, ctx: PrecisionContext,
                  n_min: int = 1) -> int:
    """Smallest scale cutoff whose remainder tail clears the tolerance,
    and at least n_min + 2 for multiplier work."""
    s = mpc(s)
    with ctx.working():
        im_a = a.modulus * mp.sin(a.argument)
        if im_a <= 0:
            raise DomainError("default_k_max needs Im(a) > 0")
        k = max(1, n_min + 2)
        while k < 10000:
            bound = 2 * mpf(k + 1) ** max(float(s.real) - 1, 0.0) \
                * mp.exp(-2 * mp.pi * (k + 1) * im_a)
            if bound < ctx.tol() * mpf(10) ** (-8):
                return k
            k += 1
    raise DomainError("no admissible k_max below 10000")


def optimal_plan(s, point: ZetaPoint, k_max: int,
                 ctx: PrecisionContext) -> TruncationPlan:
    """Plan with least-term indices for every scale up to k_max, both rays."""
    nk = tuple(optimal_truncation(k, s, point.a, ctx)
               for k in range(1, k_max + 1))
    nkp = tuple(optimal_truncation(k, s, point.a_prime, ctx)
                for k in range(1, k_max + 1))
    return TruncationPlan(nk, nkp, k_max)
