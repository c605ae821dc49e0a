"""Terminant function T_nu(z) for large complex order.

T_nu(z) = e^(pi i nu) Gamma(nu)/(2 pi i) * Gamma(1-nu, z), evaluated on the
branch carried by the ray argument of z.  The incomplete gamma function is
computed from everywhere-convergent series at inflated working precision
(the series suffer cancellation of order e^|z|), with a downward recurrence
for nonpositive integer order.  The two asymptotic regimes of T_nu(z) near
optimal truncation (|nu| ~ |z|) are provided separately, including the
error-function smoothing form on the Stokes line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from .errors import (ConvergenceError, DomainError, IllConditionedError)
from .hp import PrecisionContext, RayComplex, gamma_complex, erf_hp, pow_ray

ARG_LIMIT_SLACK = 0.1
REGIME_EPSILON = 0.05


@dataclass(frozen=True)
class TerminantQuery:
    nu: mpc
    z: RayComplex

    def __post_init__(self):
        object.__setattr__(self, "nu", mpc(self.nu))
        if self.z.modulus <= 0:
            raise DomainError("terminant requires |z| > 0")
        if abs(float(self.z.argument)) > 2 * math.pi + ARG_LIMIT_SLACK:
            raise DomainError(
                "|arg z| > 2 pi: pre-reduce the query with reduce_arg")


@dataclass(frozen=True)
class SmoothingCoefficient:
    """Solution c(phi) of c^2/2 = 1 + i(phi - pi) - e^(i(phi - pi)).

    The branch is the one continuous in phi with c ~ phi - pi near phi = pi.
    """

    phi: float
    c: mpc


def _integer_order(alpha: mpc, ctx: PrecisionContext):
    """Classify alpha: exact integer, dangerously near-integer, or generic."""
    nearest = round(float(alpha.real))
    delta = abs(alpha - nearest)
    if delta == 0:
        return nearest
    if delta < mpf(10) ** (-ctx.digits // 2):
        raise IllConditionedError(
            f"order {alpha} is within 10^(-digits/2) of the integer "
            f"{nearest} but not on it; perturb s instead")
    return None


def _series_inflation(z: RayComplex, recurrence: bool) -> int:
    # the convergent series lose ~ (|z| + max(Re z, 0))/ln 10 digits to
    # cancellation; the downward recurrence loses a further ~ |z|/ln 10
    m = float(z.modulus)
    re_z = m * math.cos(float(z.argument))
    extra = (m + max(re_z, 0.0)) / math.log(10)
    if recurrence:
        extra += m / math.log(10)
    return int(math.ceil(extra)) + 10


def _exp_integral_e1(z: RayComplex, ctx: PrecisionContext, extra: int) -> mpc:
    """E_1(z) = -euler - log z + sum (-1)^(n+1) z^n/(n n!), continued branch."""
    with ctx.working(extra):
        eps = mpf(10) ** (-mp.dps + 5)
        zval = z.value()
        logz = mp.log(mpf(z.modulus)) + mpc(0, 1) * z.argument
        total = -mp.euler - logz
        term = mpc(1)
        peak = mpf(1)
        for n in range(1, 100000):
            term *= -zval / n
            contrib = -term / n
            total += contrib
            peak = max(peak, abs(contrib))
            if n > z.modulus and abs(contrib) < eps * peak:
                return total
        raise ConvergenceError("E_1 series did not converge")


def upper_gamma(alpha, z: RayComplex, ctx: PrecisionContext,
                extra_inflation: int = 0) -> mpc:
    """Incomplete gamma Gamma(alpha, z) on the branch set by z.argument."""
    alpha = mpc(alpha)
    if z.modulus <= 0:
        raise DomainError("upper_gamma requires |z| > 0")
    n = _integer_order(alpha, ctx)
    if n is not None and n >= 1:
        # Gamma(n, z) = (n-1)! e^(-z) sum_{j<n} z^j/j!   (entire in z)
        with ctx.working(10):
            zval = z.value()
            return mp.factorial(n - 1) * mp.exp(-zval) \
                * mp.fsum(zval ** j / mp.factorial(j) for j in range(n))
    if n is not None:
        # nonpositive integer order: start from Gamma(0, z) = E_1(z) and
        # recur downward Gamma(a-1, z) = (Gamma(a, z) - z^(a-1) e^(-z))/(a-1)
        extra = _series_inflation(z, recurrence=True) + extra_inflation
        g = _exp_integral_e1(z, ctx, extra)
        with ctx.working(extra):
            zval = z.value()
            emz = mp.exp(-zval)
            zp = 1 / zval  # z^(a-1) at a = 0
            a = 0
            while a > n:
                g = (g - zp * emz) / (a - 1)
                zp /= zval
                a -= 1
            return g
    # generic order: Gamma(alpha) - z^alpha sum (-z)^m / (m! (alpha + m))
    extra = _series_inflation(z, recurrence=False) + extra_inflation
    with ctx.working(extra):
        eps = mpf(10) ** (-mp.dps + 5)
        zval = z.value()
        zpow = pow_ray(z, alpha, ctx, extra=extra)
        term = mpc(1)
        total = 1 / alpha
        peak = abs(total)
        for m in range(1, 100000):
            term *= -zval / m
            contrib = term / (alpha + m)
            total += contrib
            peak = max(peak, abs(contrib))
            if m > z.modulus and abs(contrib) < eps * peak:
                break
        else:
            raise ConvergenceError("incomplete gamma series did not converge")
        return mp.gamma(alpha) - zpow * total


def terminant(q: TerminantQuery, ctx: PrecisionContext,
              extra_inflation: int = 0) -> mpc:
    """T_nu(z) = e^(pi i nu) Gamma(nu)/(2 pi i) Gamma(1 - nu, z)."""
    inc = upper_gamma(1 - q.nu, q.z, ctx, extra_inflation=extra_inflation)
    with ctx.working(10):
        return mp.expjpi(q.nu) * gamma_complex(q.nu, ctx) \
            / (2 * mp.pi * mpc(0, 1)) * inc


def reduce_arg(q: TerminantQuery, ctx: PrecisionContext | None = None):
    """Map the query argument into (-pi, pi] via the connection formula.

    Returns (reduced query, multiplier, offset) such that
    T(original) = multiplier * T(reduced) + offset.  The connection formula
    T_nu(w e^(-pi i)) = e^(2 pi i nu) (T_nu(w e^(pi i)) - 1) is applied once
    per full turn; identity coefficients when already in range.
    """
    if ctx is None:
        ctx = PrecisionContext()
    with ctx.working():
        phase = mp.exp(2 * mp.pi * mpc(0, 1) * q.nu)
        mult = mpc(1)
        off = mpc(0)
        arg = mpf(q.z.argument)
        while arg > mp.pi:
            # T(x) = e^(-2 pi i nu) T(x - 2 pi) + 1
            off += mult
            mult /= phase
            arg -= 2 * mp.pi
        while arg <= -mp.pi:
            # T(x) = e^(2 pi i nu) (T(x + 2 pi) - 1)
            mult *= phase
            off -= mult
            arg += 2 * mp.pi
        reduced = TerminantQuery(q.nu, RayComplex(q.z.modulus, arg))
        return reduced, mult, off


def c_of_phi(phi) -> SmoothingCoefficient:
    """Smoothing coefficient c(phi) on the branch with c ~ phi - pi at pi.

    Accepts a float or an mpf; an mpf is used at full precision, so a value
    lying exactly on the Stokes line yields c = 0 exactly.
    """
    if not (0 < float(phi) < 2 * math.pi):
        raise DomainError(f"phi must lie in (0, 2 pi), got {phi}")
    with mp.workdps(30):
        target_u = mpf(phi) - mp.pi
        if abs(target_u) < mpf("1e-8"):
            c = mpc(target_u) + mpc(0, 1) * target_u ** 2 / 6
            return SmoothingCoefficient(phi=float(phi), c=c)
        # continue the branch from phi = pi in small steps, Newton at each
        nsteps = max(1, int(math.ceil(abs(float(target_u)) / 0.05)))
        c = None
        for i in range(1, nsteps + 1):
            u = target_u * i / nsteps
            w = 1 + mpc(0, 1) * u - mp.expj(u)
            if c is None or abs(c) < mpf("1e-6"):
                c = mpc(u) + mpc(0, 1) * u ** 2 / 6  # Taylor seed
            for _ in range(60):
                step = (c * c / 2 - w) / c
                c = c - step
                if abs(step) < mpf("1e-20"):
                    break
            if abs(c * c / 2 - w) > mpf("1e-13"):
                raise ConvergenceError(
                    f"Newton iteration for c(phi) stalled at phi = {phi}")
        return SmoothingCoefficient(phi=float(phi), c=c)


def terminant_asymptotic(q: TerminantQuery, ctx: PrecisionContext):
    """Asymptotic T_nu(z) for |nu| ~ |z| >> 1; returns (value, regime).

    The smoothing (error-function) form is used on [eps, 2 pi - eps] and the
    algebraically decaying form on [-pi + eps, pi - eps]; in the overlap the
    smoothing form wins.
    """
    ratio = abs(q.nu) / q.z.modulus
    if not (0.5 <= ratio <= 2 and q.z.modulus >= 10):
        raise DomainError(
            "asymptotic form needs |nu|/|z| in [0.5, 2] and |z| >= 10")
    phi = float(q.z.argument)
    eps = REGIME_EPSILON
    if eps <= phi <= 2 * math.pi - eps:
        coeff = c_of_phi(q.z.argument)
        with ctx.working():
            val = mpf(1) / 2 + erf_hp(
                coeff.c * mp.sqrt(mpf(q.z.modulus) / 2), ctx) / 2
        return val, "smoothing"
    if -math.pi + eps <= phi <= math.pi - eps:
        with ctx.working():
            zval = q.z.value()
            num = -mpc(0, 1) * mp.exp(mpc(0, 1) * (mp.pi - q.z.argument) * q.nu)
            val = num / (1 + mp.exp(-mpc(0, 1) * q.z.argument)) \
                * mp.exp(-zval - q.z.modulus) / mp.sqrt(2 * mp.pi * q.z.modulus)
        return val, "away"
    raise DomainError(f"arg z = {phi} is outside both asymptotic regimes")
