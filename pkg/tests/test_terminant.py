import math

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from zetastokes.errors import DomainError, IllConditionedError
from zetastokes.hp import PrecisionContext, RayComplex
from zetastokes.terminant import (TerminantQuery, c_of_phi, reduce_arg,
                                  terminant, terminant_asymptotic,
                                  upper_gamma)


class TestQueryValidation:
    def test_rejects_zero_modulus(self):
        with pytest.raises(DomainError):
            TerminantQuery(mpc(3), RayComplex(mpf(0), mpf(0)))

    def test_rejects_excessive_argument(self):
        with pytest.raises(DomainError):
            TerminantQuery(mpc(3), RayComplex(mpf(1), mpf(7)))

    def test_accepts_two_turns(self):
        TerminantQuery(mpc(3), RayComplex(mpf(1), 2 * mp.pi))


class TestUpperGamma:
    @pytest.mark.parametrize("alpha,mod,arg", [
        (mpc("2.5"), 3, 0.4), (mpc("0.3", "0.7"), 8, -2.0),
        (mpc("-1.5"), 5, 2.5),
    ])
    def test_generic_order_matches_mpmath(self, alpha, mod, arg, ctx):
        with ctx.working(30):
            z = RayComplex(mpf(mod), mpf(str(arg)))
            ours = upper_gamma(alpha, z, ctx)
            ref = mp.gammainc(alpha, z.value())
            assert abs(ours - ref) <= ctx.tol() * (1 + abs(ref))

    def test_positive_integer_order(self, ctx):
        with ctx.working(10):
            z = RayComplex(mpf(2), mpf("0.3"))
            # Gamma(1, z) = e^(-z)
            assert abs(upper_gamma(1, z, ctx) - mp.exp(-z.value())) \
                < ctx.tol()
            # Gamma(3, z) = e^(-z)(z^2 + 2z + 2)
            zv = z.value()
            ref = mp.exp(-zv) * (zv ** 2 + 2 * zv + 2)
            assert abs(upper_gamma(3, z, ctx) - ref) <= ctx.tol() * abs(ref)

    def test_zero_order_is_e1(self, ctx):
        with ctx.working(10):
            z = RayComplex(mpf(1), mpf(0))
            assert abs(upper_gamma(0, z, ctx) - mp.e1(1)) < ctx.tol()

    def test_negative_integer_order_matches_mpmath(self, ctx):
        with ctx.working(30):
            z = RayComplex(mpf(4), mpf("0.7"))
            ours = upper_gamma(-3, z, ctx)
            ref = mp.gammainc(-3, z.value())
            assert abs(ours - ref) <= ctx.tol() * (1 + abs(ref))

    def test_off_principal_branch_continuation(self, ctx):
        # Gamma(alpha, z) off the principal sheet differs from the mpmath
        # principal value by the monodromy of the convergent series branch
        with ctx.working(30):
            alpha = mpc("0.5")
            mod = mpf(3)
            up = upper_gamma(alpha, RayComplex(mod, mpf("0.1") + 2 * mp.pi),
                             ctx)
            principal = upper_gamma(alpha, RayComplex(mod, mpf("0.1")), ctx)
            assert abs(up - principal) > mpf("1e-3")

    def test_near_integer_order_raises(self, ctx):
        # construct the perturbed order at working precision: at the
        # ambient 15 digits, 2 + 1e-40 would round to exactly 2
        with ctx.working():
            alpha = mpc(2) + mpf(10) ** -40
            with pytest.raises(IllConditionedError):
                upper_gamma(alpha, RayComplex(mpf(3), mpf(0)), ctx)


class TestTerminant:
    def test_recurrence_in_order(self, ctx):
        # from Gamma(1-nu, z): T_{nu+1}(z) relates to T_nu(z) through the
        # incomplete-gamma recurrence Gamma(a+1,z) = a Gamma(a,z) + z^a e^-z
        with ctx.working(20):
            nu = mpc("3.3", "0.2")
            z = RayComplex(mpf(6), mpf("1.1"))
            t_nu = terminant(TerminantQuery(nu, z), ctx)
            t_up = terminant(TerminantQuery(nu + 1, z), ctx)
            # T_{nu+1} = e^{pi i(nu+1)} Gamma(nu+1)/(2 pi i) Gamma(-nu, z)
            # and Gamma(1-nu, z) = -nu Gamma(-nu, z) + z^(-nu) e^(-z)
            zv = z.value()
            zpow = mp.exp(-nu * (mp.log(z.modulus) + mpc(0, 1) * z.argument))
            g_t = mp.expjpi(nu) * mp.gamma(nu) / (2 * mp.pi * mpc(0, 1))
            inc_t = t_nu / g_t                     # Gamma(1 - nu, z)
            g_u = mp.expjpi(nu + 1) * mp.gamma(nu + 1) / (2 * mp.pi * mpc(0, 1))
            inc_u = t_up / g_u                     # Gamma(-nu, z)
            resid = inc_t - (-nu * inc_u + zpow * mp.exp(-zv))
            assert abs(resid) <= ctx.tol() * (1 + abs(inc_t))

    def test_connection_formula(self, ctx):
        with ctx.working(20):
            nu = mpc("5.5", "0.3")
            for mod, base in [(8, 0.1), (20, -0.2)]:
                w = mpf(mod)
                lhs = terminant(
                    TerminantQuery(nu, RayComplex(w, mpf(base) - mp.pi)), ctx)
                t_plus = terminant(
                    TerminantQuery(nu, RayComplex(w, mpf(base) + mp.pi)), ctx)
                rhs = mp.exp(2 * mp.pi * mpc(0, 1) * nu) * (t_plus - 1)
                assert abs(lhs - rhs) <= ctx.tol() * (1 + abs(lhs))


class TestReduceArg:
    @given(st.floats(min_value=-2 * math.pi, max_value=2 * math.pi),
           st.floats(min_value=2.0, max_value=9.0))
    @settings(max_examples=15, deadline=None)
    def test_round_trip(self, arg, nu_re):
        ctx = PrecisionContext(digits=30)
        with ctx.working(20):
            q = TerminantQuery(mpc(nu_re, 0.3), RayComplex(mpf(5), mpf(arg)))
            reduced, mult, off = reduce_arg(q, ctx)
            assert -mp.pi < reduced.z.argument <= mp.pi + mpf("1e-25")
            direct = terminant(q, ctx)
            via = mult * terminant(reduced, ctx) + off
            assert abs(direct - via) <= ctx.tol() * (1 + abs(direct))

    def test_identity_when_principal(self, ctx):
        q = TerminantQuery(mpc(3.2), RayComplex(mpf(4), mp.pi / 2))
        reduced, mult, off = reduce_arg(q, ctx)
        assert reduced.z.argument == q.z.argument
        assert mult == 1 and off == 0

    def test_full_turn_below_structure(self, ctx):
        # arg z = pi/2 - 2 pi is below the strip: one upward application of
        # T(x) = e^(2 pi i nu)(T(x + 2 pi) - 1)
        with ctx.working(10):
            nu = mpc("2.3")
            q = TerminantQuery(
                nu, RayComplex(mpf(5), mp.pi / 2 - 2 * mp.pi))
            reduced, mult, off = reduce_arg(q, ctx)
            phase = mp.exp(2 * mp.pi * mpc(0, 1) * nu)
            assert abs(mult - phase) < ctx.tol()
            assert abs(off + phase) < ctx.tol()
            assert abs(reduced.z.argument - mp.pi / 2) < mpf("1e-25")

    def test_in_range_argument_untouched(self, ctx):
        # -0.98 pi already lies in (-pi, pi]: no reduction happens
        with ctx.working():
            q = TerminantQuery(
                mpc("2.3"), RayComplex(mpf(5), mpf("-0.98") * mp.pi))
            reduced, mult, off = reduce_arg(q, ctx)
            assert reduced.z.argument == q.z.argument
            assert mult == 1 and off == 0


class TestSmoothing:
    def test_c_at_pi_is_zero(self):
        assert abs(c_of_phi(math.pi).c) < 1e-7

    @pytest.mark.parametrize("phi", [0.3, 1.0, 2.5, 4.0, 5.9])
    def test_c_solves_equation(self, phi):
        c = c_of_phi(phi).c
        with mp.workdps(30):
            u = mpf(phi) - mp.pi
            resid = c * c / 2 - (1 + mpc(0, 1) * u - mp.expj(u))
            assert abs(resid) < mpf("1e-12")

    def test_on_line_value_is_half(self, ctx):
        # build the query at high precision so arg z carries a full-accuracy
        # pi; the smoothing coefficient then vanishes on the line
        with mp.workdps(40):
            q = TerminantQuery(mpc(30), RayComplex(mpf(30), mp.pi))
        val, regime = terminant_asymptotic(q, ctx)
        assert regime == "smoothing"
        assert abs(val - mpf(1) / 2) < mpf("1e-20")

    def test_away_regime_agrees_with_exact(self, ctx):
        # a negative argument falls outside the smoothing window, so the
        # algebraically decaying form is selected
        with ctx.working(20):
            nu = mpc(40)
            q = TerminantQuery(nu, RayComplex(mpf(40), mpf("-0.3")))
            approx, regime = terminant_asymptotic(q, ctx)
            assert regime == "away"
            exact = terminant(q, ctx)
            assert abs(exact - approx) <= abs(exact) * mpf("0.2")

    def test_smoothing_regime_agrees_with_exact(self, ctx):
        with ctx.working(20):
            q = TerminantQuery(mpc(60), RayComplex(mpf(60), mp.pi))
            approx, _ = terminant_asymptotic(q, ctx)
            exact = terminant(q, ctx)
            assert abs(exact - approx) < mpf("0.05")

    def test_rejects_out_of_regime(self, ctx):
        with pytest.raises(DomainError):
            terminant_asymptotic(
                TerminantQuery(mpc(5), RayComplex(mpf(40), mp.pi)), ctx)
