import pytest
from mpmath import mp, mpf, mpc

from zetastokes.errors import DomainError
from zetastokes.expansion import (GeometryPack, TruncationPlan,
                                  a_r_coefficient, default_k_max,
                                  leading_blocks, optimal_plan,
                                  optimal_truncation, remainder_rk,
                                  script_r_k, z_equal_truncation, z_improved)
from zetastokes.hp import RayComplex, hurwitz_zeta_integer
from zetastokes.oracle import ZetaPoint, z_reference


def _ray(mod, arg_over_pi, ctx):
    with ctx.working(10):
        return RayComplex(mpf(mod), mpf(str(arg_over_pi)) * mp.pi)


class TestTruncationPlan:
    def test_constant(self):
        p = TruncationPlan.constant(5, 3)
        assert p.nk == (5, 5, 5) and p.nk_prime == (5, 5, 5)

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            TruncationPlan((1, 2), (1, 2, 3), 3)

    def test_rejects_zero_index(self):
        with pytest.raises(ValueError):
            TruncationPlan((0,), (1,), 1)


class TestGeometryPack:
    def test_xi_and_delta(self, ctx):
        a = _ray(6, 0.5, ctx)
        g = GeometryPack.from_ray(a, ctx)
        with ctx.working():
            assert abs(g.xi - (1 - 1 / a.value())) < ctx.tol() * 10
            assert 0 < g.delta < mp.pi / 2


class TestCoefficients:
    def test_matches_definition(self, ctx):
        a = _ray(6, 0.45, ctx)
        with ctx.working(10):
            s = mpc(3)
            got = a_r_coefficient(2, s, a, ctx)
            want = mp.gamma(2 * 2 + s + 1) / (2 * mp.pi * a.value()) ** (
                2 * 2 + s + 1)
            assert abs(got - want) <= ctx.tol() * abs(want)

    def test_rejects_negative_r(self, ctx):
        with pytest.raises(DomainError):
            a_r_coefficient(-1, mpc(3), _ray(6, 0.5, ctx), ctx)


class TestOptimalTruncation:
    def test_caption_pins(self, ctx):
        # least-term indices match the published sweep configurations
        a6 = _ray(6, 0.5, ctx)
        assert optimal_truncation(1, mpc(3), a6, ctx) == 17
        a6s2 = _ray(6, 0.5, ctx)
        assert optimal_truncation(1, mpc(2), a6s2, ctx) == 18
        assert optimal_truncation(2, mpc(2), a6s2, ctx) == 36

    def test_scales_like_pi_k_abs_a(self, ctx):
        a = _ray(10, 0.5, ctx)
        n1 = optimal_truncation(1, mpc(3), a, ctx)
        n3 = optimal_truncation(3, mpc(3), a, ctx)
        import math
        assert abs(n1 - math.pi * 10) < 4
        assert abs(n3 - 3 * math.pi * 10) < 6

    def test_rejects_small_modulus(self, ctx):
        with pytest.raises(DomainError):
            optimal_truncation(1, mpc(3), _ray(0.5, 0.5, ctx), ctx)


class TestRemainders:
    def test_magnitude_at_optimal_index(self, ctx):
        # near-optimal remainders scale like the subdominant exponential
        a = _ray(6, 0.45, ctx)
        s = mpc(3)
        with ctx.working(10):
            im_a = 6 * mp.sin(mpf("0.45") * mp.pi)
            for k in (1, 2):
                n = optimal_truncation(k, s, a, ctx)
                r = remainder_rk(k, s, a, n, ctx)
                target = mp.exp(-2 * mp.pi * k * im_a)
                assert target / 1000 < abs(r) < target * 1000

    def test_truncation_invariance(self, ctx):
        # raising N_k by one moves exactly one closed-form block between the
        # algebraic sum and the remainder: k^(s-1)(R(N) - R(N+1)) equals
        # A_N(a) zeta(2N+2, k)-free term A_N(a)/k^(2N+2) / pi
        a = _ray(6, 0.45, ctx)
        s = mpc(3)
        with ctx.working(10):
            k, n = 2, 6
            diff = remainder_rk(k, s, a, n, ctx) \
                - remainder_rk(k, s, a, n + 1, ctx)
            moved = a_r_coefficient(n, s, a, ctx) \
                / (mp.pi * mpf(k) ** (2 * n + 2)) / mp.exp((s - 1) * mp.log(k))
            assert abs(diff - moved) <= ctx.tol() * (abs(moved) + ctx.tol())


class TestExactness:
    @pytest.mark.parametrize("plan", [
        TruncationPlan.constant(1, 3),
        TruncationPlan.constant(9, 3),
        TruncationPlan((2, 7, 11), (2, 7, 11), 3),
    ])
    def test_plan_independence(self, plan, ctx):
        a = _ray(6, 0.45, ctx)
        s = mpc(3)
        with ctx.working(10):
            ref = z_reference(s, a, ctx)
            got = z_improved(s, a, plan, ctx)
            assert abs(got - ref) <= ctx.tol() * abs(ref)

    def test_complex_s(self, ctx):
        a = _ray(8, 0.52, ctx)
        s = mpc(2, 0.5)
        with ctx.working(10):
            ref = z_reference(s, a, ctx)
            got = z_improved(s, a, TruncationPlan.constant(3, 2), ctx)
            assert abs(got - ref) <= ctx.tol() * abs(ref)

    def test_common_truncation_form(self, ctx):
        a = _ray(6, 0.45, ctx)
        s = mpc(3)
        with ctx.working(10):
            ref = z_reference(s, a, ctx)
            got = z_equal_truncation(s, a, 5, 3, ctx)
            assert abs(got - ref) <= ctx.tol() * abs(ref)


class TestBlocks:
    def test_leading_blocks_requires_monotone(self, ctx):
        a = _ray(6, 0.45, ctx)
        with pytest.raises(DomainError):
            leading_blocks(mpc(3), a, (5, 3), ctx)

    def test_blocks_match_direct_double_sum(self, ctx):
        # for one scale: (1/pi) sum_{r<N} A_r zeta(2r+2, 1)
        a = _ray(6, 0.45, ctx)
        s = mpc(3)
        with ctx.working(10):
            got = leading_blocks(s, a, (4,), ctx)
            want = sum(a_r_coefficient(r, s, a, ctx)
                       * hurwitz_zeta_integer(2 * r + 2, 1, ctx)
                       for r in range(4)) / mp.pi
            assert abs(got - want) <= ctx.tol() * (1 + abs(want))


class TestPlans:
    def test_optimal_plan_monotone(self, ctx):
        a = _ray(6, 0.45, ctx)
        pt = ZetaPoint.create(mpc(3), a, ctx)
        plan = optimal_plan(mpc(3), pt, 3, ctx)
        assert plan.nk[0] < plan.nk[1] < plan.nk[2]
        assert plan.nk_prime[0] < plan.nk_prime[1] < plan.nk_prime[2]

    def test_default_k_max_floor(self, ctx):
        a = _ray(6, 0.45, ctx)
        assert default_k_max(mpc(3), a, ctx, n_min=4) >= 6


class TestScriptR:
    def test_composition(self, ctx):
        a = _ray(6, 0.5, ctx)
        pt = ZetaPoint.create(mpc(3), a, ctx)
        with ctx.working(10):
            combined = script_r_k(1, pt, 17, 17, ctx)
            half_is = mp.expjpi(pt.s / 2)
            parts = half_is * remainder_rk(1, pt.s, pt.a, 17, ctx) \
                + remainder_rk(1, pt.s, pt.a_prime, 17, ctx) / half_is
            assert abs(combined - parts) <= ctx.tol() * (1 + abs(combined))

    def test_order_one_on_the_line(self, ctx):
        # |combined remainder x e^(-2 pi i a)| is O(1) in the transition
        a = _ray(6, 0.5, ctx)
        pt = ZetaPoint.create(mpc(3), a, ctx)
        with ctx.working(10):
            r1 = script_r_k(1, pt, 17, 17, ctx)
            scaled = abs(r1 * mp.exp(-2 * mp.pi * mpc(0, 1) * pt.a.value()))
            assert 0.1 < float(scaled) < 1.2
