import math

import numpy as np
import pytest

from orlicalc.monotone import (
    INF,
    MonotoneFn,
    cumulative_integral,
    default_grid,
    infinite_beyond_desc,
    integral_on_interval,
    power_log_desc,
    zero_on_interval_desc,
)

from helpers import dense_taus, random_step_monotone, scan_left_inverse, scan_right_inverse


def power_table(p, coef=1.0):
    t = default_grid(-6, 6)
    return MonotoneFn(t, coef * t ** p, power_log_desc(p), power_log_desc(p))


class TestEvaluation:
    def test_power_is_exact_everywhere(self):
        fn = power_table(2.7)
        x = np.geomspace(1e-9, 1e9, 400)  # includes both tails
        np.testing.assert_allclose(fn(x), x ** 2.7, rtol=1e-11)

    def test_boundary_values(self):
        fn = power_table(2.0)
        assert fn(0.0) == 0.0
        assert fn(INF) == INF

    def test_jump_to_inf_is_left_continuous(self):
        t = default_grid(-2, 2)
        v = np.where(t <= 1.0, 0.0, INF)
        fn = MonotoneFn(t, v, zero_on_interval_desc(1.0), infinite_beyond_desc(1.0))
        assert fn(1.0) == 0.0
        assert fn(1.0000001) == INF
        assert fn.t_inf == 1.0
        assert fn.t_zero == 1.0


class TestRightInverse:
    def test_square(self):
        fn = power_table(2.0)
        inv = fn.right_inverse()
        x = np.geomspace(1e-8, 1e8, 300)
        np.testing.assert_allclose(inv(x), np.sqrt(x), rtol=1e-11)

    def test_degenerate_step(self):
        t = default_grid(-2, 2)
        v = np.where(t <= 1.0, 0.0, INF)
        fn = MonotoneFn(t, v, zero_on_interval_desc(1.0), infinite_beyond_desc(1.0))
        inv = fn.right_inverse()
        for s in [0.0, 1e-3, 1.0, 17.0, 1e9]:
            assert inv(s) == pytest.approx(1.0)
        assert inv(INF) == INF

    def test_random_tables_match_sup_scan(self):
        rng = np.random.default_rng(7)
        taus = dense_taus(1e-5, 1e5)
        for _ in range(25):
            fn = random_step_monotone(rng)
            inv = fn.right_inverse()
            lo, hi = fn.v[0], fn.v[-1]
            for s in np.geomspace(max(lo * 0.5, 1e-6), hi * 2.0, 17):
                expect = scan_right_inverse(fn, s, taus)
                got = inv(float(s))
                if expect >= taus[-1] * 0.999:  # scan saturated at its top edge
                    assert got >= expect * 0.999
                elif expect == 0.0 or got == 0.0:
                    assert got <= taus[0] * 1.01 or expect <= taus[0] * 1.01
                else:
                    assert got == pytest.approx(expect, rel=2e-4)

    def test_composition_bound_on_grid(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            fn = random_step_monotone(rng)
            inv = fn.right_inverse()
            lhs = fn.t
            rhs = inv(fn(fn.t))
            assert np.all(lhs <= rhs * (1 + 1e-9))

    def test_value_of_inverse_stays_below_argument(self):
        # meaningful above the function's infimum; below it the supremum of
        # an empty set is 0 and the value there is the infimum itself
        rng = np.random.default_rng(12)
        for _ in range(15):
            fn = random_step_monotone(rng)
            inv = fn.right_inverse()
            s = np.geomspace(fn.v[0] * 1.001, fn.v[-1] * 2.0, 40)
            back = fn(inv(s))
            fin = np.isfinite(back)
            assert np.all(back[fin] <= s[fin] * (1 + 1e-9))


class TestLeftInverse:
    def test_cube(self):
        fn = power_table(3.0)
        inv = fn.left_inverse()
        x = np.geomspace(1e-6, 1e6, 200)
        np.testing.assert_allclose(inv(x), x ** (1.0 / 3.0), rtol=1e-11)

    def test_constant_plateau(self):
        t = default_grid(-3, 3)
        c = 4.0
        fn = MonotoneFn(t, np.full_like(t, c))
        inv = fn.left_inverse()
        assert inv(0.0) == 0.0
        assert inv(1.0) == 0.0
        assert inv(c) == 0.0
        assert inv(c * 1.0001) == INF
        assert inv(INF) == INF

    def test_random_tables_match_inf_scan(self):
        rng = np.random.default_rng(13)
        taus = dense_taus(1e-5, 1e5)
        for _ in range(25):
            fn = random_step_monotone(rng)
            inv = fn.left_inverse()
            lo, hi = fn.v[0], fn.v[-1]
            for s in np.geomspace(max(lo * 0.6, 1e-6), hi * 0.999, 17):
                expect = scan_left_inverse(fn, s, taus)
                got = inv(float(s))
                if math.isinf(expect) or math.isinf(got):
                    assert got >= taus[-1] * 0.99 or expect >= taus[-1] * 0.99
                elif expect <= taus[0] * 1.001:  # scan saturated at its bottom edge
                    assert got <= expect * 1.001
                else:
                    assert got == pytest.approx(expect, rel=2e-4)

    def test_composition_bound_on_grid(self):
        rng = np.random.default_rng(17)
        for _ in range(15):
            fn = random_step_monotone(rng)
            inv = fn.left_inverse()
            assert np.all(inv(fn(fn.t)) <= fn.t * (1 + 1e-9))


class TestCorrelative:
    def test_power_fixed_point(self):
        fn = power_table(1.7)
        cor = fn.correlative()
        x = np.geomspace(1e-6, 1e6, 100)
        np.testing.assert_allclose(cor(x), x ** 1.7, rtol=1e-11)

    def test_exp_substitution(self):
        t = default_grid(-4, 2)
        fn = MonotoneFn(t, np.expm1(t))
        cor = fn.correlative()
        # exact on the transformed grid
        np.testing.assert_allclose(cor(cor.t), 1.0 / np.expm1(1.0 / cor.t), rtol=1e-12)
        # interpolated where the function is not double-exponentially steep
        x = np.geomspace(0.5, 1e4, 60)
        np.testing.assert_allclose(cor(x), 1.0 / np.expm1(1.0 / x), rtol=1e-3)

    def test_involution_exact_on_grid(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            fn = random_step_monotone(rng)
            back = fn.correlative().correlative()
            np.testing.assert_allclose(back.t, fn.t, rtol=1e-14)
            np.testing.assert_allclose(back.v, fn.v, rtol=1e-14)


class TestIntegration:
    def test_cumulative_power(self):
        p = 3.0
        t = default_grid(-6, 6)
        deriv = MonotoneFn(t, p * t ** (p - 1.0), power_log_desc(p - 1.0), power_log_desc(p - 1.0))
        integ = cumulative_integral(deriv)
        x = np.geomspace(1e-6, 1e6, 80)
        np.testing.assert_allclose(integ(x), x ** p, rtol=1e-11)

    def test_weighted_interval_integral(self):
        fn = power_table(2.0)
        # integral of t^2 * t^-3 = log(hi/lo)
        got = integral_on_interval(fn, 0.5, 8.0, weight_exp=-3.0)
        assert got == pytest.approx(math.log(16.0), rel=1e-10)

    def test_divergent_head_is_inf(self):
        fn = power_table(1.0)
        integ = cumulative_integral(fn, weight_exp=-2.0)
        assert np.isinf(integ(1.0))
