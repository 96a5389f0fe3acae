from fractions import Fraction

import pytest

from dp5a2.dirichlet import (
    K_CUT,
    K_MAIN,
    ZETA2_INV,
    ZetaRational,
    delta_k,
    e_star_sum,
    euler_reference_factor,
    g_k_zero_factor,
    local_factor,
    local_factor_truncated,
    predicted_main_term,
    summatory_M,
    theta,
    theta0,
    theta2a,
    theta2b,
)


class TestZetaRational:
    def test_arithmetic(self):
        a = ZetaRational(Fraction(1, 2), 1)
        b = ZetaRational(Fraction(1, 3), 1)
        assert (a + b).coeff == Fraction(5, 6)
        assert (a - b).coeff == Fraction(1, 6)
        assert (a * b) == ZetaRational(Fraction(1, 6), 2)
        assert (a / 2).coeff == Fraction(1, 4)
        assert float(ZetaRational(Fraction(1), 1)) == pytest.approx(ZETA2_INV)

    def test_zero_normalizes_power(self):
        z = ZetaRational(Fraction(0), 5)
        assert z.zpow == 0
        assert not z
        assert (z + ZetaRational(Fraction(2), 3)).zpow == 3

    def test_mixed_powers_rejected(self):
        with pytest.raises(ValueError):
            ZetaRational(Fraction(1), 1) + ZetaRational(Fraction(1), 2)


class TestTheta:
    def test_theta0_examples(self):
        assert theta0((1, 1, 1, 1)) == 1
        # eta3 even, eta2 odd: the k23 = 2 term cancels half
        assert theta0((1, 1, 2, 1)) == 0
        assert theta0((2, 1, 2, 1)) == Fraction(1, 2)

    def test_theta_unit(self):
        t = theta((1, 1, 1, 1))
        assert t == ZetaRational(Fraction(1), 1)
        assert float(t) == pytest.approx(ZETA2_INV)

    def test_theta_vanishes_without_pairwise_coprimality(self):
        assert not theta((2, 2, 1, 1))
        assert not theta((2, 1, 1, 2))
        assert not theta((1, 3, 1, 3))

    def test_routes_agree_small_box(self):
        from math import gcd

        for e1 in range(1, 5):
            for e2 in range(1, 5):
                for e3 in range(1, 5):
                    for e4 in range(1, 5):
                        eta = (e1, e2, e3, e4)
                        a = theta2a(eta)
                        b = theta2b(eta)
                        assert a == b
                        if gcd(e1, e2) == gcd(e1, e4) == gcd(e2, e4) == 1:
                            assert theta(eta) == a
                        else:
                            assert not theta(eta)


class TestSummatory:
    def test_delta_unit(self):
        assert delta_k(K_MAIN, 1) == ZetaRational(Fraction(1), 1)

    def test_delta_four(self):
        # n = 4 admits eta = (1,1,1,2) with base 2^2 = 4; theta halves
        assert delta_k(K_MAIN, 4) == ZetaRational(Fraction(1, 2), 1)

    def test_routes_agree(self):
        a = summatory_M(K_MAIN, 60, via="eta")
        b = summatory_M(K_MAIN, 60, via="n")
        assert a == b
        assert a.coeff == Fraction(8573, 2520)
        c = summatory_M(K_CUT, 60, via="eta")
        assert c == summatory_M(K_CUT, 60, via="n")
        assert c.coeff == Fraction(2963, 1260)

    def test_float_route_tracks_exact(self):
        for t in (10, 100, 400):
            ex = summatory_M(K_MAIN, t)
            fl = summatory_M(K_MAIN, t, exact=False)
            assert fl == pytest.approx(float(ex), rel=1e-12)

    def test_shell_is_set_difference(self):
        for B in (1, 7, 50, 300):
            shell = e_star_sum(B)
            diff = summatory_M(K_MAIN, B) - summatory_M(K_CUT, B)
            assert shell == diff

    def test_main_term_values(self):
        mt = predicted_main_term(10**3, 1.0)
        assert mt.value == pytest.approx(mt.omega * 10**3 * (mt.m_main - mt.m_cut))
        assert mt.m_main > mt.m_cut > 0
        # at B = 1 only eta = (1,1,1,1) is in either sublevel set, so the
        # shell is empty and the prediction degenerates to 0
        assert predicted_main_term(1, 2.5).value == 0.0
        with pytest.raises(ValueError):
            predicted_main_term(0, 1.0)

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            summatory_M(K_MAIN, 10, via="divisor")


class TestLocalFactors:
    def test_zero_identity_exact(self):
        for p in (2, 3, 5, 7, 101):
            for k in (K_MAIN, K_CUT):
                assert g_k_zero_factor(k, p) == euler_reference_factor(p)

    def test_pole_guard(self):
        with pytest.raises(ValueError):
            local_factor(K_MAIN, 2, 0 - Fraction(1, 2))

    def test_exact_vs_float(self):
        for p in (2, 3):
            ex = local_factor(K_MAIN, p, 1)
            fl = local_factor(K_MAIN, p, 1.0)
            assert float(ex) == pytest.approx(fl, rel=1e-13)

    def test_truncated_oracle_matches_closed_form(self):
        for p in (2, 3, 5):
            for s in (Fraction(1, 2), Fraction(1)):
                val, tail = local_factor_truncated(K_MAIN, p, s, max_exp=14)
                closed = float(local_factor(K_MAIN, p, s))
                assert abs(val - closed) <= tail + 1e-9 * abs(closed)
