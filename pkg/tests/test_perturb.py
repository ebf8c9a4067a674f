"""Tests for the nonlinear correction hierarchy."""
from fractions import Fraction
from math import factorial

import pytest

from kratzerqes.exactnum import BivariatePoly
from kratzerqes.magyari import build_split
from kratzerqes.perturb import (evaluate_series, left_null_pair,
                                order_residual, propagator_det, run_series)
from kratzerqes.zeroorder import real_roots, zero_coefficients


def _b_plus_g(cb, cg, den):
    return BivariatePoly({(1, 0): Fraction(cb, den), (0, 1): Fraction(cg, den)})


class TestLeftNullPair:
    def test_vectors_annihilate_q0(self):
        for N in range(0, 7):
            for root in real_roots(N):
                u0 = zero_coefficients(root)
                pair = left_null_pair(N, root, u0)
                dense = build_split(N).q0_dense(root.s.real, root.t.real)
                for v in (pair.v_plus, pair.v_minus):
                    for j in range(N + 1):
                        assert sum(v[i] * dense[i][j] for i in range(N + 2)) == 0

    def test_overlap_signs(self):
        for N in range(0, 7):
            for root in real_roots(N):
                u0 = zero_coefficients(root)
                pair = left_null_pair(N, root, u0)
                ju = list(u0.entries) + [0]
                ku = [0] + list(u0.entries)
                vp, vm = pair.v_plus, pair.v_minus
                assert sum(a * b for a, b in zip(vp, ju)) == pair.c_plus
                assert sum(a * b for a, b in zip(vp, ku)) == pair.c_plus
                assert sum(a * b for a, b in zip(vm, ju)) == pair.c_minus
                assert sum(a * b for a, b in zip(vm, ku)) == -pair.c_minus
                assert pair.c_plus and pair.c_minus


class TestPropagator:
    def test_det_is_factorial_both_gauges(self):
        for N in range(0, 9):
            for root in real_roots(N):
                assert propagator_det(N, root, "down") == factorial(N)
                assert propagator_det(N, root, "up") == factorial(N)


class TestSeries:
    def test_first_order_n1(self):
        ser = run_series(1, 0, 1)
        assert ser.s_corr[1] == _b_plus_g(1, 1, 3)
        assert ser.t_corr[1] == _b_plus_g(2, -1, 3)
        assert ser.u_corr[1][0] == BivariatePoly.zero()
        assert ser.u_corr[1][1] == -_b_plus_g(1, 1, 3)

    def test_branch_range_checked(self):
        with pytest.raises(ValueError):
            run_series(3, 2, 1)

    def test_order_residuals_vanish(self):
        for N, n in ((1, 0), (3, 1), (4, 2), (5, 0)):
            ser = run_series(N, n, 3)
            for k in range(4):
                assert all(not row for row in order_residual(ser, k))

    def test_gauge_covariance(self):
        for N, n in ((2, 0), (4, 1), (5, 2)):
            down = run_series(N, n, 3, "down")
            up = run_series(N, n, 3, "up")
            assert down.s_corr == up.s_corr
            assert down.t_corr == up.t_corr
            # at first order the right-hand sides coincide, so the two
            # gauge-fixed solutions differ by a kernel element, i.e. by a
            # (b,g)-polynomial multiple of u0
            u0 = down.u_corr[0]
            diff = [a - b for a, b in zip(down.u_corr[1], up.u_corr[1])]
            lead = next((i for i, e in enumerate(u0) if e), 0)
            ratio = diff[lead] / u0[lead].coeff(0, 0)
            assert diff == [ratio * e.coeff(0, 0) for e in u0]

    def test_gauge_fixing_rows(self):
        down = run_series(4, 0, 3, "down")
        up = run_series(4, 0, 3, "up")
        for k in range(1, 4):
            assert not down.u_corr[k][0]
            assert not up.u_corr[k][4]

    def test_evaluate_exact(self):
        ser = run_series(1, 0, 2)
        s, t, u = evaluate_series(ser, Fraction(1, 10), Fraction(1), Fraction(2))
        assert isinstance(s, Fraction) and isinstance(t, Fraction)
        # s = 1 + lam*(b+g)/3 + lam^2*(g^2+bg)/9 at b=1, g=2
        assert s == 1 + Fraction(1, 10) + Fraction(1, 150)
        # t = 1 + lam*(2b-g)/3 + lam^2*(bg+b^2)/9
        assert t == 1 + Fraction(1, 300)
        assert u[0] == 1
