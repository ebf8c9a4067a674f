"""Tests for the strong-core exact solution layer."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kratzerqes.exactnum import HalfEisenstein, QSqrt3, UniPoly
from kratzerqes.magyari import build_split
from kratzerqes.zeroorder import (NotARootError, RootPair,
                                  closed_form_wavefunction, enumerate_roots,
                                  is_root, kernel_vector, pascal_ground,
                                  real_root_scan, real_roots, secular_dets,
                                  zero_coefficients)


class TestRootMembership:
    def test_diagonal_values(self):
        for N in range(0, 10):
            for n in range(N // 2 + 1):
                assert is_root(N, Fraction(N - 3 * n), Fraction(N - 3 * n))

    def test_non_roots(self):
        assert not is_root(3, Fraction(1), Fraction(1))
        assert not is_root(2, Fraction(2), Fraction(-1))
        assert not is_root(5, Fraction(1, 2), Fraction(1, 2))

    @given(st.integers(1, 5), st.integers(-6, 6), st.integers(-3, 3),
           st.integers(-6, 6), st.integers(-3, 3))
    @settings(max_examples=60, deadline=None)
    def test_root_implies_singular_blocks(self, N, ps, hs, pt, ht):
        s = HalfEisenstein(ps, ps + 2 * hs)
        t = HalfEisenstein(pt, pt + 2 * ht)
        if is_root(N, s, t):
            d1, d2 = secular_dets(N, s, t)
            assert not d1 and not d2


class TestEnumeration:
    def test_counts(self):
        assert [len(enumerate_roots(N)) for N in range(1, 6)] == [3, 6, 10, 15, 21]

    def test_roots_close_under_conjugation(self):
        for N in (2, 3, 4):
            roots = {(r.s, r.t) for r in enumerate_roots(N)}
            assert {(s.conjugate(), t.conjugate()) for s, t in roots} == roots

    def test_kernel_vector_solves_full_system(self):
        for N in (1, 2, 3):
            for r in enumerate_roots(N):
                u = kernel_vector(r)
                H = build_split(N)
                dense = H.q0_dense(QSqrt3.of(r.s), QSqrt3.of(r.t))
                for i in range(N + 2):
                    row = sum((QSqrt3.of(dense[i][j]) * u[j]
                               for j in range(N + 1)), QSqrt3.of(0))
                    assert not row

    def test_kernel_vector_rejects_non_root(self):
        bogus = RootPair(s=HalfEisenstein.from_int(1),
                         t=HalfEisenstein.from_int(1), N=3)
        with pytest.raises(NotARootError):
            kernel_vector(bogus)


class TestRealFamily:
    def test_formula(self):
        for N in range(0, 12):
            assert [r.s.real for r in real_roots(N)] == \
                [N - 3 * n for n in range(N // 2 + 1)]

    def test_exhaustive_scan_small(self):
        for N in range(0, 8):
            expect = sorted((Fraction(N - 3 * n), Fraction(N - 3 * n))
                            for n in range(N // 2 + 1))
            assert sorted(real_root_scan(N)) == expect


class TestCoefficients:
    def test_binomial_branch(self):
        from math import comb
        for N in range(0, 8):
            u = zero_coefficients(real_roots(N)[0])
            assert list(u.entries) == [(-1) ** k * comb(N, k) for k in range(N + 1)]

    def test_complex_branch_rejected(self):
        r = next(r for r in enumerate_roots(2) if not r.is_real)
        with pytest.raises(NotARootError):
            zero_coefficients(r)

    def test_closed_form_equivalence(self):
        for N in range(0, 9):
            for n in range(N // 2 + 1):
                u = zero_coefficients(real_roots(N)[n])
                w = closed_form_wavefunction(N, n)
                assert list(w.coeffs) == list(u.entries)
                assert w.root_multiplicity(1) == N - 2 * n

    def test_branch_range_checked(self):
        with pytest.raises(ValueError):
            closed_form_wavefunction(4, 3)


class TestPascal:
    def test_rows_match_trinomial_expansion(self):
        tri = pascal_ground(6)
        for K, row in enumerate(tri):
            assert row == list((UniPoly([1, 1, 1]) ** K).coeffs)

    def test_rows_are_ground_state_coefficients(self):
        for K in range(0, 7):
            root = real_roots(2 * K)[K]
            assert root.s.real == -K
            assert list(zero_coefficients(root).entries) == pascal_ground(K)[K]

    def test_three_neighbor_recurrence(self):
        tri = pascal_ground(5)
        for K in range(1, 6):
            prev, row = tri[K - 1], tri[K]
            for j, v in enumerate(row):
                assert v == sum(prev[j - d] for d in (0, 1, 2)
                                if 0 <= j - d < len(prev))
