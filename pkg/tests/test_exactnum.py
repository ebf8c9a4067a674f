"""Unit tests for the exact arithmetic kernel."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kratzerqes.exactnum import (BivariatePoly, HalfEisenstein, LatticeError,
                                 QSqrt3, UniPoly, det_bareiss, mat_det,
                                 mat_nullspace, vec_gcd_normalize)

# p and q must share parity for the lattice to close under multiplication
lattice = st.integers(-8, 8).flatmap(
    lambda p: st.integers(-4, 4).map(lambda h: HalfEisenstein(p, p + 2 * h)))

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=8)

qsqrt3 = st.tuples(rationals, rationals).map(lambda ab: QSqrt3(*ab))


class TestHalfEisenstein:
    def test_from_int_and_parts(self):
        z = HalfEisenstein.from_int(-3)
        assert (z.p, z.q) == (-6, 0)
        assert z.is_real and z.real == -3

        w = HalfEisenstein(1, -1)
        assert w.real == Fraction(1, 2)
        assert w.imag_sqrt3 == Fraction(-1, 2)

    def test_norm_product(self):
        w = HalfEisenstein(1, 1)
        assert w * w.conjugate() == HalfEisenstein.from_int(1)

    def test_off_lattice_product_raises(self):
        with pytest.raises(LatticeError):
            HalfEisenstein(1, 0) * HalfEisenstein(1, 1)

    @given(lattice, lattice, lattice)
    def test_ring_axioms(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(lattice, lattice)
    def test_conjugation_and_embedding(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a * b).to_qsqrt3() == a.to_qsqrt3() * b.to_qsqrt3()

    @given(lattice)
    def test_powers(self, a):
        assert a ** 0 == HalfEisenstein.from_int(1)
        assert a ** 3 == a * a * a


class TestQSqrt3:
    @given(qsqrt3, qsqrt3, qsqrt3)
    def test_field_axioms(self, x, y, z):
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z

    @given(qsqrt3, qsqrt3)
    def test_division_inverts_multiplication(self, x, y):
        if y:
            assert (x * y) / y == x

    def test_conjugate_norm_is_rational(self):
        x = QSqrt3(Fraction(2, 3), Fraction(-1, 2))
        n = x * x.conjugate()
        assert n.b == 0 and n.a == Fraction(4, 9) + 3 * Fraction(1, 4)

    def test_to_half_roundtrip_and_failure(self):
        assert QSqrt3(Fraction(1, 2), Fraction(-3, 2)).to_half() == HalfEisenstein(1, -3)
        with pytest.raises(LatticeError):
            QSqrt3(Fraction(1, 3), Fraction(0)).to_half()


unipolys = st.lists(rationals, max_size=6).map(UniPoly)


class TestUniPoly:
    def test_degree_and_zero(self):
        assert UniPoly().degree == -1
        assert UniPoly([0, 0]).degree == -1
        assert UniPoly([1, 0, 2]).degree == 2

    @given(unipolys, unipolys)
    def test_divmod_identity(self, a, b):
        if not b:
            return
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_exact_div_raises_on_remainder(self):
        with pytest.raises(ArithmeticError):
            UniPoly([1, 1]).exact_div(UniPoly([0, 1]))

    def test_root_multiplicity(self):
        p = UniPoly([-1, 1]) ** 2 * UniPoly([2, 1])
        assert p.root_multiplicity(1) == 2
        assert p.root_multiplicity(-2) == 1
        assert p.root_multiplicity(5) == 0

    def test_horner(self):
        p = UniPoly([1, -3, 2])
        assert p(Fraction(1, 2)) == 1 - Fraction(3, 2) + Fraction(1, 2)


bipolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), rationals,
    max_size=5).map(BivariatePoly)


class TestBivariatePoly:
    @given(bipolys, bipolys, rationals, rationals)
    @settings(max_examples=60)
    def test_evaluation_is_a_homomorphism(self, p, q, bv, gv):
        assert (p * q).evaluate(bv, gv) == p.evaluate(bv, gv) * q.evaluate(bv, gv)
        assert (p + q).evaluate(bv, gv) == p.evaluate(bv, gv) + q.evaluate(bv, gv)

    @given(bipolys, rationals, rationals)
    def test_unipoly_regrouping(self, p, bv, gv):
        total = sum((up(bv) * gv ** j for j, up in p.as_unipoly_in_second().items()),
                    Fraction(0))
        assert total == p.evaluate(bv, gv)

    def test_scalar_division(self):
        p = BivariatePoly.var_b() * 3
        assert p / 3 == BivariatePoly.var_b()
        with pytest.raises(ZeroDivisionError):
            p / 0


class TestLinearAlgebra:
    def test_det_small(self):
        m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
        assert mat_det(m) == -2
        assert mat_det([[Fraction(0), Fraction(1)], [Fraction(0), Fraction(2)]]) == 0

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3),
                    min_size=2, max_size=2))
    def test_nullspace_annihilates(self, rows):
        for v in mat_nullspace(rows):
            assert all(sum(r[j] * v[j] for j in range(3)) == 0 for r in rows)
            assert any(v)

    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    @settings(max_examples=40)
    def test_bareiss_matches_field_det(self, m):
        rows = [[UniPoly.const(x) for x in r] for r in m]
        d = det_bareiss(rows, lambda a, b: a.exact_div(b))
        frac = [[Fraction(x) for x in r] for r in m]
        assert (d.coeffs[0] if d else Fraction(0)) == mat_det(frac)

    def test_gcd_normalize(self):
        assert vec_gcd_normalize([Fraction(-2, 3), Fraction(4, 3)]) == [1, -2]
        assert vec_gcd_normalize([0, Fraction(5), Fraction(-10)]) == [0, 1, -2]
        with pytest.raises(ValueError):
            vec_gcd_normalize([0, 0])
