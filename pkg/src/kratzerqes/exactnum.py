"""Exact arithmetic kernel: rationals, half-Eisenstein lattice numbers, polynomials.

Everything downstream (secular roots, coefficient vectors, perturbation
corrections) is computed over these types, so all operations here are exact:
no floats, no rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

# The base field of all exact computation.
Rational = Fraction


class LatticeError(ArithmeticError):
    """An operation produced a value off the half-Eisenstein lattice."""


@dataclass(frozen=True)
class HalfEisenstein:
    """Number z = (p + q*sqrt(3)*i)/2 with integer p, q.

    Stores the doubled coordinates p = 2 Re z and q = 2 Im z / sqrt(3)
    directly, which is how the secular-root tables print them.
    """

    p: int
    q: int

    @classmethod
    def from_int(cls, n: int) -> "HalfEisenstein":
        return cls(2 * n, 0)

    @property
    def is_real(self) -> bool:
        return self.q == 0

    @property
    def real(self) -> Fraction:
        return Fraction(self.p, 2)

    @property
    def imag_sqrt3(self) -> Fraction:
        """Coefficient of sqrt(3)*i, i.e. Im z / sqrt(3)."""
        return Fraction(self.q, 2)

    def conjugate(self) -> "HalfEisenstein":
        return HalfEisenstein(self.p, -self.q)

    def __add__(self, other: "HalfEisenstein") -> "HalfEisenstein":
        return HalfEisenstein(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "HalfEisenstein") -> "HalfEisenstein":
        return HalfEisenstein(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "HalfEisenstein":
        return HalfEisenstein(-self.p, -self.q)

    def __mul__(self, other: "HalfEisenstein") -> "HalfEisenstein":
        pp = self.p * other.p - 3 * self.q * other.q
        qq = self.p * other.q + other.p * self.q
        if pp % 2 or qq % 2:
            raise LatticeError(
                f"product of ({self.p},{self.q}) and ({other.p},{other.q}) "
                "leaves the half-integer lattice"
            )
        return HalfEisenstein(pp // 2, qq // 2)

    def __pow__(self, n: int) -> "HalfEisenstein":
        if n < 0:
            raise ValueError("negative powers not supported on the lattice")
        out = HalfEisenstein.from_int(1)
        for _ in range(n):
            out = out * self
        return out

    def to_qsqrt3(self) -> "QSqrt3":
        return QSqrt3(Fraction(self.p, 2), Fraction(self.q, 2))

    def __complex__(self) -> complex:
        return complex(self.p / 2.0, self.q * 0.8660254037844386)

    def __str__(self) -> str:
        return f"({self.p}{self.q:+d}*sqrt(3)i)/2"


@dataclass(frozen=True)
class QSqrt3:
    """Element a + b*sqrt(3)*i of the field Q(sqrt(-3)), a and b rational.

    The field in which exact elimination over complex secular roots runs;
    HalfEisenstein values embed via to_qsqrt3().
    """

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, x) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        if isinstance(x, HalfEisenstein):
            return x.to_qsqrt3()
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other) -> "QSqrt3":
        o = QSqrt3.of(other)
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> "QSqrt3":
        o = QSqrt3.of(other)
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> "QSqrt3":
        return QSqrt3.of(other) - self

    def __neg__(self) -> "QSqrt3":
        return QSqrt3(-self.a, -self.b)

    def __mul__(self, other) -> "QSqrt3":
        o = QSqrt3.of(other)
        return QSqrt3(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSqrt3":
        o = QSqrt3.of(other)
        n = o.a * o.a + 3 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-3))")
        return QSqrt3((self.a * o.a + 3 * self.b * o.b) / n,
                      (self.b * o.a - self.a * o.b) / n)

    def __rtruediv__(self, other) -> "QSqrt3":
        return QSqrt3.of(other) / self

    def __eq__(self, other) -> bool:
        o = QSqrt3.of(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self.a, -self.b)

    def to_half(self) -> HalfEisenstein:
        p, q = 2 * self.a, 2 * self.b
        if p.denominator != 1 or q.denominator != 1:
            raise LatticeError(f"{self} is not a half-Eisenstein lattice point")
        return HalfEisenstein(int(p), int(q))

    def __complex__(self) -> complex:
        return complex(float(self.a), float(self.b) * 1.7320508075688772)


class UniPoly:
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return self == UniPoly.const(other)

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * Fraction(other) for c in self.coeffs])
        if not self or not other:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci:
                for j, cj in enumerate(other.coeffs):
                    out[i + j] += ci * cj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "UniPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return UniPoly(quo), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def root_multiplicity(self, x0) -> int:
        """Multiplicity of the root at x0, by repeated synthetic division."""
        p, m = self, 0
        lin = UniPoly([-Fraction(x0), 1])
        while p and p(x0) == 0:
            p = p.exact_div(lin)
            m += 1
        return m

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"


class BivariatePoly:
    """Sparse polynomial in two formal symbols over the rationals.

    In the perturbation hierarchy the symbols are b = beta*mu^2 and
    g = gamma*mu; the same class also serves as a generic bivariate ring
    (e.g. in (s, t)) for resultant elimination.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if c:
                    t[(i, j)] = c
        self.terms = t

    @classmethod
    def const(cls, c) -> "BivariatePoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def zero(cls) -> "BivariatePoly":
        return cls()

    @classmethod
    def var_b(cls) -> "BivariatePoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def var_g(cls) -> "BivariatePoly":
        return cls({(0, 1): Fraction(1)})

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    @property
    def total_degree(self) -> int:
        """Max i+j over stored terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "BivariatePoly":
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.const(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return BivariatePoly(t)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "BivariatePoly":
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BivariatePoly":
        return (-self) + other

    def __mul__(self, other) -> "BivariatePoly":
        if not isinstance(other, BivariatePoly):
            c = Fraction(other)
            return BivariatePoly({k: v * c for k, v in self.terms.items()})
        t = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, Fraction(0)) + c1 * c2
        return BivariatePoly(t)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "BivariatePoly":
        c = Fraction(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return BivariatePoly({k: v / c for k, v in self.terms.items()})

    def evaluate(self, bv, gv):
        """Exact substitution; works for Fraction as well as mpmath values."""
        out = 0
        for (i, j), c in sorted(self.terms.items()):
            out = out + c * bv**i * gv**j
        return out

    def as_unipoly_in_second(self) -> dict[int, UniPoly]:
        """Regroup as {degree in var 2: UniPoly in var 1}."""
        by_j: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, {})[i] = c
        out = {}
        for j, row in by_j.items():
            n = max(row) + 1
            out[j] = UniPoly([row.get(i, Fraction(0)) for i in range(n)])
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            mon = "".join(["" if c == 1 and (i or j) else str(c),
                           f"*b^{i}" if i else "", f"*g^{j}" if j else ""])
            bits.append(mon.lstrip("*") or str(c))
        return " + ".join(bits)


def bipoly_eval(poly: BivariatePoly, b_val, g_val):
    """Exact substitution of values for the two formal symbols."""
    return poly.evaluate(b_val, g_val)


# ---------------------------------------------------------------------------
# Exact linear algebra over a field (Fraction or QSqrt3 entries).

def mat_det(rows):
    """Determinant by exact Gaussian elimination over a field."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = m[0][0] - m[0][0] + 1 if n else 1  # field one
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return m[0][0] - m[0][0]  # field zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        pv = m[col][col]
        det = det * pv
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / pv
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return det * sign


def mat_nullspace(rows):
    """Right null-space basis of a matrix over a field, by Gauss-Jordan.

    Returns a list of vectors (lists); empty list for a full-rank matrix.
    """
    if not rows:
        return []
    nr, nc = len(rows), len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    zero = m[0][0] - m[0][0]
    one = zero + 1
    for fc in free:
        v = [zero] * nc
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def det_bareiss(rows, exact_div):
    """Fraction-free (Bareiss) determinant over an integral domain.

    exact_div(a, b) must perform the exact division guaranteed by the
    Bareiss identity. Suitable for UniPoly entries.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return m[0][0] - m[0][0]
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else exact_div(num, prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def vec_gcd_normalize(vec):
    """Scale a rational vector to coprime integers, first nonzero entry > 0.

    Returns a list of ints; raises on the zero vector.
    """
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        raise ValueError("cannot normalize the zero vector")
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
