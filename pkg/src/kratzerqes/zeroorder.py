"""Exact solution of the strong-core limit.

Enumerates all roots of the coupled secular system on the half-Eisenstein
lattice, produces the real-root family s = t = N - 3n, the integer Taylor
coefficient vectors, the generalized Pascal triangle and the factored
closed-form wavefunctions.

Root membership is decided exactly: a lattice pair (s, t) is a root iff the
forward recurrence from u0 = 1 leaves the two trailing consistency rows of
the banded system identically zero.  A vectorized mod-2^64 integer sweep is
used as a sound prefilter (a true zero residual stays zero modulo 2^64, so
no root can be missed); surviving candidates are re-verified in unbounded
integers.  An independent resultant-based numeric sweep cross-checks that no
root lies off the lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactnum import (BivariatePoly, HalfEisenstein, QSqrt3, UniPoly,
                       det_bareiss, mat_det, mat_nullspace, vec_gcd_normalize)
from .magyari import build_split


class NotARootError(ValueError):
    """The supplied (s, t) pair does not solve the secular system."""


class InconsistencyError(RuntimeError):
    """Exact lattice scan and numeric sweep disagree."""


@dataclass(frozen=True)
class RootPair:
    """A verified root (s, t) of the coupled secular system at degree N."""

    s: HalfEisenstein
    t: HalfEisenstein
    N: int
    branch: Optional[int] = None  # n with s = t = N - 3n for real roots

    @property
    def is_real(self) -> bool:
        return self.s.is_real and self.t.is_real


@dataclass(frozen=True)
class CoefficientVector:
    """Integer Taylor coefficients u_0..u_N of a real-branch kernel vector."""

    entries: tuple[int, ...]
    N: int
    root: RootPair


def _field_coerce(s, t):
    """Lift (s, t) into a common exact field together with a unit element."""
    if isinstance(s, (HalfEisenstein, QSqrt3)) or isinstance(t, (HalfEisenstein, QSqrt3)):
        return QSqrt3.of(s), QSqrt3.of(t), QSqrt3.of(1)
    if isinstance(s, float) or isinstance(t, float):
        return float(s), float(t), 1.0
    return Fraction(s), Fraction(t), Fraction(1)


def secular_dets(N: int, s, t):
    """The two coupled secular determinants (top and bottom square blocks)."""
    s, t, one = _field_coerce(s, t)
    H = build_split(N)
    dense = [[e * one for e in row] for row in H.q0_dense(s, t)]
    d1 = mat_det(dense[: N + 1])
    d2 = mat_det(dense[1:])
    return d1, d2


def _recurrence(N: int, s, t, one):
    """Forward kernel recurrence from u0 = 1; returns (u, rho_N, rho_N1)."""
    u = [one]
    for k in range(N):
        acc = s * u[k]
        if k >= 1:
            acc = acc + t * u[k - 1]
        if k >= 2:
            acc = acc + (N + 2 - k) * u[k - 2]
        u.append(-acc / (k + 1))
    rho1 = s * u[N]
    if N >= 1:
        rho1 = rho1 + t * u[N - 1]
    if N >= 2:
        rho1 = rho1 + 2 * u[N - 2]
    rho2 = t * u[N]
    if N >= 1:
        rho2 = rho2 + u[N - 1]
    return u, rho1, rho2


def is_root(N: int, s, t) -> bool:
    """Exact root test: nontrivial kernel of the full (N+2) x (N+1) system."""
    sf, tf, one = _field_coerce(s, t)
    _, r1, r2 = _recurrence(N, sf, tf, one)
    return not r1 and not r2


def kernel_vector(root: RootPair) -> tuple[QSqrt3, ...]:
    """Exact kernel vector (u0 = 1 gauge) over Q(sqrt(-3)); any root."""
    s, t, one = QSqrt3.of(root.s), QSqrt3.of(root.t), QSqrt3.of(1)
    u, r1, r2 = _recurrence(root.N, s, t, one)
    if r1 or r2:
        raise NotARootError(f"(s, t) = ({root.s}, {root.t}) is not a root at N={root.N}")
    return tuple(u)


# -- lattice scan ------------------------------------------------------------

def _scan_candidates(N: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Vectorized mod-2^64 sweep of the doubled lattice |p|, |q| <= 2N.

    Works on doubled coordinates S = 2s, T = 2t and the rescaled integers
    v_k = 2^k k! u_k, for which the recurrence and the two trailing rows are
    integer-valued.  Wraparound cannot hide a root (0 maps to 0 mod 2^64).
    """
    if N == 0:
        return [((0, 0), (0, 0))]
    rng = np.arange(-2 * N, 2 * N + 1, dtype=np.int64)
    PT, QT = np.meshgrid(rng, rng, indexing="ij")
    PT, QT = PT.ravel(), QT.ravel()
    out = []
    with np.errstate(over="ignore"):
        for ps in range(-2 * N, 2 * N + 1):
            for qs in range(-2 * N, 2 * N + 1):
                # v arrays over all t candidates; pairs (vp, vq)
                vp = [np.ones_like(PT), None, None]  # k, k-1, k-2
                vq = [np.zeros_like(PT), None, None]
                for k in range(N):
                    ap = ps * vp[0] - 3 * qs * vq[0]
                    aq = ps * vq[0] + qs * vp[0]
                    if k >= 1:
                        ap = ap + 2 * k * (PT * vp[1] - 3 * QT * vq[1])
                        aq = aq + 2 * k * (PT * vq[1] + QT * vp[1])
                    if k >= 2:
                        c = 8 * (N + 2 - k) * k * (k - 1)
                        ap = ap + c * vp[2]
                        aq = aq + c * vq[2]
                    vp = [-ap, vp[0], vp[1]]
                    vq = [-aq, vq[0], vq[1]]
                r1p = ps * vp[0] - 3 * qs * vq[0] + 2 * N * (PT * vp[1] - 3 * QT * vq[1])
                r1q = ps * vq[0] + qs * vp[0] + 2 * N * (PT * vq[1] + QT * vp[1])
                if N >= 2:
                    c = 16 * N * (N - 1)
                    r1p = r1p + c * vp[2]
                    r1q = r1q + c * vq[2]
                r2p = PT * vp[0] - 3 * QT * vq[0] + 4 * N * vp[1]
                r2q = PT * vq[0] + QT * vp[0] + 4 * N * vq[1]
                hit = np.flatnonzero((r1p == 0) & (r1q == 0) & (r2p == 0) & (r2q == 0))
                for idx in hit:
                    out.append(((ps, qs), (int(PT[idx]), int(QT[idx]))))
    return out


def _symbolic_residuals(N: int) -> tuple[BivariatePoly, BivariatePoly]:
    """The two trailing-row residuals as exact polynomials in (s, t)."""
    s = BivariatePoly.var_b()  # formal s
    t = BivariatePoly.var_g()  # formal t
    _, r1, r2 = _recurrence(N, s, t, BivariatePoly.const(1))
    return r1, r2


def _sylvester_resultant(P1: BivariatePoly, P2: BivariatePoly) -> UniPoly:
    """Resultant of P1, P2 with respect to the second variable (t)."""
    a = P1.as_unipoly_in_second()
    b = P2.as_unipoly_in_second()
    d1, d2 = max(a), max(b)
    n = d1 + d2
    zero = UniPoly()
    rows = []
    ac = [a.get(j, zero) for j in range(d1, -1, -1)]  # descending in t
    bc = [b.get(j, zero) for j in range(d2, -1, -1)]
    for i in range(d2):
        rows.append([zero] * i + ac + [zero] * (n - d1 - 1 - i))
    for i in range(d1):
        rows.append([zero] * i + bc + [zero] * (n - d2 - 1 - i))
    return det_bareiss(rows, lambda x, y: x.exact_div(y))


def _poly_complex_roots(coeffs: list[Fraction]) -> np.ndarray:
    """Numeric complex roots of a rational polynomial (ascending coeffs)."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return np.array([], dtype=complex)
    m = max(abs(c) for c in cs)
    fl = [float(c / m) for c in cs]
    return np.roots(fl[::-1])


def _numeric_sweep_check(N: int, found: list[RootPair]) -> None:
    """Confirm via an exact resultant + floating root-finding that every
    root of the coupled system sits at a lattice point we already found."""
    P1, P2 = _symbolic_residuals(N)
    res = _sylvester_resultant(P1, P2)
    if not res:
        raise InconsistencyError(f"t-resultant vanishes identically at N={N}")
    s_vals = np.array([complex(r.s) for r in found]) if found else np.array([], dtype=complex)
    for sr in _poly_complex_roots(list(res.coeffs)):
        if s_vals.size and np.min(np.abs(s_vals - sr)) < 1e-6:
            continue
        # Possibly a spurious resultant root (leading-coefficient collapse):
        # genuine only if P1(sr, .) and P2(sr, .) share a t-root.
        def tpoly_at(P, sv):
            by_j = P.as_unipoly_in_second()
            return [sum(complex(c) * sv**i for i, c in enumerate(by_j[j].coeffs))
                    if j in by_j else 0j for j in range(max(by_j) + 1)]
        p1t = tpoly_at(P1, sr)
        p2t = tpoly_at(P2, sr)
        troots = np.roots(np.array(p1t[::-1])) if len(p1t) > 1 else np.array([])
        scale = max(1.0, max(abs(x) for x in p1t + p2t))
        for tr in troots:
            p2v = sum(c * tr**j for j, c in enumerate(p2t))
            if abs(p2v) < 1e-6 * scale:
                raise InconsistencyError(
                    f"numeric sweep found an off-lattice root near s={sr} at N={N}")


def enumerate_roots(N: int, sweep: bool = True) -> list[RootPair]:
    """Complete root set of the coupled secular system at degree N.

    sweep=True additionally runs the numeric cross-check (skipped
    automatically above N = 8 where the resultant grows large).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    roots = []
    for (ps, qs), (pt, qt) in _scan_candidates(N):
        s = HalfEisenstein(ps, qs)
        t = HalfEisenstein(pt, qt)
        if not is_root(N, s, t):  # exact unbounded-integer recheck
            continue
        branch = None
        if qs == 0 and (ps, qs) == (pt, qt) and ps % 2 == 0:
            n2 = N - ps // 2
            if n2 % 3 == 0 and 0 <= n2 // 3 <= N // 2:
                branch = n2 // 3
        roots.append(RootPair(s=s, t=t, N=N, branch=branch))
    roots.sort(key=lambda r: (r.s.p, r.s.q, r.t.p, r.t.q))
    if sweep and 1 <= N <= 8:
        _numeric_sweep_check(N, roots)
    return roots


def real_roots(N: int) -> list[RootPair]:
    """The real family s = t = N - 3n, each verified by exact substitution."""
    out = []
    for n in range(N // 2 + 1):
        v = N - 3 * n
        s = HalfEisenstein.from_int(v)
        if not is_root(N, Fraction(v), Fraction(v)):
            raise InconsistencyError(f"claimed real root s=t={v} fails at N={N}")
        d1, d2 = secular_dets(N, Fraction(v), Fraction(v))
        if d1 or d2:
            raise InconsistencyError(f"secular determinants nonzero at s=t={v}, N={N}")
        out.append(RootPair(s=s, t=s, N=N, branch=n))
    return out


def real_root_scan(N: int) -> list[tuple[Fraction, Fraction]]:
    """Exhaustive exact scan of real half-integer pairs |s|, |t| <= N.

    Independent check of the real-root formula: expected output is exactly
    the diagonal pairs (N-3n, N-3n).
    """
    found = []
    for ps in range(-2 * N, 2 * N + 1):
        for pt in range(-2 * N, 2 * N + 1):
            if is_root(N, Fraction(ps, 2), Fraction(pt, 2)):
                found.append((Fraction(ps, 2), Fraction(pt, 2)))
    return found


def zero_coefficients(root: RootPair) -> CoefficientVector:
    """Integer gcd-1 Taylor coefficients for a real branch, u0-positive."""
    if not root.is_real:
        raise NotARootError("coefficient vectors are produced for real branches only")
    s = root.s.real
    t = root.t.real
    u, r1, r2 = _recurrence(root.N, s, t, Fraction(1))
    if r1 != 0 or r2 != 0:
        raise NotARootError(
            f"trailing consistency rows nonzero at s={s}, t={t}, N={root.N}")
    return CoefficientVector(entries=tuple(vec_gcd_normalize(u)), N=root.N, root=root)


def closed_form_wavefunction(N: int, n: int) -> UniPoly:
    """Expanded polynomial factor (1-x)^(N-2n) (1+x+x^2)^n in x = r/mu."""
    if not 0 <= n <= N // 2:
        raise ValueError(f"branch index n={n} out of range for N={N}")
    lin = UniPoly([1, -1]) ** (N - 2 * n)
    quad = UniPoly([1, 1, 1]) ** n
    return lin * quad


def pascal_ground(K: int) -> list[list[int]]:
    """Trinomial Pascal triangle: rows 0..K, each the three-neighbor sum."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    rows = [[1]]
    for k in range(1, K + 1):
        prev = rows[-1]
        row = []
        for j in range(2 * k + 1):
            v = 0
            for d in (0, 1, 2):
                if 0 <= j - d < len(prev):
                    v += prev[j - d]
            row.append(v)
        rows.append(row)
    return rows
