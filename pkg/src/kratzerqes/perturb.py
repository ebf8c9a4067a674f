"""Nonlinear Rayleigh-Schrodinger-style correction hierarchy.

Per order k the hierarchy determines (s_k, t_k) through a 2x2 inversion
against the two left null vectors of the unperturbed banded matrix, then the
wavefunction correction u_k through a triangular propagator solve.  All
corrections are exact polynomials in the formal symbols b and g; no numeric
value enters until evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .exactnum import BivariatePoly, mat_det, mat_nullspace, vec_gcd_normalize
from .magyari import PseudoHamiltonian, build_split, selectors
from .zeroorder import CoefficientVector, RootPair, real_roots, zero_coefficients


class RankAnomalyError(RuntimeError):
    """Left kernel of the unperturbed matrix is not two-dimensional."""


class DegenerateOverlapError(RuntimeError):
    """A left null vector has zero overlap with the zero-order kernel."""


@dataclass(frozen=True)
class LeftNullPair:
    """Integer left null vectors with the overlap-sign defining property.

    v_plus satisfies <v|J u0> = <v|K u0> (= c_plus), v_minus satisfies
    <v|J u0> = -<v|K u0> (= c_minus); both overlaps are nonzero, which is
    exactly what the per-order 2x2 inversion requires.
    """

    v_plus: tuple[int, ...]
    v_minus: tuple[int, ...]
    c_plus: Fraction
    c_minus: Fraction


def _dot(v, w):
    acc = v[0] * w[0]
    for a, b in zip(v[1:], w[1:]):
        acc = acc + a * b
    return acc


def left_null_pair(N: int, root: RootPair, u0: CoefficientVector) -> LeftNullPair:
    """Left kernel basis of Q0(s0, t0), recombined by the overlap property."""
    s0 = root.s.real
    t0 = root.t.real
    H = build_split(N)
    dense = H.q0_dense(Fraction(s0), Fraction(t0))
    transpose = [[Fraction(dense[i][j]) for i in range(N + 2)] for j in range(N + 1)]
    basis = mat_nullspace(transpose)
    if len(basis) != 2:
        raise RankAnomalyError(
            f"left kernel dimension {len(basis)} != 2 at N={N}, s={s0}")
    ju = list(u0.entries) + [0]
    ku = [0] + list(u0.entries)

    def pick(sign):
        # vector in span(basis) annihilating <.|Ju0> - sign*<.|Ku0>
        f = [_dot(w, ju) - sign * _dot(w, ku) for w in basis]
        if f[0] == 0:
            return basis[0]
        if f[1] == 0:
            return basis[1]
        return [f[1] * a - f[0] * b for a, b in zip(basis[0], basis[1])]

    v_plus = vec_gcd_normalize(pick(1))
    v_minus = vec_gcd_normalize(pick(-1))
    c_plus = Fraction(_dot(v_plus, ju))
    c_minus = Fraction(_dot(v_minus, ju))
    if _dot(v_plus, ju) != _dot(v_plus, ku) or _dot(v_minus, ju) != -_dot(v_minus, ku):
        raise RankAnomalyError("overlap-sign construction failed")
    if c_plus == 0 or c_minus == 0:
        raise DegenerateOverlapError(
            f"zero overlap at N={N}, s={s0}: the 2x2 inversion is blocked")
    return LeftNullPair(v_plus=tuple(v_plus), v_minus=tuple(v_minus),
                        c_plus=c_plus, c_minus=c_minus)


@dataclass
class PerturbationSeries:
    """Per-order corrections (s_k, t_k, u_k) as exact (b, g) polynomials."""

    N: int
    n: int
    K_max: int
    gauge: str  # "down": u_k[0] = 0 for k >= 1; "up": u_k[N] = 0
    s_corr: list[BivariatePoly] = field(default_factory=list)
    t_corr: list[BivariatePoly] = field(default_factory=list)
    u_corr: list[list[BivariatePoly]] = field(default_factory=list)
    root: Optional[RootPair] = None
    pair: Optional[LeftNullPair] = None


def _vec_J(u):
    return list(u) + [BivariatePoly.zero()]


def _vec_K(u):
    return [BivariatePoly.zero()] + list(u)


def _q1_mul(H: PseudoHamiltonian, u):
    N = H.N
    out = []
    for i in range(N + 2):
        acc = BivariatePoly.zero()
        for j in range(max(0, i - 1), min(N, i + 1) + 1):
            e = H.q1_entry(i, j)
            if e:
                acc = acc + e * u[j]
        out.append(acc)
    return out


def _q0_mul(N: int, s0: Fraction, t0: Fraction, u):
    H = build_split(N)
    out = []
    for i in range(N + 2):
        acc = BivariatePoly.zero()
        for j in range(max(0, i - 2), min(N, i + 1) + 1):
            e = H.q0_entry(i, j, s0, t0)
            if e:
                acc = acc + Fraction(e) * u[j]
        out.append(acc)
    return out


def rhs_xi(k: int, series: PerturbationSeries, H: PseudoHamiltonian):
    """Known right-hand side at order k (uses corrections below order k)."""
    if k < 1:
        raise ValueError("order must be >= 1")
    xi = [-x for x in _q1_mul(H, series.u_corr[k - 1])]
    for j in range(1, k):
        uj = series.u_corr[k - j]
        ju, ku = _vec_J(uj), _vec_K(uj)
        for i in range(H.N + 2):
            xi[i] = xi[i] - series.s_corr[j] * ju[i] - series.t_corr[j] * ku[i]
    return xi


def solve_st(k: int, pair: LeftNullPair, xi, u0: CoefficientVector):
    """2x2 inversion for the order-k spectral corrections."""
    ssum = _dot([BivariatePoly.const(c) for c in pair.v_plus], xi) / pair.c_plus
    sdif = _dot([BivariatePoly.const(c) for c in pair.v_minus], xi) / pair.c_minus
    s_k = (ssum + sdif) / 2
    t_k = (ssum - sdif) / 2
    return s_k, t_k


def propagate_u(k: int, tau_vec, root: RootPair, gauge: str):
    """Gauge-fixed triangular solve for the order-k wavefunction correction.

    All N+2 rows of the order-k equation are re-verified exactly afterwards;
    the two rows not used by the propagator must vanish by the rank argument.
    """
    N = root.N
    s0, t0 = root.s.real, root.t.real
    zero = BivariatePoly.zero()
    u = [zero] * (N + 1)
    if gauge == "down":
        for i in range(N):  # rows 0..N-1, lower-triangular, diag 1..N
            acc = tau_vec[i] - Fraction(s0) * u[i]
            if i >= 1:
                acc = acc - Fraction(t0) * u[i - 1]
            if i >= 2:
                acc = acc - Fraction(N + 2 - i) * u[i - 2]
            u[i + 1] = acc / (i + 1)
    elif gauge == "up":
        for i in range(N + 1, 1, -1):  # rows N+1..2, upper-triangular
            acc = tau_vec[i] - Fraction(t0) * u[i - 1]
            if i <= N:
                acc = acc - Fraction(s0) * u[i]
            if i + 1 <= N:
                acc = acc - Fraction(i + 1) * u[i + 1]
            u[i - 2] = acc / (N + 2 - i)
    else:
        raise ValueError(f"unknown gauge {gauge!r}")
    resid = _q0_mul(N, s0, t0, u)
    for i in range(N + 2):
        if resid[i] - tau_vec[i]:
            raise RankAnomalyError(
                f"consistency row {i} nonzero at order {k}, N={N}, s={s0}")
    return u


def r_star_dense(N: int, root: RootPair, gauge: str = "down"):
    """The N x N triangular propagator matrix cut out of Q0(s0, t0)."""
    s0, t0 = root.s.real, root.t.real
    H = build_split(N)
    dense = H.q0_dense(s0, t0)
    if gauge == "down":
        return [[Fraction(dense[i][j]) for j in range(1, N + 1)] for i in range(N)]
    return [[Fraction(dense[i][j]) for j in range(N)] for i in range(2, N + 2)]


def propagator_det(N: int, root: RootPair, gauge: str = "down") -> Fraction:
    if N == 0:
        return Fraction(1)
    return mat_det(r_star_dense(N, root, gauge))


def run_series(N: int, n: int, K_max: int, gauge: str = "down") -> PerturbationSeries:
    """Full correction hierarchy for real branch n through order K_max."""
    if not 0 <= n <= N // 2:
        raise ValueError(f"branch index n={n} out of range for N={N}")
    root = real_roots(N)[n]
    u0 = zero_coefficients(root)
    pair = left_null_pair(N, root, u0)
    H = build_split(N)
    ser = PerturbationSeries(N=N, n=n, K_max=K_max, gauge=gauge, root=root, pair=pair)
    ser.s_corr.append(BivariatePoly.const(N - 3 * n))
    ser.t_corr.append(BivariatePoly.const(N - 3 * n))
    ser.u_corr.append([BivariatePoly.const(c) for c in u0.entries])
    ju0 = _vec_J(ser.u_corr[0])
    ku0 = _vec_K(ser.u_corr[0])
    for k in range(1, K_max + 1):
        xi = rhs_xi(k, ser, H)
        s_k, t_k = solve_st(k, pair, xi, u0)
        tau = [xi[i] - s_k * ju0[i] - t_k * ku0[i] for i in range(N + 2)]
        u_k = propagate_u(k, tau, root, gauge)
        ser.s_corr.append(s_k)
        ser.t_corr.append(t_k)
        ser.u_corr.append(u_k)
    return ser


def order_residual(series: PerturbationSeries, k: int):
    """Full order-k residual rows; must vanish identically in (b, g)."""
    N = series.N
    root = series.root
    H = build_split(N)
    rows = _q0_mul(N, root.s.real, root.t.real, series.u_corr[k])
    if k >= 1:
        q1u = _q1_mul(H, series.u_corr[k - 1])
        for i in range(N + 2):
            rows[i] = rows[i] + q1u[i]
        for j in range(1, k + 1):
            uj = series.u_corr[k - j]
            ju, ku = _vec_J(uj), _vec_K(uj)
            for i in range(N + 2):
                rows[i] = rows[i] + series.s_corr[j] * ju[i] + series.t_corr[j] * ku[i]
    return rows


def evaluate_series(series: PerturbationSeries, lam, b, g):
    """Partial sums of the three expansions at numeric (lambda, b, g).

    Exact when the inputs are Fractions; works with mpmath values too.
    """
    s = series.s_corr[0].evaluate(b, g) * lam**0
    t = series.t_corr[0].evaluate(b, g) * lam**0
    u = [p.evaluate(b, g) * lam**0 for p in series.u_corr[0]]
    pw = lam**0
    for k in range(1, series.K_max + 1):
        pw = pw * lam
        s = s + pw * series.s_corr[k].evaluate(b, g)
        t = t + pw * series.t_corr[k].evaluate(b, g)
        u = [ui + pw * p.evaluate(b, g) for ui, p in zip(u, series.u_corr[k])]
    return s, t, u
