"""Independent oracles and diagnostics.

Contains the exact N=1 cubic oracle, a damped Newton solver for the full
nonlinear termination system at finite coupling, an analytic radial-equation
residual evaluator, and convergence-order reporting.  The numeric paths run
in mpmath so that lambda^5-level differences stay above noise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace

import numpy as np
from mpmath import mp, mpf, mpc

from .exactnum import BivariatePoly
from .magyari import AnsatzParams, build_split
from .perturb import PerturbationSeries, evaluate_series, run_series


@dataclass
class NewtonSolution:
    """Converged solution of the square augmented system (u0 = 1 pinned)."""

    u: list  # length N+1, u[0] = 1
    s: object
    t: object
    residual_norm: object
    iterations: int


@dataclass
class ConvergenceReport:
    lambda_grid: list
    errors_per_order: list[list]  # errors_per_order[K][i] at lambda_grid[i]
    fitted_slopes: list[float]


class NewtonError(RuntimeError):
    """Newton iteration failed (singular Jacobian or no convergence)."""


def _mpfv(x):
    """mpf conversion that also accepts Fraction exactly."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# -- N=1 cubic oracle --------------------------------------------------------

def cubic_series_n1(K: int) -> tuple[list[BivariatePoly], list[BivariatePoly]]:
    """lambda-expansion coefficients of the N=1 cubic, solved order by order.

    The exact relations are s^3 - lambda*g*s^2 - lambda*b*s - 1 = 0 and
    t = s^2 - lambda*g*s; the returned lists are the coefficients of
    lambda^0..lambda^K of s and t.
    """
    one = BivariatePoly.const(1)
    b = BivariatePoly.var_b()
    g = BivariatePoly.var_g()

    def tmul(x, y, kmax):
        out = [BivariatePoly.zero()] * (kmax + 1)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if i + j <= kmax and yj:
                    out[i + j] = out[i + j] + xi * yj
        return out

    def shift(x, kmax):  # multiply by lambda
        return ([BivariatePoly.zero()] + list(x))[: kmax + 1]

    a = [one]
    for k in range(1, K + 1):
        cur = a + [BivariatePoly.zero()]
        s2 = tmul(cur, cur, k)
        s3 = tmul(s2, cur, k)
        f = [x for x in s3]
        gs2 = shift(tmul([g], s2, k - 1), k)
        bs = shift(tmul([b], cur, k - 1), k)
        f = [f[i] - gs2[i] - bs[i] for i in range(k + 1)]
        f[0] = f[0] - one
        # 3*a0^2 * a_k + (known) = 0 at order k
        a = a + [-(f[k]) / 3]
    s2full = tmul(a, a, K)
    gs = shift(tmul([g], a, K - 1), K) if K >= 1 else [BivariatePoly.zero()] * (K + 1)
    t = [s2full[i] - gs[i] for i in range(K + 1)]
    return a, t


def cubic_numeric_n1(lam, b, g):
    """Real root of the N=1 cubic at working precision; returns (s, t, u)."""
    lam, b, g = _mpfv(lam), _mpfv(b), _mpfv(g)
    roots = mp.polyroots([mpf(1), -lam * g, -lam * b, mpf(-1)], maxsteps=200,
                         extraprec=mp.prec)
    real = [r for r in roots if abs(mp.im(r)) < mpf(10) ** (-mp.dps + 8)]
    s = mp.re(min(real, key=lambda r: abs(r - 1)))
    t = s * s - lam * g * s
    return s, t, [mpf(1), -s]


# -- full-system Newton oracle ------------------------------------------------

def _q_numeric(N: int, s, t, lam, b, g):
    return build_split(N).q_numeric(s, t, lam, b, g)


def _system(N, x, lam, b, g):
    u = [mpf(1)] + list(x[:N])
    s, t = x[N], x[N + 1]
    Q = _q_numeric(N, s, t, lam, b, g)
    F = [sum(Q[i][j] * u[j] for j in range(N + 1)) for i in range(N + 2)]
    return F, u, Q


def _jacobian(N, u, Q):
    J = []
    for i in range(N + 2):
        row = [Q[i][j] for j in range(1, N + 1)]
        row.append(u[i] if i <= N else mpf(0))        # d/ds
        row.append(u[i - 1] if i >= 1 else mpf(0))    # d/dt
        J.append(row)
    return J


def newton_full(N: int, lam, b, g, seed, dps: int = 50, tol=None,
                max_iter: int = 80) -> NewtonSolution:
    """Damped Newton on the square system (u1..uN, s, t) with u0 = 1.

    seed is (s, t, u) with u of length N+1 (u[0] ignored, pinned to 1).
    """
    with mp.workdps(dps):
        if tol is None:
            tol = mpf(10) ** (-(dps - 10))
        lam, b, g = _mpfv(lam), _mpfv(b), _mpfv(g)
        s0, t0, u0 = seed
        x = [_mpfv(v) for v in list(u0[1:]) + [s0, t0]]
        F, u, Q = _system(N, x, lam, b, g)
        fn = max(abs(v) for v in F)
        it = 0
        while fn > tol and it < max_iter:
            J = _jacobian(N, u, Q)
            try:
                dx = mp.lu_solve(mp.matrix(J), mp.matrix([-v for v in F]))
            except ZeroDivisionError as exc:
                raise NewtonError(f"singular Jacobian at iteration {it}") from exc
            step = mpf(1)
            for _ in range(60):
                xn = [xi + step * di for xi, di in zip(x, dx)]
                Fn, un, Qn = _system(N, xn, lam, b, g)
                fnn = max(abs(v) for v in Fn)
                if fnn < fn:
                    break
                step = step / 2
            x, F, u, Q, fn = xn, Fn, un, Qn, fnn
            it += 1
        if fn > tol:
            raise NewtonError(f"no convergence: best residual {fn} after {it} steps")
        return NewtonSolution(u=u, s=x[N], t=x[N + 1],
                              residual_norm=fn, iterations=it)


# -- analytic radial-equation residual ----------------------------------------

def ansatz_mpf(lam, b, g, alpha=1) -> SimpleNamespace:
    """Formal-mode ansatz values at working precision (ell = 0 convention)."""
    lam, b, g, alpha = _mpfv(lam), _mpfv(b), _mpfv(g), _mpfv(alpha)
    Omega = 1 / lam
    l_eff = Omega - 1
    mu = mp.cbrt(Omega / alpha)
    tau = alpha * mu * mu
    return SimpleNamespace(alpha=alpha, beta=b / mu**2, gamma=g / mu,
                           l_eff=l_eff, Omega=Omega, mu=mu, tau=tau, lam=lam)


def ansatz_to_mpf(ansatz: AnsatzParams) -> SimpleNamespace:
    """Re-derive an exact-input ansatz at working precision."""
    ph = ansatz.physical
    if ph is None:
        return SimpleNamespace(alpha=mpf(1) * ansatz.alpha, beta=mpf(1) * ansatz.beta,
                               gamma=mpf(1) * ansatz.gamma, l_eff=mpf(1) * ansatz.l_eff,
                               Omega=mpf(1) * ansatz.Omega, mu=mpf(1) * ansatz.mu,
                               tau=mpf(1) * ansatz.tau, lam=mpf(1) * ansatz.lam)
    alpha = mp.sqrt(_mpfv(ph.A))
    beta = _mpfv(ph.B) / (2 * alpha)
    gamma = (_mpfv(ph.C) - beta**2) / (2 * alpha)
    l_eff = mpf(-1) / 2 + mp.sqrt(_mpfv(ph.G) + (mpf(2 * ph.ell + 1) / 2) ** 2)
    Omega = l_eff + 1
    mu = mp.cbrt(Omega / alpha)
    tau = alpha * mu * mu
    return SimpleNamespace(alpha=alpha, beta=beta, gamma=gamma, l_eff=l_eff,
                           Omega=Omega, mu=mu, tau=tau, lam=1 / Omega)


def log_grid(lo=mpf("0.01"), hi=mpf(10), npts=50):
    return [lo * (hi / lo) ** (mpf(i) / (npts - 1)) for i in range(npts)]


def ode_residual(u, ans, E, F, N: int, grid) -> mpf:
    """Max relative residual of the radial equation over the grid.

    The wavefunction exp(-h(r)) r^(l+1) W(r/mu) is differentiated
    analytically; no finite differencing of psi.  The centrifugal and core
    couplings enter through the combined l(l+1)/r^2 term.
    """
    alpha, beta, gamma, l = ans.alpha, ans.beta, ans.gamma, ans.l_eff
    mu = ans.mu
    A, B = alpha**2, 2 * alpha * beta
    C = 2 * alpha * gamma + beta**2
    D = -2 * alpha * (N + l + 2) + 2 * beta * gamma
    E, F = mpf(1) * E, mpf(1) * F
    w = [mpf(1) * ui / mu**n for n, ui in enumerate(u)]  # omega_n
    worst = mpf(0)
    for r in grid:
        if r <= 0:
            raise ValueError("grid points must be strictly positive")
        W = sum(c * r**n for n, c in enumerate(w))
        W1 = sum(n * c * r ** (n - 1) for n, c in enumerate(w) if n >= 1)
        W2 = sum(n * (n - 1) * c * r ** (n - 2) for n, c in enumerate(w) if n >= 2)
        X = r ** (l + 1) * W
        X1 = r**l * ((l + 1) * W + r * W1)
        X2 = r ** (l - 1) * (l * (l + 1) * W + 2 * (l + 1) * r * W1 + r * r * W2)
        h1 = alpha * r * r + beta * r + gamma
        h2 = 2 * alpha * r + beta
        V = A * r**4 + B * r**3 + C * r**2 + D * r + F / r + l * (l + 1) / r**2
        core = -(X2 - 2 * h1 * X1 + (h1 * h1 - h2) * X) + (V - E) * X
        eh = mp.exp(-(alpha * r**3 / 3 + beta * r**2 / 2 + gamma * r))
        psi = eh * X
        rel = abs(eh * core) / (1 + abs(psi))
        if rel > worst:
            worst = rel
    return worst


# -- convergence study ---------------------------------------------------------

def series_partial(series: PerturbationSeries, K: int, lam, b, g):
    """Order-K partial sums of an exactly computed series (exact Fractions)."""
    clipped = PerturbationSeries(N=series.N, n=series.n, K_max=K, gauge=series.gauge,
                                 s_corr=series.s_corr[: K + 1],
                                 t_corr=series.t_corr[: K + 1],
                                 u_corr=series.u_corr[: K + 1],
                                 root=series.root, pair=series.pair)
    return evaluate_series(clipped, lam, b, g)


def convergence_report(N: int, n: int, K_max: int, lambda_grid, b, g,
                       dps: int = 50) -> ConvergenceReport:
    """Per-order error table against the Newton oracle, with log-log slopes."""
    series = run_series(N, n, K_max)
    grid = [Fraction(x) for x in lambda_grid]
    errors = [[] for _ in range(K_max + 1)]
    with mp.workdps(dps):
        for lam in grid:
            s_seed, t_seed, u_seed = series_partial(series, K_max, lam, Fraction(b), Fraction(g))
            sol = newton_full(N, lam, b, g, (s_seed, t_seed, u_seed), dps=dps)
            for K in range(K_max + 1):
                sK, tK, _ = series_partial(series, K, lam, Fraction(b), Fraction(g))
                err = max(abs(mpf(1) * sK - sol.s), abs(mpf(1) * tK - sol.t))
                errors[K].append(err)
        slopes = []
        for K in range(K_max + 1):
            xs = np.array([float(mp.log10(mpf(1) * lam)) for lam in grid])
            ys = np.array([float(mp.log10(e)) if e > 0 else -float(dps) for e in errors[K]])
            slope = float(np.polyfit(xs, ys, 1)[0])
            slopes.append(slope)
    return ConvergenceReport(lambda_grid=grid, errors_per_order=errors,
                             fitted_slopes=slopes)
