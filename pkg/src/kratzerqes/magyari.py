"""Physical model assembly for the quartic-plus-Kratzer radial problem.

Maps potential couplings to ansatz parameters, builds the banded recurrence
matrices (unperturbed part, perturbation part, selector pair) and converts
spectral parameters (s, t) back to physical (E, F).

Ansatz parameters are kept exact (Fraction) whenever the required square and
cube roots are rational; otherwise they fall back to floats. The perturbation
engine never consumes the numeric values: it works in the formal symbols
b = beta*mu^2 and g = gamma*mu, so exactness of the hierarchy is independent
of irrational physical parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import BivariatePoly

Scalar = Union[Fraction, float]


class DomainError(ValueError):
    """Physically inadmissible couplings."""


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _icbrt(n: int) -> int:
    if n < 0:
        return -_icbrt(-n)
    r = round(n ** (1.0 / 3.0)) if n else 0
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _exact_cbrt(x: Fraction) -> Optional[Fraction]:
    rn = _icbrt(x.numerator)
    rd = _icbrt(x.denominator)
    if rn**3 == x.numerator and rd**3 == x.denominator:
        return Fraction(rn, rd)
    return None


def _sqrt(x: Fraction) -> Scalar:
    e = _exact_sqrt(x)
    return e if e is not None else math.sqrt(x)


def _cbrt(x) -> Scalar:
    if isinstance(x, Fraction):
        e = _exact_cbrt(x)
        if e is not None:
            return e
        x = float(x)
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class PhysicalParams:
    """Input couplings of V(r) = A r^4 + B r^3 + C r^2 + D r + F/r + G/r^2.

    D and F are outputs of the construction (termination and secular
    solution respectively) and are deliberately not accepted here.
    """

    A: Fraction
    B: Fraction
    C: Fraction
    G: Fraction
    ell: int

    def __post_init__(self):
        for name in "ABCG":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.A <= 0:
            raise DomainError("quartic coupling A must be positive")
        if self.ell < 0:
            raise DomainError("angular momentum ell must be nonnegative")
        if self.G + Fraction(2 * self.ell + 1, 2) ** 2 <= 0:
            raise DomainError("core too attractive: G + (ell+1/2)^2 must be positive")


@dataclass(frozen=True)
class AnsatzParams:
    """Derived ansatz parameters; exact Fractions where the roots are rational."""

    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    l_eff: Scalar
    Omega: Scalar
    mu: Scalar
    tau: Scalar
    lam: Scalar
    physical: Optional[PhysicalParams] = None

    def D(self, N: int) -> Scalar:
        """Termination-admitting linear coupling at truncation degree N."""
        return -2 * self.alpha * (N + self.l_eff + 2) + 2 * self.beta * self.gamma

    @property
    def b_symbol_value(self) -> Scalar:
        return self.beta * self.mu**2

    @property
    def g_symbol_value(self) -> Scalar:
        return self.gamma * self.mu

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in
                   (self.alpha, self.beta, self.gamma, self.l_eff,
                    self.Omega, self.mu, self.tau, self.lam))


def derive_ansatz(params: PhysicalParams) -> AnsatzParams:
    """Fix alpha, beta, gamma, the effective l, and the scaling parameters."""
    alpha = _sqrt(params.A)
    beta = params.B / (2 * alpha)
    gamma = (params.C - beta * beta) / (2 * alpha)
    disc = params.G + Fraction(2 * params.ell + 1, 2) ** 2
    # post_init guarantees disc > 0
    l_eff = Fraction(-1, 2) + _sqrt(disc)
    Omega = l_eff + 1
    mu = _cbrt(Omega / alpha)
    tau = alpha * mu * mu
    lam = 1 / Omega if isinstance(Omega, Fraction) else 1.0 / Omega
    return AnsatzParams(alpha=alpha, beta=beta, gamma=gamma, l_eff=l_eff,
                        Omega=Omega, mu=mu, tau=tau, lam=lam, physical=params)


def formal_ansatz(lam: Fraction, b, g, alpha: Fraction = Fraction(1)) -> AnsatzParams:
    """Ansatz for the formal mode (lambda, b, g) with ell = 0 and G = l(l+1).

    mu is generally irrational here; beta and gamma are carried as floats.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise DomainError("lambda must be positive")
    Omega = 1 / lam
    l_eff = Omega - 1
    mu = _cbrt(Omega / alpha)
    tau = alpha * mu * mu
    beta = b / (mu * mu)
    gamma = g / mu
    G = l_eff * (l_eff + 1)
    A = alpha * alpha
    B = 2 * alpha * beta
    C = 2 * alpha * gamma + beta * beta
    phys = None
    if isinstance(mu, Fraction) and isinstance(beta, Fraction) and isinstance(gamma, Fraction):
        phys = PhysicalParams(A=A, B=Fraction(B), C=Fraction(C), G=Fraction(G), ell=0)
    return AnsatzParams(alpha=alpha, beta=beta, gamma=gamma, l_eff=l_eff,
                        Omega=Omega, mu=mu, tau=tau, lam=lam, physical=phys)


@dataclass(frozen=True)
class PseudoHamiltonian:
    """Banded (N+2) x (N+1) split Q = Q0(s,t) + lambda * Q1(b,g).

    Q0 bands (row k): sub-sub N+2-k (k = 2..N+1), sub t (k = 1..N+1),
    main s (k = 0..N), super k+1 (k = 0..N-1).
    Q1 bands (row k): sub -(k-1) b (k = 1..N+1), main -k g (k = 1..N),
    super k(k+1)/2 (k = 1..N-1); row 0 vanishes.
    """

    N: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N + 2, self.N + 1)

    def q0_entry(self, i: int, j: int, s, t):
        N = self.N
        if j == i and i <= N:
            return s
        if j == i - 1:
            return t
        if j == i + 1 and i <= N - 1:
            return i + 1
        if j == i - 2:
            return N + 2 - i
        return 0

    def q0_dense(self, s, t):
        return [[self.q0_entry(i, j, s, t) for j in range(self.N + 1)]
                for i in range(self.N + 2)]

    def q1_entry(self, i: int, j: int) -> BivariatePoly:
        N = self.N
        if i == 0:
            return BivariatePoly.zero()
        if j == i and i <= N:
            return BivariatePoly({(0, 1): Fraction(-i)})
        if j == i - 1:
            return BivariatePoly({(1, 0): Fraction(-(i - 1))})
        if j == i + 1 and i <= N - 1:
            return BivariatePoly.const(Fraction(i * (i + 1), 2))
        return BivariatePoly.zero()

    def q1_dense(self) -> list[list[BivariatePoly]]:
        return [[self.q1_entry(i, j) for j in range(self.N + 1)]
                for i in range(self.N + 2)]

    def q_numeric(self, s, t, lam, b, g):
        """Dense Q(lambda) rows with entries in whatever arithmetic s carries."""
        N = self.N
        rows = []
        for i in range(N + 2):
            row = []
            for j in range(N + 1):
                e = self.q0_entry(i, j, s, t)
                e = e + lam * self.q1_entry(i, j).evaluate(b, g)
                row.append(e)
            rows.append(row)
        return rows


def build_split(N: int, ansatz: Optional[AnsatzParams] = None) -> PseudoHamiltonian:
    """Build the split pseudo-Hamiltonian at truncation degree N.

    The band structure is universal; the optional ansatz only documents the
    physical context (values of the formal symbols b, g).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    return PseudoHamiltonian(N=N)


@dataclass(frozen=True)
class SelectorPair:
    """Quasi-unit selectors: J is identity on rows 0..N, K on rows 1..N+1."""

    N: int

    def J_dense(self):
        N = self.N
        return [[1 if i == j else 0 for j in range(N + 1)] for i in range(N + 2)]

    def K_dense(self):
        N = self.N
        return [[1 if i == j + 1 else 0 for j in range(N + 1)] for i in range(N + 2)]

    def apply_J(self, u):
        """J u: pad u with a trailing zero row."""
        z = u[0] - u[0]
        return list(u) + [z]

    def apply_K(self, u):
        """K u: pad u with a leading zero row."""
        z = u[0] - u[0]
        return [z] + list(u)


def selectors(N: int) -> SelectorPair:
    return SelectorPair(N=N)


def backout_physical(s, t, ansatz: AnsatzParams):
    """Invert the (s, t) abbreviations to the physical energy E and Coulomb F."""
    # s, t may carry extended-precision values; keep them leftmost so mixed
    # arithmetic resolves through their operators.
    E = 2 * t * ansatz.tau / ansatz.mu \
        + (ansatz.beta * (2 * ansatz.l_eff + 3) - ansatz.gamma * ansatz.gamma)
    F = -2 * s * ansatz.tau - 2 * ansatz.gamma * ansatz.Omega
    return E, F
