"""Exact bound states of the Kratzer-plus-quartic radial potential.

The library solves the termination conditions of the power-series ansatz
exactly: secular roots on the half-Eisenstein lattice, integer coefficient
vectors, and a nonlinear correction hierarchy whose orders are exact
polynomials in the two formal coupling symbols.
"""
from .exactnum import (BivariatePoly, HalfEisenstein, LatticeError, QSqrt3,
                       Rational, UniPoly)
from .magyari import (AnsatzParams, DomainError, PhysicalParams,
                      PseudoHamiltonian, SelectorPair, backout_physical,
                      build_split, derive_ansatz, formal_ansatz, selectors)
from .perturb import (DegenerateOverlapError, LeftNullPair, PerturbationSeries,
                      RankAnomalyError, evaluate_series, left_null_pair,
                      order_residual, propagator_det, run_series)
from .verify import (ConvergenceReport, NewtonError, NewtonSolution,
                     convergence_report, cubic_numeric_n1, cubic_series_n1,
                     log_grid, newton_full, ode_residual)
from .zeroorder import (CoefficientVector, InconsistencyError, NotARootError,
                        RootPair, closed_form_wavefunction, enumerate_roots,
                        is_root, kernel_vector, pascal_ground, real_root_scan,
                        real_roots, secular_dets, zero_coefficients)

__version__ = "1.0.0"

__all__ = [
    "AnsatzParams", "BivariatePoly", "CoefficientVector", "ConvergenceReport",
    "DegenerateOverlapError", "DomainError", "HalfEisenstein",
    "InconsistencyError", "LatticeError", "LeftNullPair", "NewtonError",
    "NewtonSolution", "NotARootError", "PerturbationSeries", "PhysicalParams",
    "PseudoHamiltonian", "QSqrt3", "RankAnomalyError", "Rational", "RootPair",
    "SelectorPair", "UniPoly", "backout_physical", "build_split",
    "closed_form_wavefunction", "convergence_report", "cubic_numeric_n1",
    "cubic_series_n1", "derive_ansatz", "enumerate_roots", "evaluate_series",
    "formal_ansatz", "is_root", "kernel_vector", "left_null_pair", "log_grid",
    "newton_full", "ode_residual", "order_residual", "pascal_ground",
    "propagator_det", "real_root_scan", "real_roots", "run_series",
    "secular_dets", "selectors", "zero_coefficients",
]
