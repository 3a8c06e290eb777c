"""Truncated matrix models of the deformed SL(2,R) family."""

from ._core import (
    DomainError,
    FamilyError,
    NumericalError,
    TruncatedModule,
    J_suite,
    build_classical_principal,
    build_discrete_q,
    build_groupoid,
    build_motion,
    build_principal_q,
    check_relations,
    check_unitarity,
    closure_graph,
    convergence,
    detect_submodules,
    discrete_weight_discrepancy,
    enumerate_spectrum,
    eta,
    k_summary,
    mu_table,
    qint,
    verify_mu,
    wm,
)

__version__ = "0.1.0"
