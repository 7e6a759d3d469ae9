"""Spectral decimation on the Sierpinski gasket."""

from ._sgspec import (
    Branch,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    EigenvalueSequence,
    SpectralEigenfunction,
    dense_dirichlet_spectrum,
    direct_tangent_limit,
    dirichlet_basis,
    enumerate_dirichlet_spectrum,
    eigen_values_on_level,
    gradient_at,
    interval_tangent,
    level_positions,
    normal_derivative,
    psi,
    big_psi,
    run_cli,
    six_series_piece,
    tangent_at,
    tau,
    upsilon,
)

__all__ = [
    "Branch",
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "EigenvalueSequence",
    "SpectralEigenfunction",
    "dense_dirichlet_spectrum",
    "direct_tangent_limit",
    "dirichlet_basis",
    "enumerate_dirichlet_spectrum",
    "eigen_values_on_level",
    "gradient_at",
    "interval_tangent",
    "level_positions",
    "normal_derivative",
    "psi",
    "big_psi",
    "run_cli",
    "six_series_piece",
    "tangent_at",
    "tau",
    "upsilon",
]
