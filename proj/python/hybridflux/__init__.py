"""Finite-volume fluxes built from scalar dissipation functions."""

from ._core import (
    AdvectionModel,
    ConfigError,
    Diagnostics,
    InvalidStateError,
    LinearSystemModel,
    MhdModel,
    MhdModelJacobianFree,
    Model,
    NumericFailure,
    ScenarioResult,
    SolverKind,
    SolverSpec,
    UnsupportedKindError,
    alpha,
    beta,
    eval_d,
    mhd_prim_to_cons,
    numerical_flux,
    quad_coeffs,
    run_mhd_riemann,
    run_scalar_sign_test,
    sample_dissipation,
    solver,
)

__all__ = [name for name in dir() if not name.startswith("_")]
