"""Superfast Tikhonov-regularized Toeplitz least squares via tangential interpolation."""

from ._core import (
    HermitianToeplitz,
    NumericalError,
    Problem,
    ShapeError,
    SolveReport,
    Toeplitz,
    cg_solve,
    dense_solve,
    fit_complexity,
    run_accuracy,
    run_complexity,
    solve,
)

__all__ = [
    "HermitianToeplitz",
    "NumericalError",
    "Problem",
    "ShapeError",
    "SolveReport",
    "Toeplitz",
    "cg_solve",
    "dense_solve",
    "fit_complexity",
    "run_accuracy",
    "run_complexity",
    "solve",
]
