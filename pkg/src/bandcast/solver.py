"""Regularized solve of the normal equations and spectrum diagnostics.

The system matrix is positive definite in exact arithmetic but often
numerically indefinite once N exceeds the window's time-bandwidth capacity,
because eigenvalues that are exactly positive yet far below quadrature
noise come out with either sign.  The solve therefore tries a Cholesky
factorization of R + lambda*I first and, when that fails, falls back to an
eigendecomposition that inverts every eigenvalue above a machine-level
cutoff; the report records which path ran.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ContractError, NumericalError
from .gram import GramSystem

DEFAULT_LAMBDA = 0.001

METHOD_CHOLESKY = "cholesky"
METHOD_EIGEN_FALLBACK = "eigen_fallback"


@dataclass(frozen=True)
class SolveReport:
    """Solution vector plus residual and conditioning diagnostics.

    residual_e is ||R y - r||_2 against the unshifted matrix; min_eig,
    max_eig and condition describe the shifted matrix actually factorized.
    """

    coefficients: np.ndarray
    lam: float
    residual_e: float
    min_eig: float
    max_eig: float
    condition: float
    method: str


def solve_regularized(g: GramSystem, lam: float = 0.0) -> SolveReport:
    """Solve (R + lam*I) y = r and report residual and spectrum bounds."""
    if not lam >= 0:
        raise ContractError(f"lambda must be >= 0, got {lam}")
    r_matrix = g.r_matrix
    load = g.load
    dim = r_matrix.shape[0]
    shifted = r_matrix + lam * np.eye(dim)

    eigs = np.linalg.eigvalsh(shifted)
    min_eig = float(eigs[0])
    max_eig = float(eigs[-1])
    condition = max_eig / min_eig if min_eig > 0 else float("inf")

    try:
        factor = scipy.linalg.cho_factor(shifted, lower=True)
        coefficients = scipy.linalg.cho_solve(factor, load)
        method = METHOD_CHOLESKY
    except scipy.linalg.LinAlgError:
        coefficients = _eigen_pseudo_solve(shifted, load)
        method = METHOD_EIGEN_FALLBACK

    if not np.all(np.isfinite(coefficients)):
        raise NumericalError("solve produced non-finite coefficients")

    residual = float(np.linalg.norm(r_matrix @ coefficients - load))
    return SolveReport(
        coefficients=coefficients,
        lam=float(lam),
        residual_e=residual,
        min_eig=min_eig,
        max_eig=max_eig,
        condition=condition,
        method=method,
    )


def _eigen_pseudo_solve(matrix: np.ndarray, load: np.ndarray) -> np.ndarray:
    """Invert on the span of eigenvalues above a machine-level cutoff.

    The cutoff only screens out exact numerical zeros; eigenvalues at the
    quadrature-noise level are still inverted, which reproduces the
    amplification a direct solve of the near-degenerate system exhibits.
    """
    w, v = np.linalg.eigh(matrix)
    scale = np.max(np.abs(w))
    if scale == 0.0:
        return np.zeros_like(load)
    cutoff = scale * matrix.shape[0] * np.finfo(float).eps
    inv = np.where(np.abs(w) > cutoff, 1.0 / np.where(w == 0, 1.0, w), 0.0)
    return v @ (inv * (v.T @ load))


def ridge_solve(g: GramSystem, eps: float) -> SolveReport:
    """Solve the coefficient-norm-penalized problem: shift lambda = eps^2."""
    if not eps >= 0:
        raise ContractError(f"eps must be >= 0, got {eps}")
    return solve_regularized(g, eps * eps)


def spectrum(g: GramSystem) -> np.ndarray:
    """All eigenvalues of the (unshifted) symmetric matrix, ascending."""
    return np.linalg.eigvalsh(g.r_matrix)
