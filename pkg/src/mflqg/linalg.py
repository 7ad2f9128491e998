"""Small linear-algebra helpers with the package's numerical policy baked in.

Symmetry is checked before it is enforced, definiteness checks use fixed
tolerances, and positive-definite solves go through a Cholesky
factorization whose pivots are screened with a relative threshold so that
uniformly tiny but well-conditioned matrices still pass.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NotPositiveDefinite, NotPositiveSemidefinite, NotSymmetric, NumericalFailure

# max |M - M.T| allowed, relative to max(1, |M|), before symmetrization
SYMMETRY_TOL = 1e-10
# smallest eigenvalue allowed for "positive semidefinite"
PSD_TOL = 1e-10
# squared relative Cholesky pivot below this counts as numerically singular
PIVOT_TOL = 1e-12
# eigenvalues of a covariance below this fraction of the largest are zeroed
FACTOR_CLIP = 1e-12


def symmetrize(mat: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Return (M + M.T)/2 after checking M is symmetric to tolerance."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NotSymmetric(f"{name} is not square: shape {mat.shape}")
    if mat.size:
        scale = max(1.0, float(np.max(np.abs(mat))))
        asym = float(np.max(np.abs(mat - mat.T)))
        if asym > SYMMETRY_TOL * scale:
            raise NotSymmetric(
                f"{name} is asymmetric: max |M - M.T| = {asym:.3e} "
                f"exceeds {SYMMETRY_TOL:.0e} * max(1, |M|)"
            )
    return (mat + mat.T) / 2.0


def assert_psd(mat: np.ndarray, name: str = "matrix") -> None:
    """Raise unless the symmetric matrix has no eigenvalue below -PSD_TOL."""
    eigs = np.linalg.eigvalsh(mat)
    if eigs.size and float(eigs[0]) < -PSD_TOL:
        raise NotPositiveSemidefinite(
            f"{name} has smallest eigenvalue {float(eigs[0]):.3e} < -{PSD_TOL:.0e}"
        )


def assert_pd(mat: np.ndarray, name: str = "matrix") -> None:
    """Raise unless the symmetric matrix passes a pivot-screened Cholesky."""
    try:
        chol = np.linalg.cholesky(mat)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{name} is not positive definite: {exc}") from None
    pivots = np.diag(chol)
    lo, hi = float(pivots.min()), float(pivots.max())
    if lo <= 0.0 or (lo / hi) ** 2 <= PIVOT_TOL:
        raise NotPositiveDefinite(
            f"{name} is numerically singular: relative pivot {(lo / hi) ** 2:.3e}"
        )


def spd_solve(mat: np.ndarray, rhs: np.ndarray, context: str = "linear solve") -> np.ndarray:
    """Solve mat @ x = rhs for symmetric positive definite mat.

    Raises NumericalFailure instead of a validation error: callers use this
    for matrices produced mid-recursion (innovation covariances, regularized
    curvature terms) where failure means the computation, not the input,
    broke down.
    """
    mat = np.asarray(mat, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    try:
        factor = scipy.linalg.cho_factor(mat, lower=True, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"{context}: Cholesky failed ({exc})") from None
    pivots = np.abs(np.diag(factor[0]))
    lo, hi = float(pivots.min()), float(pivots.max())
    if lo <= 0.0 or (lo / hi) ** 2 <= PIVOT_TOL:
        raise NumericalFailure(
            f"{context}: matrix numerically singular, relative pivot {(lo / hi) ** 2:.3e}"
        )
    return scipy.linalg.cho_solve(factor, rhs, check_finite=False)


def psd_factor(cov: np.ndarray, name: str = "covariance") -> np.ndarray:
    """Return L with L @ L.T = cov for a possibly singular covariance.

    Uses an eigendecomposition and zeroes eigenvalues below FACTOR_CLIP
    times the largest, so exactly singular covariances (including the zero
    matrix) factor cleanly for sampling.
    """
    cov = symmetrize(cov, name)
    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals.size and float(eigvals[0]) < -PSD_TOL:
        raise NotPositiveSemidefinite(
            f"{name} has smallest eigenvalue {float(eigvals[0]):.3e} < -{PSD_TOL:.0e}"
        )
    top = max(float(eigvals[-1]), 0.0) if eigvals.size else 0.0
    clipped = np.where(eigvals > FACTOR_CLIP * top, eigvals, 0.0)
    return eigvecs * np.sqrt(clipped)[np.newaxis, :]
