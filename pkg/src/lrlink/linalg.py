"""Dense linear-algebra kernels used by the robust PCA solver and graph statistics.

Matrices are plain 2-D ``float64`` numpy arrays. :func:`as_matrix` is the single
validation point: it rejects ragged input, empty shapes where they matter and
non-finite entries.
"""

from typing import NamedTuple

import numpy as np


class NumericalError(ArithmeticError):
    """Raised when an iterative factorization fails to converge."""


class SvdResult(NamedTuple):
    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.T


def as_matrix(m, *, allow_empty: bool = True) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D float64 array (copying only if needed)."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not allow_empty and arr.size == 0:
        raise ValueError("matrix must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def svd(m) -> SvdResult:
    """Thin SVD ``m = U diag(s) V^T`` with ``s`` non-increasing.

    Backed by LAPACK's divide-and-conquer driver; falls back to the slower but
    more robust QR-iteration driver when that one fails to converge.
    """
    a = as_matrix(m, allow_empty=False)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError:
        try:
            from scipy.linalg import svd as _scipy_svd

            u, s, vt = _scipy_svd(a, full_matrices=False, lapack_driver="gesvd")
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise NumericalError(f"SVD did not converge: {exc}") from exc
    return SvdResult(u, s, vt.T)


def soft_threshold(m, tau: float) -> np.ndarray:
    """Elementwise shrinkage ``sign(x) * max(|x| - tau, 0)``."""
    if tau < 0:
        raise ValueError(f"threshold must be non-negative, got {tau}")
    a = as_matrix(m) if np.ndim(m) == 2 else np.asarray(m, dtype=np.float64)
    return np.sign(a) * np.maximum(np.abs(a) - tau, 0.0)


def singular_value_threshold(m, tau: float) -> np.ndarray:
    """Proximal operator of ``tau * ||.||_*``: shrink every singular value by ``tau``."""
    if tau < 0:
        raise ValueError(f"threshold must be non-negative, got {tau}")
    u, s, v = svd(m)
    s = np.maximum(s - tau, 0.0)
    keep = int(np.count_nonzero(s))
    if keep == 0:
        return np.zeros((u.shape[0], v.shape[0]))
    return (u[:, :keep] * s[:keep]) @ v[:, :keep].T


def nuclear_norm(m) -> float:
    a = as_matrix(m, allow_empty=False)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError:
        s = svd(a).singular_values
    return float(s.sum())


def l1_norm(m) -> float:
    return float(np.abs(as_matrix(m)).sum())


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(as_matrix(m), "fro")) if np.size(m) else 0.0


def numerical_rank(m) -> int:
    """Count singular values above ``max(rows, cols) * eps * sigma_max``."""
    a = as_matrix(m, allow_empty=False)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError:
        s = svd(a).singular_values
    if s.size == 0 or s[0] == 0.0:
        return 0
    tol = max(a.shape) * np.finfo(np.float64).eps * s[0]
    return int(np.count_nonzero(s > tol))
