"""Robust PCA by the inexact augmented Lagrange multiplier method.

Splits an observed matrix ``A`` into a low-rank backbone ``X`` and a sparse
noise term ``E`` by solving

    min ||X||_* + lam * ||E||_1   subject to   X + E = A.

Each sweep takes one proximal step per block (singular value thresholding for
``X``, elementwise shrinkage for ``E``), then a dual ascent step on ``Y`` and
a geometric increase of the penalty ``mu``.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import as_matrix, singular_value_threshold, soft_threshold

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RpcaOptions:
    """Solver settings. ``None`` fields are derived from the input matrix.

    lam defaults to ``1/sqrt(n)``, mu_initial to ``1.25/sigma_max(A)`` and
    mu_max to ``mu_initial * 1e7``.
    """

    lam: Optional[float] = None
    tol: float = 1e-7
    max_iter: int = 1000
    mu_initial: Optional[float] = None
    rho: float = 1.5
    mu_max: Optional[float] = None

    def __post_init__(self):
        if self.lam is not None and not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be non-negative, got {self.max_iter}")
        if not self.rho > 1:
            raise ValueError(f"rho must exceed 1, got {self.rho}")
        if self.mu_initial is not None and not self.mu_initial > 0:
            raise ValueError(f"mu_initial must be positive, got {self.mu_initial}")
        if self.mu_max is not None and not self.mu_max > 0:
            raise ValueError(f"mu_max must be positive, got {self.mu_max}")
        if (
            self.mu_initial is not None
            and self.mu_max is not None
            and self.mu_initial > self.mu_max
        ):
            raise ValueError("mu_initial must not exceed mu_max")


@dataclass
class RpcaSolution:
    backbone: np.ndarray
    noise: np.ndarray
    iterations: int
    converged: bool
    final_residual: float
    lam: float
    residual_history: list = field(default_factory=list, repr=False)

    def objective(self) -> float:
        s = np.linalg.svd(self.backbone, compute_uv=False)
        return float(s.sum() + self.lam * np.abs(self.noise).sum())


def solve_rpca(a, opts: Optional[RpcaOptions] = None) -> RpcaSolution:
    """Decompose square ``a`` into backbone + noise.

    Hitting ``max_iter`` is not an error: the last iterate comes back with
    ``converged=False`` and the residual it reached.
    """
    opts = opts or RpcaOptions()
    a = as_matrix(a)
    if a.shape[0] != a.shape[1] or a.shape[0] < 2:
        raise ValueError(f"expected a square matrix with n >= 2, got {a.shape}")
    n = a.shape[0]
    lam = opts.lam if opts.lam is not None else 1.0 / math.sqrt(n)

    norm_a = float(np.linalg.norm(a, "fro"))
    if norm_a == 0.0:
        z = np.zeros_like(a)
        return RpcaSolution(z, z.copy(), 0, True, 0.0, lam, [0.0])

    sigma_max = float(np.linalg.norm(a, 2))
    inf_norm = float(np.abs(a).max())
    mu = opts.mu_initial if opts.mu_initial is not None else 1.25 / sigma_max
    mu_max = opts.mu_max if opts.mu_max is not None else mu * 1e7
    if mu > mu_max:
        raise ValueError("mu_initial must not exceed mu_max")

    y = a / max(sigma_max, inf_norm / lam)
    e = np.zeros_like(a)
    x = np.zeros_like(a)
    residual = 1.0
    history = []
    converged = False
    it = 0
    while it < opts.max_iter:
        it += 1
        x = singular_value_threshold(a - e + y / mu, 1.0 / mu)
        e = soft_threshold(a - x + y / mu, lam / mu)
        r = a - x - e
        y += mu * r
        mu = min(opts.rho * mu, mu_max)
        residual = float(np.linalg.norm(r, "fro")) / norm_a
        history.append(residual)
        if residual <= opts.tol:
            converged = True
            break

    if not converged:
        log.warning(
            "robust PCA stopped after %d iterations at residual %.3e (tol %.1e)",
            it, residual, opts.tol,
        )
    return RpcaSolution(x, e, it, converged, residual, lam, history)


def recoverability_index(m_observed: int, n: int, r: int) -> float:
    """``m / (n**1.2 * r * ln n)``; the unknown leading constant is left out."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if r < 1:
        raise ValueError(f"rank must be at least 1, got {r}")
    if m_observed < 0:
        raise ValueError(f"observed count must be non-negative, got {m_observed}")
    return m_observed / (n ** 1.2 * r * math.log(n))
