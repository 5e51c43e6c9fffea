"""Score matrices for the low-rank (LR) predictor and the local similarity baselines.

Unweighted indices on a weighted graph use the binarized graph. Weighted
indices on an unweighted graph use unit weights and set
``ScoreMatrix.unit_weight_fallback``.
"""

import math
import warnings
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import kernels
from .graph import Graph, adjacency_matrix
from .rpca import RpcaOptions, RpcaSolution, solve_rpca

UNWEIGHTED_KINDS = ("CN", "AA", "RA", "CAR", "CAA", "CRA")
WEIGHTED_KINDS = ("WCN", "WAA", "WRA", "rWCN", "rWAA", "rWRA")
PREDICTORS = ("LR",) + UNWEIGHTED_KINDS + WEIGHTED_KINDS


class UnitWeightWarning(UserWarning):
    pass


@dataclass
class ScoreMatrix:
    scores: np.ndarray
    observed_mask: np.ndarray
    predictor: str
    unit_weight_fallback: bool = False
    solution: Optional[RpcaSolution] = None

    @property
    def n(self) -> int:
        return self.scores.shape[0]

    def recovered(self, train: Graph) -> np.ndarray:
        """``G = X + A``: observed weights plus scores of new links."""
        return self.scores * ~self.observed_mask + adjacency_matrix(train)


def canonical_predictor(name: str) -> str:
    """Case-insensitive lookup (``rwra`` -> ``rWRA``)."""
    for p in PREDICTORS:
        if p.lower() == name.lower():
            return p
    raise ValueError(f"unknown predictor {name!r}; valid: {', '.join(PREDICTORS)}")


def common_neighbors(train: Graph, x: int, y: int) -> set:
    n = train.n_vertices
    for v in (x, y):
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for {n} vertices")
    if x == y:
        raise ValueError("common neighbours need two distinct vertices")
    return train.neighbors(x) & train.neighbors(y)


def lr_default_lambda(a: np.ndarray) -> float:
    """Sparsity weight used by :func:`lr_scores` when none is given.

    ``1 / (2 sqrt(n D (1 - D)))`` with ``D`` the edge density: the reciprocal
    of the bulk spectral radius of a random graph of the same density. For
    smaller weights the all-zero backbone is optimal on typical adjacency
    matrices (every edge is absorbed as noise) and the scores carry no
    information; this includes the generic ``1/sqrt(n)``. Only the support
    of ``a`` enters, since the zero-backbone condition depends on the sign
    pattern alone.
    """
    n = a.shape[0]
    nnz = np.count_nonzero(a) - np.count_nonzero(np.diag(a))
    density = nnz / (n * (n - 1))
    if not 0 < density < 1:
        return 1.0 / math.sqrt(n)
    return 1.0 / (2.0 * math.sqrt(n * density * (1.0 - density)))


def lr_scores(train: Graph, opts: Optional[RpcaOptions] = None) -> ScoreMatrix:
    """Backbone scores for unobserved pairs (observed pairs score exactly 0).

    ``opts.lam=None`` selects :func:`lr_default_lambda`, not the solver's own
    ``1/sqrt(n)`` default.
    """
    a = adjacency_matrix(train)
    opts = opts or RpcaOptions()
    if opts.lam is None:
        opts = replace(opts, lam=lr_default_lambda(a))
    sol = solve_rpca(a, opts)
    backbone = sol.backbone + sol.backbone.T
    sol.backbone = backbone
    sol.noise = sol.noise + sol.noise.T
    observed = a != 0
    scores = np.where(observed, 0.0, backbone)
    np.fill_diagonal(scores, 0.0)
    return ScoreMatrix(scores, observed, "LR", solution=sol)


def _inverse(values: np.ndarray, transform) -> np.ndarray:
    out = np.zeros_like(values, dtype=np.float64)
    for i, v in enumerate(values):
        t = transform(v) if v > 0 else 0.0
        out[i] = 1.0 / t if t > 0 else 0.0
    return out


def similarity_scores(train: Graph, kind: str) -> ScoreMatrix:
    kind = canonical_predictor(kind)
    if kind == "LR":
        raise ValueError("use lr_scores for the LR predictor")
    fallback = False
    if kind in UNWEIGHTED_KINDS:
        adj = (adjacency_matrix(train) != 0).astype(np.float64)
    else:
        adj = adjacency_matrix(train)
        if not train.weighted:
            fallback = True
            warnings.warn(
                f"{kind} on an unweighted graph: using unit weights", UnitWeightWarning, stacklevel=2
            )
    observed = adj != 0
    degree = observed.sum(axis=1).astype(np.float64)
    strength = adj.sum(axis=1)
    ones = np.ones(train.n_vertices)
    ns = kernels.neighbor_sums

    if kind == "CN":
        s = ns(adj, ones, 0)
    elif kind == "AA":
        s = ns(adj, _inverse(degree, math.log), 0)
    elif kind == "RA":
        s = ns(adj, _inverse(degree, float), 0)
    elif kind == "CAR":
        s = ns(adj, ones, 0) * ns(adj, ones, 1) / 2.0
    elif kind == "CAA":
        s = ns(adj, _inverse(degree, math.log2), 1)
    elif kind == "CRA":
        s = ns(adj, _inverse(degree, float), 1)
    elif kind == "WCN":
        s = ns(adj, ones, 2)
    elif kind == "WAA":
        s = ns(adj, _inverse(strength, math.log1p), 2)
    elif kind == "WRA":
        s = ns(adj, _inverse(strength, float), 2)
    elif kind == "rWCN":
        s = ns(adj, ones, 3)
    elif kind == "rWAA":
        s = ns(adj, _inverse(strength, math.log1p), 3)
    else:  # rWRA
        s = ns(adj, _inverse(strength, float), 3)
    return ScoreMatrix(s, observed, kind, unit_weight_fallback=fallback)


def score(train: Graph, predictor: str, opts: Optional[RpcaOptions] = None) -> ScoreMatrix:
    predictor = canonical_predictor(predictor)
    if predictor == "LR":
        return lr_scores(train, opts)
    return similarity_scores(train, predictor)
