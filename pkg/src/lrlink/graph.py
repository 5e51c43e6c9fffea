"""Undirected graph model, edge-list ingestion, train/probe splits and topology statistics."""

import io
import math
import os
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Tuple, Union

import numpy as np

from .linalg import numerical_rank

Pair = Tuple[int, int]


class EdgeListError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class EdgeListWarning(UserWarning):
    pass


def _pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class Graph:
    """Vertex-labelled simple undirected graph.

    ``edges`` maps each unordered pair ``(i, j)`` with ``i < j`` to a positive
    weight (1.0 for unweighted graphs).
    """

    labels: Tuple[str, ...]
    edges: Mapping[Pair, float]
    weighted: bool = False

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be distinct")
        clean = {}
        for (i, j), w in self.edges.items():
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for {n} vertices")
            if not w > 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
            p = _pair(i, j)
            if p in clean:
                raise ValueError(f"duplicate edge {p}")
            clean[p] = float(w)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_edges(cls, n_or_labels, edges: Iterable, weighted: bool = False) -> "Graph":
        """Build from ``(i, j)`` or ``(i, j, w)`` tuples over vertices ``0..n-1`` (or given labels)."""
        if isinstance(n_or_labels, int):
            labels = tuple(str(i) for i in range(n_or_labels))
        else:
            labels = tuple(n_or_labels)
        mapping = {}
        for e in edges:
            i, j = int(e[0]), int(e[1])
            mapping[_pair(i, j)] = float(e[2]) if len(e) > 2 else 1.0
        return cls(labels, mapping, weighted)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _pair(i, j) in self.edges

    def degrees(self) -> np.ndarray:
        k = np.zeros(self.n_vertices, dtype=np.int64)
        for i, j in self.edges:
            k[i] += 1
            k[j] += 1
        return k

    def neighbors(self, i: int) -> set:
        if not 0 <= i < self.n_vertices:
            raise IndexError(f"vertex {i} out of range")
        return {b if a == i else a for a, b in self.edges if i in (a, b)}

    def is_complete(self) -> bool:
        n = self.n_vertices
        return self.n_edges == n * (n - 1) // 2

    def binarized(self) -> "Graph":
        return Graph(self.labels, {p: 1.0 for p in self.edges}, weighted=False)

    def relabeled(self, perm) -> "Graph":
        """Move vertex ``i`` to position ``perm[i]`` (labels follow their vertex)."""
        perm = list(perm)
        labels = [None] * len(perm)
        for old, new in enumerate(perm):
            labels[new] = self.labels[old]
        edges = {_pair(perm[i], perm[j]): w for (i, j), w in self.edges.items()}
        return Graph(tuple(labels), edges, self.weighted)

    def __reduce__(self):
        return (Graph, (self.labels, dict(self.edges), self.weighted))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and dict(self.edges) == dict(other.edges)
            and self.weighted == other.weighted
        )

    def __repr__(self):
        kind = "weighted" if self.weighted else "unweighted"
        return f"Graph(n={self.n_vertices}, m={self.n_edges}, {kind})"


def parse_edge_list(text: Union[str, Iterable[str]], weighted: bool = False) -> Graph:
    """Parse whitespace-separated ``u v [w]`` lines.

    Lines starting with ``#`` or ``%`` are comments. Duplicate pairs keep the
    first weight; self-loops are dropped. Both are reported through
    :class:`EdgeListWarning`, as are 2-token lines in weighted mode (weight 1).
    """
    lines = io.StringIO(text) if isinstance(text, str) else text
    index = {}
    edges = {}
    duplicates = self_loops = defaulted = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise EdgeListError(f"expected 'u v' or 'u v w', got {len(tokens)} tokens", lineno)
        w = 1.0
        if weighted:
            if len(tokens) == 3:
                try:
                    w = float(tokens[2])
                except ValueError:
                    raise EdgeListError(f"bad weight {tokens[2]!r}", lineno) from None
                if not math.isfinite(w) or w <= 0:
                    raise EdgeListError(f"weight must be positive and finite, got {tokens[2]}", lineno)
            else:
                defaulted += 1
        u, v = tokens[0], tokens[1]
        i = index.setdefault(u, len(index))
        j = index.setdefault(v, len(index))
        if i == j:
            self_loops += 1
            continue
        p = _pair(i, j)
        if p in edges:
            duplicates += 1
            continue
        edges[p] = w

    if self_loops:
        warnings.warn(f"dropped {self_loops} self-loop(s)", EdgeListWarning, stacklevel=2)
    if duplicates:
        warnings.warn(f"collapsed {duplicates} duplicate edge(s)", EdgeListWarning, stacklevel=2)
    if defaulted:
        warnings.warn(f"{defaulted} line(s) without weight given weight 1", EdgeListWarning, stacklevel=2)
    return Graph(tuple(index), edges, weighted)


def read_edge_list(path: Union[str, os.PathLike], weighted: bool = False) -> Graph:
    with open(path, encoding="utf-8") as f:
        return parse_edge_list(f, weighted=weighted)


def adjacency_matrix(g: Graph) -> np.ndarray:
    n = g.n_vertices
    a = np.zeros((n, n))
    if g.n_edges:
        ij = np.array(list(g.edges.keys()), dtype=np.intp)
        w = np.fromiter(g.edges.values(), dtype=np.float64, count=g.n_edges)
        a[ij[:, 0], ij[:, 1]] = w
        a[ij[:, 1], ij[:, 0]] = w
    return a


@dataclass(frozen=True, eq=False)
class Split:
    train: Graph
    probe: Mapping[Pair, float]
    seed: int
    probe_fraction: float


def probe_size(n_edges: int, fraction: float) -> int:
    # Python's round() is ties-to-even
    return int(round(fraction * n_edges))


def split_train_probe(g: Graph, fraction: float, seed: int) -> Split:
    """Hold out ``round(fraction * |E|)`` edges chosen uniformly without replacement."""
    if not 0 < fraction < 1:
        raise ValueError(f"probe fraction must lie in (0, 1), got {fraction}")
    if g.n_edges < 2:
        raise ValueError("need at least 2 edges to split")
    k = probe_size(g.n_edges, fraction)
    if k <= 0 or k >= g.n_edges:
        raise ValueError(f"probe fraction {fraction} gives probe size {k} of {g.n_edges} edges")
    pairs = list(g.edges)
    rng = np.random.default_rng(seed)
    chosen = set(rng.choice(len(pairs), size=k, replace=False).tolist())
    probe, train = {}, {}
    for idx, p in enumerate(pairs):
        (probe if idx in chosen else train)[p] = g.edges[p]
    return Split(
        Graph(g.labels, train, g.weighted),
        MappingProxyType(probe),
        seed,
        fraction,
    )


@dataclass(frozen=True)
class NetworkStats:
    n_vertices: int
    n_edges: int
    clustering: Optional[float]
    assortativity: Optional[float]
    avg_degree: float
    heterogeneity: Optional[float]
    rank: int
    rank_ratio: float
    density: float

    COLUMNS = ("n", "|E|", "C", "r", "<k>", "H", "R", "tau", "D")

    def row(self) -> tuple:
        return (
            self.n_vertices, self.n_edges, self.clustering, self.assortativity,
            self.avg_degree, self.heterogeneity, self.rank, self.rank_ratio, self.density,
        )


def average_clustering(a: np.ndarray) -> float:
    """Mean local clustering; vertices of degree < 2 contribute 0."""
    b = (a != 0).astype(np.float64)
    k = b.sum(axis=1)
    triangles = ((b @ b) * b).sum(axis=1) / 2.0
    possible = k * (k - 1) / 2.0
    local = np.divide(triangles, possible, out=np.zeros_like(k), where=possible > 0)
    return float(local.mean())


def degree_assortativity(a: np.ndarray) -> Optional[float]:
    """Pearson correlation of end-point degrees over edges, ``None`` if undefined."""
    b = a != 0
    k = b.sum(axis=1).astype(np.float64)
    i, j = np.nonzero(np.triu(b, 1))
    if i.size == 0:
        return None
    x = np.concatenate([k[i], k[j]])
    y = np.concatenate([k[j], k[i]])
    xc = x - x.mean()
    yc = y - y.mean()
    denom = math.sqrt(float(xc @ xc) * float(yc @ yc))
    if denom <= 1e-12 * max(1.0, float(x @ x)):
        return None
    return float(xc @ yc) / denom


def network_stats(g: Graph) -> NetworkStats:
    n, m = g.n_vertices, g.n_edges
    if n < 2:
        raise ValueError("statistics need at least 2 vertices")
    a = adjacency_matrix(g)
    binary = (a != 0).astype(np.float64)
    k = binary.sum(axis=1)
    mean_k = k.mean()
    heterogeneity = float((k ** 2).mean() / mean_k ** 2) if mean_k > 0 else None
    if n >= 3:
        clustering = average_clustering(binary)
        assortativity = degree_assortativity(binary)
    else:
        clustering = assortativity = None
    rank = numerical_rank(binary)
    return NetworkStats(
        n_vertices=n,
        n_edges=m,
        clustering=clustering,
        assortativity=assortativity,
        avg_degree=2.0 * m / n,
        heterogeneity=heterogeneity,
        rank=rank,
        rank_ratio=rank / n,
        density=2.0 * m / (n * (n - 1)),
    )
