"""Top-L ranking, precision and probe-fraction sweeps.

With ``L = |probe|`` precision and recall coincide: both are ``hits / L``.
"""

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph, Pair, split_train_probe
from .predict import ScoreMatrix, canonical_predictor, score
from .rpca import RpcaOptions

_MASK64 = (1 << 64) - 1


@dataclass
class PredictionOutcome:
    ranked_links: List[Tuple[Pair, float]]
    hits: int
    probe_size: int
    predictor: str = ""
    seed: Optional[int] = None

    @property
    def precision(self) -> float:
        return self.hits / self.probe_size

    @property
    def recall(self) -> float:
        return self.hits / self.probe_size


@dataclass
class SweepReport:
    network: str
    predictor: str
    probe_fraction: float
    per_run: List[Tuple[int, float]] = field(default_factory=list)

    @property
    def repetitions(self) -> int:
        return len(self.per_run)

    @property
    def mean_precision(self) -> float:
        return statistics.fmean(p for _, p in self.per_run)

    @property
    def std_precision(self) -> float:
        return statistics.pstdev(p for _, p in self.per_run)


def rank_candidates(scores: ScoreMatrix, limit: Optional[int] = None):
    """Unobserved pairs ordered by score descending, then ``(i, j)`` ascending."""
    n = scores.n
    iu, ju = np.triu_indices(n, 1)
    keep = ~scores.observed_mask[iu, ju]
    iu, ju = iu[keep], ju[keep]
    s = scores.scores[iu, ju]
    order = np.lexsort((ju, iu, -s))
    if limit is not None:
        order = order[:limit]
    return [((int(iu[k]), int(ju[k])), float(s[k])) for k in order]


def precision_at_probe(scores: ScoreMatrix, train: Graph, probe: Mapping[Pair, float]) -> PredictionOutcome:
    if not probe:
        raise ValueError("probe set is empty")
    probe_pairs = {(min(p), max(p)) for p in probe}
    overlap = [p for p in probe_pairs if train.has_edge(*p)]
    if overlap:
        raise ValueError(f"probe overlaps the training edges, e.g. {overlap[0]}")
    mask = scores.observed_mask
    n = scores.n
    train_mask = np.zeros((n, n), dtype=bool)
    for i, j in train.edges:
        train_mask[i, j] = train_mask[j, i] = True
    if not np.array_equal(mask, train_mask):
        scores = ScoreMatrix(scores.scores, train_mask, scores.predictor, scores.unit_weight_fallback)
    size = len(probe_pairs)
    ranked = rank_candidates(scores, limit=size)
    hits = sum(1 for p, _ in ranked if p in probe_pairs)
    return PredictionOutcome(ranked, hits, size, scores.predictor)


def run_experiment(
    g: Graph,
    predictor: str,
    fraction: float,
    seed: int,
    opts: Optional[RpcaOptions] = None,
) -> PredictionOutcome:
    predictor = canonical_predictor(predictor)
    if g.is_complete():
        raise ValueError("graph is complete: every pair is observed, nothing to predict")
    split = split_train_probe(g, fraction, seed)
    outcome = precision_at_probe(score(split.train, predictor, opts), split.train, split.probe)
    outcome.predictor = predictor
    outcome.seed = seed
    return outcome


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def run_seed(base_seed: int, fraction_index: int, repetition: int) -> int:
    """Split seed for one sweep cell; shared by all predictors so comparisons are paired."""
    h = splitmix64(base_seed & _MASK64)
    h = splitmix64(h ^ fraction_index)
    h = splitmix64(h ^ repetition)
    return h >> 1  # fits a signed 64-bit seed


def _cell(args):
    g, predictor, fraction, seed, opts = args
    return run_experiment(g, predictor, fraction, seed, opts).precision


def sweep(
    g: Graph,
    predictors: Sequence[str],
    fractions: Sequence[float],
    repetitions: int,
    base_seed: int = 0,
    opts: Optional[RpcaOptions] = None,
    network: str = "",
    workers: int = 1,
) -> List[SweepReport]:
    """Run every (predictor, fraction, repetition) cell; reports come back in grid order."""
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    predictors = [canonical_predictor(p) for p in predictors]
    for f in fractions:
        if not 0 < f < 1:
            raise ValueError(f"probe fraction must lie in (0, 1), got {f}")
    cells = []
    for p in predictors:
        for fi, f in enumerate(fractions):
            for r in range(repetitions):
                cells.append((g, p, f, run_seed(base_seed, fi, r), opts))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell, cells))
    else:
        results = [_cell(c) for c in cells]

    reports = []
    it = iter(zip(cells, results))
    for p in predictors:
        for f in fractions:
            rep = SweepReport(network, p, f)
            for _ in range(repetitions):
                (_, _, _, seed, _), prec = next(it)
                rep.per_run.append((seed, prec))
            reports.append(rep)
    return reports
