"""Link prediction by robust PCA recovery of a network's low-rank backbone."""

from importlib import resources

__version__ = "0.1.0"

from .graph import (
    Graph,
    Split,
    NetworkStats,
    adjacency_matrix,
    network_stats,
    parse_edge_list,
    read_edge_list,
    split_train_probe,
)
from .rpca import RpcaOptions, RpcaSolution, recoverability_index, solve_rpca
from .predict import PREDICTORS, ScoreMatrix, common_neighbors, lr_scores, similarity_scores
from .evaluate import PredictionOutcome, SweepReport, precision_at_probe, run_experiment, sweep


def fixture_path(name: str):
    """Path of a bundled edge list (``karate``, ``lesmis``, ``florentine``, or a dropped-in ``jazz``)."""
    path = resources.files(__name__).joinpath("data", f"{name}.edges")
    if not path.is_file():
        raise FileNotFoundError(
            f"no bundled network {name!r}; place {name}.edges in {path.parent}"
        )
    return path


def load_fixture(name: str, weighted: bool = False) -> Graph:
    return read_edge_list(fixture_path(name), weighted=weighted)
