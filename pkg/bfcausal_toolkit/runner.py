"""Single search runs: data preparation, dispatch, output files."""

import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .citest.lrt import TestConfig
from .embedding.embedder import BasisSpec, embed_dataset, scale_columns
from .embedding.table import DataTable
from .errors import ConfigurationError
from .evaluation.metrics import MetricsReport, compare_graphs
from .graph.core import Graph
from .graph.knowledge import Knowledge
from .graph.text import read_graph, write_graph
from .loaders import load_csv, parse_knowledge
from .scoring.bic import ScoreConfig
from .search.boss import boss_search
from .search.deadline import Deadline
from .search.pcmax import DEFAULT_MAX_DEPTH, pcmax_search
from .simulation.scenario import SimulationSpec, simulate

logger = logging.getLogger(__name__)

BOSS = "boss"
PCMAX = "pcmax"
ALGORITHMS = (BOSS, PCMAX)


@dataclass(frozen=True)
class RunConfig:
    """
    Parameters:
    -----------
    algorithm : str
        ``"boss"`` or ``"pcmax"``
    truncation_limit : int
        Legendre terms per continuous variable
    penalty_discount : float, optional
        Required for BOSS
    alpha : float, optional
        Required for PC-Max
    max_depth : int
        PC-Max conditioning depth
    seed : int
        Search seed, also the simulation seed
    knowledge_path, input_path, truth_path : str, optional
        Input files
    simulation : SimulationSpec, optional
        Simulated input used when no ``input_path`` is given
    out_graph, out_metrics : str, optional
        Output files
    timeout : float, optional
        Wall-clock limit in seconds
    exclude : tuple of str
        Variables dropped before the search
    workers : int
        Threads for PC-Max tests within one depth
    """

    algorithm: str = BOSS
    truncation_limit: int = 3
    penalty_discount: Optional[float] = None
    alpha: Optional[float] = None
    max_depth: int = DEFAULT_MAX_DEPTH
    seed: int = 0
    knowledge_path: Optional[str] = None
    input_path: Optional[str] = None
    truth_path: Optional[str] = None
    simulation: Optional[SimulationSpec] = None
    out_graph: Optional[str] = None
    out_metrics: Optional[str] = None
    timeout: Optional[float] = None
    exclude: Tuple[str, ...] = field(default_factory=tuple)
    workers: int = 1

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"Algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.algorithm == BOSS and self.penalty_discount is None:
            raise ConfigurationError("BOSS needs a penalty discount (--penalty)")
        if self.algorithm == PCMAX and self.alpha is None:
            raise ConfigurationError("PC-Max needs a significance level (--alpha)")
        if self.input_path is None and self.simulation is None:
            raise ConfigurationError("Give either a data file (--data) or a simulation (--sim)")
        if self.input_path is not None and self.simulation is not None:
            raise ConfigurationError("--data and --sim cannot be combined")
        if self.timeout is not None and self.timeout <= 0:
            raise ConfigurationError("Timeout must be positive")

    @property
    def basis(self) -> BasisSpec:
        return BasisSpec(self.truncation_limit)

    def score_config(self) -> ScoreConfig:
        return ScoreConfig(self.penalty_discount, self.basis)

    def test_config(self) -> TestConfig:
        return TestConfig(self.alpha, self.basis)


@dataclass
class RunResult:
    graph: Graph
    metrics: Optional[MetricsReport]
    elapsed: float
    truth: Optional[Graph] = None


def prepare_data(cfg: RunConfig) -> Tuple[DataTable, Optional[Graph]]:
    """Load or simulate the table and the truth graph, then drop excluded columns."""
    truth = None
    if cfg.input_path is not None:
        table = load_csv(cfg.input_path)
    else:
        table, truth = simulate(cfg.simulation, cfg.seed)
    if cfg.truth_path is not None:
        truth = read_graph(cfg.truth_path)
    if cfg.exclude:
        table = table.drop(cfg.exclude)
        if truth is not None:
            truth = _restrict(truth, table.names)
    return table, truth


def _restrict(truth: Graph, names: Sequence[str]) -> Graph:
    kept = [truth.node_id(name) for name in names]
    position = {old: new for new, old in enumerate(kept)}
    variables = [truth.variable(old).with_id(new) for new, old in enumerate(kept)]
    restricted = Graph(variables, (), truth.kind, validate=False)
    for edge in truth.edges():
        if edge.a in position and edge.b in position:
            if edge.is_directed:
                restricted.add_directed(position[edge.source], position[edge.target])
            else:
                restricted.add_undirected(position[edge.a], position[edge.b])
    return restricted.validate()


def search_table(table: DataTable, cfg: RunConfig, knowledge: Optional[Knowledge] = None,
                 deadline: Optional[Deadline] = None) -> Graph:
    """Scale, embed and run the configured search on an in-memory table."""
    embedded = embed_dataset(scale_columns(table), cfg.basis)
    if cfg.algorithm == BOSS:
        return boss_search(embedded, cfg.score_config(), knowledge, cfg.seed, deadline=deadline)
    return pcmax_search(embedded, cfg.test_config(), knowledge, cfg.max_depth,
                        workers=cfg.workers, deadline=deadline)


def run_search(cfg: RunConfig) -> RunResult:
    """
    Execute one configured search and write its outputs.

    Returns:
    --------
    RunResult
        Estimated CPDAG, metrics when a truth graph is known, elapsed seconds
    """
    table, truth = prepare_data(cfg)
    knowledge = None
    if cfg.knowledge_path is not None:
        knowledge = parse_knowledge(cfg.knowledge_path, table.names, cfg.exclude)

    start = time.perf_counter()
    graph = search_table(table, cfg, knowledge, Deadline(cfg.timeout))
    elapsed = time.perf_counter() - start
    logger.info("%s finished in %.2f s with %d edges", cfg.algorithm, elapsed, graph.num_edges)

    metrics = compare_graphs(graph, truth, elapsed) if truth is not None else None
    if cfg.out_graph:
        write_graph(graph, cfg.out_graph)
    if cfg.out_metrics:
        payload = metrics.to_dict() if metrics is not None else {"elapsed": elapsed}
        directory = os.path.dirname(cfg.out_metrics)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(cfg.out_metrics, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
    return RunResult(graph, metrics, elapsed, truth)
