from typing import Optional, Sequence

from .benchmark import run_benchmark
from .citest.lrt import TestConfig
from .embedding.embedder import BasisSpec, embed_dataset, scale_columns
from .embedding.table import DataTable
from .evaluation.metrics import MetricsReport, compare_graphs
from .graph.core import Graph
from .graph.knowledge import Knowledge
from .graph.text import read_graph, write_graph
from .loaders import load_csv, parse_knowledge, write_csv
from .runner import BOSS, RunConfig, RunResult, run_search
from .scoring.bic import ScoreConfig
from .search.boss import boss_search
from .search.pcmax import DEFAULT_MAX_DEPTH, pcmax_search
from .simulation.scenario import SimulationSpec, parse_sim_spec, simulate


class CausalDiscoveryAPI:
    """
    Unified API for loading data, simulating, searching and comparing graphs.

    This provides a single entry point for all functionality of the toolkit.
    """

    def __init__(self, truncation_limit: int = 3):
        """
        Parameters:
        -----------
        truncation_limit : int
            Default number of Legendre terms per continuous variable
        """
        self.basis = BasisSpec(truncation_limit)

    def load_data(self, path) -> DataTable:
        """Read a CSV file with type inference."""
        return load_csv(path)

    def load_knowledge(self, path, table: DataTable, exclude: Sequence[str] = ()) -> Knowledge:
        """Read a knowledge file against the variables of ``table``."""
        return parse_knowledge(path, table.names, exclude)

    def simulate(self, spec="nodes=10,edges=10,n=1000,type=continuous", seed: int = 0):
        """
        Simulate a dataset and its true DAG.

        Parameters:
        -----------
        spec : str or SimulationSpec
            Either a ``--sim`` style string or a SimulationSpec
        seed : int
            Random seed

        Returns:
        --------
        tuple of (DataTable, Graph)
        """
        if isinstance(spec, str):
            spec = parse_sim_spec(spec)
        return simulate(spec, seed)

    def search(self, table: DataTable, algorithm: str = BOSS, penalty_discount: float = 1.0,
               alpha: float = 0.01, knowledge: Optional[Knowledge] = None, seed: int = 0,
               max_depth: int = DEFAULT_MAX_DEPTH, truncation_limit: Optional[int] = None) -> Graph:
        """
        Run BOSS with BF-BIC or PC-Max with BF-LRT on an in-memory table.

        Returns:
        --------
        Graph
            Estimated CPDAG
        """
        basis = BasisSpec(truncation_limit) if truncation_limit is not None else self.basis
        embedded = embed_dataset(scale_columns(table), basis)
        if algorithm == BOSS:
            return boss_search(embedded, ScoreConfig(penalty_discount, basis), knowledge, seed)
        return pcmax_search(embedded, TestConfig(alpha, basis), knowledge, max_depth)

    def compare(self, estimated: Graph, truth: Graph) -> MetricsReport:
        """Adjacency, arrowhead and SHD metrics of ``estimated`` against ``truth``."""
        return compare_graphs(estimated, truth)

    def run(self, config: RunConfig) -> RunResult:
        """Execute a fully configured run, including its output files."""
        return run_search(config)

    def benchmark(self, grid_path, out_dir, workers: int = 1, plot_path: Optional[str] = None):
        return run_benchmark(grid_path, out_dir, workers, plot_path)

    @staticmethod
    def read_graph(path) -> Graph:
        return read_graph(path)

    @staticmethod
    def write_graph(graph: Graph, path):
        write_graph(graph, path)

    @staticmethod
    def write_data(table: DataTable, path):
        write_csv(table, path)


__all__ = ['CausalDiscoveryAPI', 'SimulationSpec']
