"""Random ground-truth DAGs."""

import numpy as np

from ..errors import TooManyEdgesError
from ..graph.core import Edge, Graph, GraphKind, variables_from_names


def node_names(num_nodes: int):
    return [f"X{i + 1}" for i in range(num_nodes)]


def random_dag(num_nodes: int, num_edges: int, seed: int = 0) -> Graph:
    """
    Uniform random DAG with exactly ``num_edges`` edges.

    A random node order is drawn, then ``num_edges`` distinct pairs are drawn
    uniformly and directed along that order.

    Parameters:
    -----------
    num_nodes : int
        Number of variables, named X1..Xn
    num_edges : int
        Number of edges, at most n(n-1)/2
    seed : int
        Random seed

    Returns:
    --------
    Graph
        A DAG
    """
    if num_nodes < 1:
        raise ValueError(f"Need at least one node, got {num_nodes}")
    max_edges = num_nodes * (num_nodes - 1) // 2
    if num_edges < 0 or num_edges > max_edges:
        raise TooManyEdgesError(
            f"{num_edges} edges requested but {num_nodes} nodes allow at most {max_edges}"
        )
    rng = np.random.default_rng(seed)
    order = rng.permutation(num_nodes)
    pairs = [(i, j) for i in range(num_nodes) for j in range(i + 1, num_nodes)]
    chosen = rng.choice(len(pairs), size=num_edges, replace=False) if num_edges else []
    edges = [Edge.directed(int(order[pairs[c][0]]), int(order[pairs[c][1]])) for c in sorted(chosen)]
    return Graph(variables_from_names(node_names(num_nodes)), edges, GraphKind.DAG)
