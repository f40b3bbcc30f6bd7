"""Shared builders for the test suite."""

from itertools import combinations, product

import numpy as np

from bfcausal_toolkit.embedding.embedder import EmbeddedData
from bfcausal_toolkit.errors import CyclicGraphError
from bfcausal_toolkit.graph.algorithms import topological_order, unshielded_colliders
from bfcausal_toolkit.graph.core import Edge, Graph, GraphKind, variables_from_names


def names(n):
    return [chr(ord("A") + i) for i in range(n)]


def graph(n, directed=(), undirected=(), kind=GraphKind.CPDAG):
    """Graph over A, B, ... from (source, target) and (a, b) name pairs."""
    g = Graph(variables_from_names(names(n)), (), kind, validate=False)
    for a, b in directed:
        g.add_directed(a, b)
    for a, b in undirected:
        g.add_undirected(a, b)
    return g.validate()


def dag(n, directed):
    return graph(n, directed, kind=GraphKind.DAG)


def all_dags(n):
    """Every labelled DAG on n nodes."""
    variables = variables_from_names(names(n))
    pairs = list(combinations(range(n), 2))
    found = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        edges = []
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                edges.append(Edge.directed(a, b))
            elif c == 2:
                edges.append(Edge.directed(b, a))
        try:
            found.append(Graph(variables, edges, GraphKind.DAG))
        except CyclicGraphError:
            continue
    return found


def equivalence_key(g):
    """Skeleton plus unshielded colliders, which identify a Markov class."""
    return (frozenset(g.pairs()), frozenset(unshielded_colliders(g)))


def linear_population(g, seed=0, low=0.5, high=1.0):
    """
    Covariance of a linear Gaussian SEM over ``g`` with positive random weights.

    Returns:
    --------
    numpy.ndarray
    """
    rng = np.random.default_rng(seed)
    n = g.num_variables
    weights = np.zeros((n, n))
    for source, target in g.directed_edges():
        weights[source, target] = rng.uniform(low, high)
    noise = np.diag(rng.uniform(0.5, 1.0, size=n))
    inverse = np.linalg.inv(np.eye(n) - weights)
    covariance = inverse.T @ noise @ inverse
    return (covariance + covariance.T) / 2.0


def population_data(g, num_rows=10 ** 6, seed=0):
    """EmbeddedData wrapping the population covariance of a linear SEM on ``g``."""
    return EmbeddedData.from_covariance(g.variables, linear_population(g, seed), num_rows)


def linear_sample(g, num_rows, seed=0, nonlinear=False):
    """Rows from a linear (or tanh) Gaussian SEM over ``g`` as a numpy array."""
    rng = np.random.default_rng(seed)
    data = np.zeros((num_rows, g.num_variables))
    for node in topological_order(g):
        value = rng.normal(size=num_rows)
        for parent in sorted(g.parents(node)):
            signal = np.tanh(data[:, parent]) * 2.0 if nonlinear else data[:, parent]
            value = value + signal
        data[:, node] = value
    return data
