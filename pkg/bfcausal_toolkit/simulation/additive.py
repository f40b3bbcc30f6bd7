"""Additive nonlinear structural equation models with optional post-nonlinear output."""

from typing import Callable, Dict, Optional

import numpy as np

from ..embedding.table import DataTable
from ..graph.algorithms import topological_order
from ..graph.core import Graph, GraphKind, variables_from_names
from .noise import NoiseSpec

# edge functions of a standardized parent z and a coefficient a
EDGE_FUNCTIONS: Dict[str, Callable[[np.ndarray, float], np.ndarray]] = {
    "cubic": lambda z, a: a * np.clip(z, -2.5, 2.5) ** 3 / 8.0,
    "quadratic": lambda z, a: a * (np.clip(z, -2.5, 2.5) ** 2 - 1.0) / 2.0,
    "sine": lambda z, a: 1.5 * a * np.sin(1.5 * z),
    "tanh": lambda z, a: 2.0 * a * np.tanh(1.5 * z),
}

# invertible output transforms
PNL_TRANSFORMS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda x: x,
    "cube_root": np.cbrt,
    "sinh": lambda x: np.sinh(x / 2.0),
}

IDENTITY_FUNCTION = "linear"


def _standardized(column):
    spread = column.std()
    return (column - column.mean()) / spread if spread > 0 else column - column.mean()


def additive_sem_generate(g: Graph, n: int, noise: NoiseSpec, pnl: Optional[str] = None, seed: int = 0,
                          functions=None):
    """
    Simulate X = sum over parents of f(parent) + e, optionally followed by g(X).

    Parameters:
    -----------
    g : Graph
        Ground-truth DAG
    n : int
        Number of rows
    noise : NoiseSpec
        Noise distribution
    pnl : str, optional
        Name of an output transform from PNL_TRANSFORMS
    seed : int
        Random seed
    functions : dict, optional
        Fixed edge functions ``{(parent, child): name}``; ``"linear"`` is the
        identity. Unlisted edges draw from EDGE_FUNCTIONS.

    Returns:
    --------
    tuple of (DataTable, Graph)
    """
    if g.kind is not GraphKind.DAG:
        raise ValueError("additive_sem_generate needs a DAG")
    if pnl is not None and pnl not in PNL_TRANSFORMS:
        raise ValueError(f"Unknown transform {pnl!r}; choose from {sorted(PNL_TRANSFORMS)}")
    functions = functions or {}
    transform = PNL_TRANSFORMS[pnl or "identity"]
    order = topological_order(g)
    streams = np.random.SeedSequence(seed).spawn(g.num_variables)
    catalog = sorted(EDGE_FUNCTIONS)
    values = {}

    for node in order:
        rng = np.random.default_rng(streams[node])
        total = noise.sample(rng, n)
        for parent in sorted(g.parents(node)):
            name = functions.get((parent, node))
            if name is None:
                name = catalog[int(rng.integers(len(catalog)))]
            coefficient = rng.uniform(0.5, 1.0) * rng.choice((-1.0, 1.0))
            if name == IDENTITY_FUNCTION:
                total = total + values[parent]
            else:
                total = total + EDGE_FUNCTIONS[name](_standardized(values[parent]), coefficient)
        values[node] = transform(total)

    variables = variables_from_names(g.names)
    table = DataTable(variables, [values[i] for i in range(g.num_variables)])
    return table, Graph(variables, g.edges(), GraphKind.DAG)
