"""Ordering, reachability and d-separation queries on DAGs."""

from itertools import combinations
from typing import Iterable, List, Set, Tuple

import networkx as nx

from ..errors import CyclicGraphError, InvalidEdgeError
from .core import Graph


def topological_order(g: Graph, key=None) -> List[int]:
    """
    Return variable ids so that every parent precedes each of its children.

    Among admissible orders the lexicographically smallest one under ``key``
    (the id by default) is returned.

    Raises:
    -------
    CyclicGraphError
        If the graph contains a directed cycle
    """
    if not g.is_fully_directed:
        raise InvalidEdgeError("topological_order needs a graph with only directed edges")
    try:
        return list(nx.lexicographical_topological_sort(g.to_networkx(), key=key))
    except nx.NetworkXUnfeasible as exc:
        raise CyclicGraphError("Graph contains a directed cycle") from exc


def d_separated(g: Graph, x: int, y: int, cond: Iterable[int]) -> bool:
    """
    Decide whether ``x`` and ``y`` are d-separated given ``cond`` in a DAG.

    Delegates to networkx on the directed part of ``g``.

    Parameters:
    -----------
    g : Graph
        A DAG
    x, y : int
        Distinct variable ids outside ``cond``
    cond : iterable of int
        Conditioning set

    Returns:
    --------
    bool
        True if no d-connecting path exists
    """
    x, y = g.node_id(x), g.node_id(y)
    cond = {g.node_id(c) for c in cond}
    if x == y:
        raise ValueError("d_separated needs two distinct variables")
    if x in cond or y in cond:
        raise ValueError("Tested variables may not be part of the conditioning set")
    return nx.is_d_separator(g.to_networkx(), {x}, {y}, cond)


def unshielded_triples(g: Graph) -> List[Tuple[int, int, int]]:
    """All triples ``(a, b, c)`` with ``a < c``, a-b and b-c adjacent, a and c not."""
    triples = []
    for b in range(g.num_variables):
        for a, c in combinations(sorted(g.neighbors(b)), 2):
            if not g.adjacent(a, c):
                triples.append((a, b, c))
    return triples


def unshielded_colliders(g: Graph) -> Set[Tuple[int, int, int]]:
    """Unshielded triples oriented ``a -> b <- c``."""
    return {
        (a, b, c)
        for a, b, c in unshielded_triples(g)
        if g.is_parent(a, b) and g.is_parent(c, b)
    }


def creates_cycle(g: Graph, source: int, target: int) -> bool:
    """True if orienting ``source -> target`` would close a directed cycle."""
    if source == target:
        raise InvalidEdgeError("source and target coincide")
    return g.has_directed_path(target, source)
