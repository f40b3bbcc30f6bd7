"""DAG to CPDAG conversion, PDAG extension and Meek orientation closure."""

import logging
from typing import Dict, List, Optional, Set, Tuple

from ..errors import ConflictingOrientationError, CyclicGraphError
from .algorithms import creates_cycle, topological_order
from .core import Edge, Graph, GraphKind
from .knowledge import Knowledge

logger = logging.getLogger(__name__)

COMPELLED = "compelled"
REVERSIBLE = "reversible"


def label_edges(g: Graph) -> Dict[Tuple[int, int], str]:
    """
    Label every edge of a DAG as compelled or reversible.

    Edges are visited in the canonical order (edges into earlier nodes first,
    and among those, edges out of later nodes first).
    """
    order = topological_order(g)
    rank = {node: position for position, node in enumerate(order)}
    ordered = sorted(g.directed_edges(), key=lambda e: (rank[e[1]], -rank[e[0]]))
    parents = {node: g.parents(node) for node in range(g.num_variables)}
    labels: Dict[Tuple[int, int], str] = {}

    for x, y in ordered:
        if (x, y) in labels:
            continue
        resolved = False
        for w in sorted(parents[x]):
            if labels.get((w, x)) != COMPELLED:
                continue
            if w not in parents[y]:
                for z in parents[y]:
                    labels[(z, y)] = COMPELLED
                resolved = True
                break
            labels[(w, y)] = COMPELLED
        if resolved:
            continue
        into_y = [z for z in parents[y] if (z, y) not in labels or z == x]
        if any(z != x and z not in parents[x] for z in parents[y]):
            label = COMPELLED
        else:
            label = REVERSIBLE
        for z in into_y:
            labels[(z, y)] = label
    return labels


def dag_to_cpdag(g: Graph) -> Graph:
    """
    Return the CPDAG of the Markov equivalence class containing ``g``.

    Compelled edges stay directed, reversible edges become undirected, and the
    result is closed under the Meek rules.
    """
    labels = label_edges(g)
    cpdag = Graph(g.variables, (), GraphKind.CPDAG, validate=False)
    for (x, y), label in sorted(labels.items()):
        if label == COMPELLED:
            cpdag.add_edge(Edge.directed(x, y))
        else:
            cpdag.add_edge(Edge.undirected(x, y))
    return apply_meek_rules(cpdag, Knowledge.empty())


def _rule1(g: Graph, a: int, b: int) -> bool:
    # some c -> a with c, b nonadjacent
    return any(not g.adjacent(c, b) for c in g.parents(a) if c != b)


def _rule2(g: Graph, a: int, b: int) -> bool:
    # a -> c -> b
    return any(g.is_parent(c, b) for c in g.children(a))


def _rule3(g: Graph, a: int, b: int) -> bool:
    # a - c -> b, a - d -> b, c and d nonadjacent
    candidates = sorted(c for c in g.undirected_neighbors(a) if g.is_parent(c, b))
    for i, c in enumerate(candidates):
        for d in candidates[i + 1:]:
            if not g.adjacent(c, d):
                return True
    return False


def _rule4(g: Graph, a: int, b: int) -> bool:
    # a - k -> l -> b, a adjacent to l, k and b nonadjacent
    for l in g.parents(b):
        if l == a or not g.adjacent(a, l):
            continue
        for k in g.parents(l):
            if k != b and g.is_undirected(a, k) and not g.adjacent(k, b):
                return True
    return False


_RULES = (_rule1, _rule2, _rule3, _rule4)


def _proposals(g: Graph, knowledge: Knowledge, rejected: Set[Tuple[int, int]]) -> List[Tuple[int, int]]:
    proposed = []
    for a, b in g.undirected_edges():
        for source, target in ((a, b), (b, a)):
            if (source, target) in rejected or knowledge.is_forbidden(source, target):
                continue
            if any(rule(g, source, target) for rule in _RULES):
                proposed.append((source, target))
    return proposed


def apply_meek_rules(g: Graph, k: Optional[Knowledge] = None, strict: bool = True) -> Graph:
    """
    Orient undirected edges to the fixpoint of Meek rules R1-R4.

    Each round evaluates every rule on a snapshot of the current graph and
    commits the proposed orientations together, so the result does not depend
    on edge iteration order. Orientations forbidden by the knowledge are never
    made; knowledge itself never forces an orientation.

    Parameters:
    -----------
    g : Graph
        Partially directed graph (not modified)
    k : Knowledge, optional
        Background knowledge; only its forbidden set is consulted
    strict : bool
        If True, a round proposing both directions of one edge raises
        ConflictingOrientationError. If False the edge is left undirected.

    Returns:
    --------
    Graph
        A new graph closed under the rules
    """
    knowledge = k or Knowledge.empty()
    result = g.copy()
    rejected: Set[Tuple[int, int]] = set()

    while True:
        proposed = _proposals(result, knowledge, rejected)
        if not proposed:
            break
        proposed_set = set(proposed)
        committed = 0
        for source, target in sorted(proposed):
            if (target, source) in proposed_set:
                if strict:
                    raise ConflictingOrientationError(
                        f"Rules orient both {result.name(source)} -> {result.name(target)} "
                        f"and the reverse"
                    )
                logger.warning(
                    "Conflicting orientations for %s - %s, leaving it undirected",
                    result.name(source), result.name(target),
                )
                rejected.add((source, target))
                continue
            if creates_cycle(result, source, target):
                logger.debug(
                    "Skipping %s -> %s, it would close a directed cycle",
                    result.name(source), result.name(target),
                )
                rejected.add((source, target))
                continue
            result.orient(source, target)
            committed += 1
        if committed == 0:
            break
    return result


def pdag_to_dag(g: Graph, key=None) -> Graph:
    """
    Extend a partially directed graph to a DAG with the same skeleton and colliders.

    Repeatedly removes a node with no directed children whose undirected
    neighbours are adjacent to all of its other neighbours, pointing its
    undirected edges into it. Nodes are tried in ``key`` order (ids by default).

    Raises:
    -------
    CyclicGraphError
        If ``g`` has no consistent extension
    """
    work = g.copy(kind=GraphKind.CPDAG)
    dag = Graph(g.variables, [Edge.directed(s, t) for s, t in g.directed_edges()],
                GraphKind.DAG, validate=False)
    remaining = set(range(g.num_variables))
    while remaining:
        for x in sorted(remaining, key=key):
            if work.children(x):
                continue
            adjacent = work.neighbors(x)
            undirected = work.undirected_neighbors(x)
            if all(adjacent - {y} <= work.neighbors(y) for y in undirected):
                break
        else:
            raise CyclicGraphError("Partially directed graph has no consistent DAG extension")
        for y in sorted(undirected):
            dag.add_directed(y, x)
        for y in sorted(adjacent):
            work.remove_edge(x, y)
        remaining.discard(x)
    return dag.validate()
