"""
PC-Max.

Skeleton search removes edges depth by depth, conditioning on subsets of a
per-depth adjacency snapshot so the result does not depend on edge order.
Unshielded triples are then oriented as colliders when the middle node is
missing from the separating set with the largest p-value, and the Meek rules
finish the orientation.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..citest.lrt import BasisFunctionLrt, TestConfig, TestResult
from ..embedding.embedder import EmbeddedData
from ..graph.algorithms import creates_cycle, unshielded_triples
from ..graph.core import Edge, Graph, GraphKind
from ..graph.cpdag import apply_meek_rules
from ..graph.knowledge import Knowledge
from .deadline import Deadline

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 3

IndependenceTest = Callable[[int, int, Iterable[int]], TestResult]


class SepSetMap:
    """Separating sets keyed by unordered variable pair."""

    def __init__(self):
        self._sets: Dict[FrozenSet[int], Tuple[Tuple[int, ...], float]] = {}

    def set(self, x: int, y: int, sepset: Iterable[int], p_value: float):
        self._sets[frozenset((x, y))] = (tuple(sorted(sepset)), p_value)

    def get(self, x: int, y: int) -> Optional[Tuple[Tuple[int, ...], float]]:
        return self._sets.get(frozenset((x, y)))

    def __contains__(self, pair) -> bool:
        return frozenset(pair) in self._sets

    def __len__(self):
        return len(self._sets)

    def items(self):
        for pair, value in sorted(self._sets.items(), key=lambda item: sorted(item[0])):
            yield tuple(sorted(pair)), value


class PcMax:
    """
    PC-Max over one independence test.

    Parameters:
    -----------
    test : callable
        ``test(x, y, z) -> TestResult`` with ``variables`` and ``alpha`` attributes
    knowledge : Knowledge, optional
        Background knowledge
    max_depth : int
        Largest conditioning set size
    workers : int
        Threads used for the tests of one depth
    deadline : Deadline, optional
        Checked before every edge and triple
    """

    def __init__(self, test, knowledge: Optional[Knowledge] = None, max_depth: int = DEFAULT_MAX_DEPTH,
                 workers: int = 1, deadline: Optional[Deadline] = None):
        if max_depth < 0:
            raise ValueError(f"max_depth must be non-negative, got {max_depth}")
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.test = test
        self.variables = tuple(test.variables)
        self.alpha = test.alpha
        self.knowledge = knowledge or Knowledge.empty()
        self.max_depth = max_depth
        self.workers = workers
        self.deadline = deadline or Deadline()
        names = [v.name for v in self.variables]
        self._rank = {node: position for position, node in enumerate(
            sorted(range(len(names)), key=lambda i: names[i]))}

    def _sorted(self, nodes) -> List[int]:
        return sorted(nodes, key=self._rank.__getitem__)

    def _initial_skeleton(self) -> Graph:
        size = len(self.variables)
        edges = [
            Edge.undirected(x, y)
            for x in range(size)
            for y in range(x + 1, size)
            if not self.knowledge.adjacency_forbidden(x, y)
        ]
        return Graph(self.variables, edges, GraphKind.SKELETON)

    def _separate(self, x: int, y: int, snapshot: Dict[int, List[int]], depth: int):
        """First conditioning set of size ``depth`` that renders x and y independent."""
        self.deadline.check()
        for a, b in ((x, y), (y, x)):
            candidates = [n for n in snapshot[a] if n != b]
            if len(candidates) < depth:
                continue
            for subset in combinations(candidates, depth):
                result = self.test(x, y, subset)
                if result.independent:
                    return subset, result.p_value
        return None

    def skeleton(self) -> Tuple[Graph, SepSetMap]:
        graph = self._initial_skeleton()
        sepsets = SepSetMap()
        depth = 0
        while depth <= self.max_depth:
            snapshot = {n: self._sorted(graph.neighbors(n)) for n in range(len(self.variables))}
            pairs = [
                (x, y) for x, y in sorted(graph.pairs(), key=lambda p: self._sorted(p))
                if not (self.knowledge.is_required(x, y) or self.knowledge.is_required(y, x))
            ]
            supported = [
                (x, y) for x, y in pairs
                if len(snapshot[x]) - 1 >= depth or len(snapshot[y]) - 1 >= depth
            ]
            if not supported:
                break
            x_first = [tuple(self._sorted(pair)) for pair in supported]
            if self.workers > 1:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    outcomes = list(pool.map(lambda p: self._separate(p[0], p[1], snapshot, depth), x_first))
            else:
                outcomes = [self._separate(x, y, snapshot, depth) for x, y in x_first]

            removed = 0
            for (x, y), outcome in zip(x_first, outcomes):
                if outcome is None:
                    continue
                sepset, p_value = outcome
                graph.remove_edge(x, y)
                sepsets.set(x, y, sepset, p_value)
                removed += 1
            logger.debug("PC-Max depth %d: removed %d of %d edges", depth, removed, len(x_first))
            depth += 1
        return graph, sepsets

    def _max_p_sepset(self, x: int, z: int, skel: Graph) -> Tuple[Tuple[int, ...], float]:
        seen = set()
        best, best_p, best_passing, best_passing_p = None, -1.0, None, -1.0
        for a, b in ((x, z), (z, x)):
            candidates = self._sorted(n for n in skel.neighbors(a) if n != b)
            for depth in range(min(self.max_depth, len(candidates)) + 1):
                for subset in combinations(candidates, depth):
                    key = frozenset(subset)
                    if key in seen:
                        continue
                    seen.add(key)
                    p_value = self.test(x, z, subset).p_value
                    if p_value > best_p:
                        best, best_p = subset, p_value
                    if p_value > self.alpha and p_value > best_passing_p:
                        best_passing, best_passing_p = subset, p_value
        if best_passing is not None:
            return best_passing, best_passing_p
        return best, best_p

    def orient_colliders(self, skel: Graph, sepsets: Optional[SepSetMap] = None) -> Graph:
        sepsets = sepsets if sepsets is not None else SepSetMap()
        graph = skel.copy(kind=GraphKind.CPDAG)
        colliders = []
        max_p: Dict[Tuple[int, int], Tuple[Tuple[int, ...], float]] = {}
        for x, y, z in unshielded_triples(skel):
            self.deadline.check()
            x, z = self._sorted((x, z))
            if (x, z) not in max_p:
                max_p[(x, z)] = self._max_p_sepset(x, z, skel)
            sepset, p_value = max_p[(x, z)]
            sepsets.set(x, z, sepset, p_value)
            if y not in sepset:
                colliders.append((-p_value, [self._rank[x], self._rank[y], self._rank[z]], (x, y, z)))

        for _, _, (x, y, z) in sorted(colliders):
            if self.knowledge.is_forbidden(x, y) or self.knowledge.is_forbidden(z, y):
                logger.debug("Collider at %s forbidden by knowledge", graph.name(y))
                continue
            if graph.is_parent(y, x) or graph.is_parent(y, z):
                logger.debug(
                    "Collider %s -> %s <- %s conflicts with an earlier orientation",
                    graph.name(x), graph.name(y), graph.name(z),
                )
                continue
            trial = graph.copy()
            trial.orient(x, y)
            trial.orient(z, y)
            if trial.has_directed_cycle():
                continue
            graph = trial
        return graph

    def _orient_required(self, graph: Graph) -> Graph:
        for x, y in sorted(self.knowledge.required):
            if not graph.adjacent(x, y) or graph.is_parent(x, y):
                continue
            if graph.is_parent(y, x) or creates_cycle(graph, x, y):
                logger.warning(
                    "Required edge %s -> %s cannot be oriented", graph.name(x), graph.name(y)
                )
                continue
            graph.orient(x, y)
        return graph

    def run(self) -> Graph:
        skel, sepsets = self.skeleton()
        oriented = self._orient_required(self.orient_colliders(skel, sepsets))
        cpdag = apply_meek_rules(oriented, self.knowledge, strict=False)
        logger.info("PC-Max finished with %d edges", cpdag.num_edges)
        return cpdag.validate()


def _test_for(e: EmbeddedData, cfg: TestConfig, test):
    if test is not None:
        return test
    if e is None:
        raise ValueError("Either embedded data or an independence test is needed")
    return BasisFunctionLrt(e, cfg)


def pcmax_skeleton(e: EmbeddedData, cfg: TestConfig, k: Optional[Knowledge] = None,
                   max_depth: int = DEFAULT_MAX_DEPTH, test=None) -> Tuple[Graph, SepSetMap]:
    """
    Depth-stratified skeleton search.

    Returns:
    --------
    tuple of (Graph, SepSetMap)
        Skeleton and the separating sets that removed each missing edge
    """
    return PcMax(_test_for(e, cfg, test), k, max_depth).skeleton()


def orient_colliders_maxp(skel: Graph, e: EmbeddedData, cfg: TestConfig, k: Optional[Knowledge] = None,
                          max_depth: int = DEFAULT_MAX_DEPTH, test=None) -> Graph:
    """Orient unshielded colliders by the max-p separating set rule."""
    if skel.directed_edges():
        raise ValueError("Collider orientation needs an undirected skeleton")
    return PcMax(_test_for(e, cfg, test), k, max_depth).orient_colliders(skel)


def pcmax_search(e: EmbeddedData, cfg: TestConfig, k: Optional[Knowledge] = None,
                 max_depth: int = DEFAULT_MAX_DEPTH, test=None, workers: int = 1,
                 deadline: Optional[Deadline] = None) -> Graph:
    """
    Run PC-Max and return the CPDAG.

    Parameters:
    -----------
    e : EmbeddedData
        Embedded data (may be None when ``test`` is given)
    cfg : TestConfig
        Alpha and ridge
    k : Knowledge, optional
        Background knowledge
    max_depth : int
        Largest conditioning set size
    test : callable, optional
        Replacement independence test, e.g. a DSeparationOracle
    workers : int
        Threads for tests within one depth

    Returns:
    --------
    Graph
    """
    return PcMax(_test_for(e, cfg, test), k, max_depth, workers, deadline).run()
