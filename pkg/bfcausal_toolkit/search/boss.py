"""
Best Order Score Search.

The search walks over variable permutations. Each permutation induces a DAG
in which every variable takes as parents a grow-shrink selection from the
variables preceding it. A sweep moves each variable to every other position
and keeps the best permutation found; sweeps repeat until one makes no
improvement. A backward equivalence pass over the CPDAG of the converged DAG
then proposes a new permutation; when it scores better the sweeps resume
from it. The result is the CPDAG of the best DAG.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from ..embedding.embedder import EmbeddedData
from ..graph.algorithms import topological_order
from ..graph.core import Graph
from ..graph.cpdag import dag_to_cpdag, pdag_to_dag
from ..graph.knowledge import Knowledge
from ..scoring.bic import BasisFunctionBic, ScoreCache, ScoreConfig
from .deadline import Deadline

logger = logging.getLogger(__name__)

LocalScore = Callable[[int, Tuple[int, ...]], float]

# relative margin a move must beat to count as an improvement
IMPROVEMENT_TOLERANCE = 1e-12


def best_parents_given_prefix(v, prefix, score: LocalScore, k: Optional[Knowledge] = None, order_key=None) -> FrozenSet[int]:
    """
    Grow-shrink parent selection for ``v`` among the members of ``prefix``.

    Grow adds, while it strictly improves the local score, the candidate with
    the largest gain. Shrink then removes, while it strictly improves, the
    member whose removal gains most. Knowledge-forbidden parents are never
    added and required parents in the prefix are always kept.

    Parameters:
    -----------
    v : int
        Child variable id
    prefix : iterable of int
        Variables that precede ``v``
    score : callable
        ``score(child, parents) -> float``
    k : Knowledge, optional
        Background knowledge
    order_key : callable, optional
        Sort key for candidates; ties go to the earlier candidate

    Returns:
    --------
    frozenset of int
    """
    knowledge = k or Knowledge.empty()
    if v in prefix:
        raise ValueError("A variable cannot be in its own prefix")
    candidates = sorted(prefix, key=order_key)
    required = [w for w in candidates if knowledge.is_required(w, v)]
    allowed = [w for w in candidates if not knowledge.is_forbidden(w, v)]

    parents: List[int] = list(required)
    current = score(v, tuple(parents))

    while True:
        best, best_score = None, current
        for w in allowed:
            if w in parents:
                continue
            trial = score(v, tuple(parents + [w]))
            if trial > best_score:
                best, best_score = w, trial
        if best is None:
            break
        parents.append(best)
        current = best_score

    while True:
        worst, best_score = None, current
        for w in parents:
            if w in required:
                continue
            trial = score(v, tuple(p for p in parents if p != w))
            if trial > best_score:
                worst, best_score = w, trial
        if worst is None:
            break
        parents.remove(worst)
        current = best_score

    return frozenset(parents)


def _is_clique(g: Graph, nodes) -> bool:
    return all(g.adjacent(a, b) for a, b in combinations(sorted(nodes), 2))


def _deletion_candidates(g: Graph, k: Knowledge):
    for a, b in sorted(g.pairs(), key=lambda pair: sorted(g.name(n) for n in pair)):
        if k.is_required(a, b) or k.is_required(b, a):
            continue
        if g.is_undirected(a, b):
            yield a, b
            yield b, a
        elif g.is_parent(a, b):
            yield a, b
        else:
            yield b, a


def backward_equivalence_search(cpdag: Graph, score: LocalScore, k: Optional[Knowledge] = None,
                                deadline: Optional[Deadline] = None) -> Graph:
    """
    Greedy edge deletion over Markov equivalence classes.

    Each step applies the best-scoring valid deletion of an edge ``x - y``
    (or ``x -> y``) together with a set ``H`` of ``y``'s undirected neighbours
    adjacent to ``x``, whose complement in that neighbourhood must be a
    clique. Edges of ``H`` are pointed away from ``y`` (and from ``x`` where
    undirected) and the result is re-completed. Stops when no deletion
    improves the score. Required edges are never deleted.

    Parameters:
    -----------
    cpdag : Graph
        Starting CPDAG (not modified)
    score : callable
        ``score(child, parents) -> float``
    k : Knowledge, optional
        Background knowledge
    deadline : Deadline, optional
        Checked once per candidate edge

    Returns:
    --------
    Graph
        The reduced CPDAG
    """
    knowledge = k or Knowledge.empty()
    deadline = deadline or Deadline()
    g = cpdag.copy()
    while True:
        best_gain, best_move = 0.0, None
        for x, y in _deletion_candidates(g, knowledge):
            deadline.check()
            neighbourhood = sorted((n for n in g.undirected_neighbors(y) if g.adjacent(n, x)), key=g.name)
            parents = g.parents(y) - {x}
            for size in range(len(neighbourhood) + 1):
                for h in combinations(neighbourhood, size):
                    rest = set(neighbourhood) - set(h)
                    if not _is_clique(g, rest):
                        continue
                    kept = rest | parents
                    with_x = score(y, tuple(sorted(kept | {x})))
                    gain = score(y, tuple(sorted(kept))) - with_x
                    if gain > best_gain + IMPROVEMENT_TOLERANCE * max(1.0, abs(with_x)):
                        best_gain, best_move = gain, (x, y, h)
        if best_move is None:
            return g
        x, y, h = best_move
        logger.debug("Deleting %s - %s (gain %.6f)", g.name(x), g.name(y), best_gain)
        g.remove_edge(x, y)
        for n in h:
            g.orient(y, n)
            if g.is_undirected(x, n):
                g.orient(x, n)
        g = dag_to_cpdag(pdag_to_dag(g, key=g.name))


@dataclass
class BossResult:
    cpdag: Graph
    dag: Graph
    order: List[int]
    score: float
    sweeps: int


class Boss:
    """
    Permutation search over one local score.

    Parameters:
    -----------
    score : callable
        ``score(child, parents) -> float`` with a ``variables`` attribute
    knowledge : Knowledge, optional
        Background knowledge
    seed : int
        Seed for the initial permutation
    deadline : Deadline, optional
        Checked once per candidate position and per deletion candidate
    """

    def __init__(self, score, knowledge: Optional[Knowledge] = None, seed: int = 0,
                 deadline: Optional[Deadline] = None):
        self.score = score
        self.variables = tuple(score.variables)
        self.knowledge = knowledge or Knowledge.empty()
        self.seed = seed
        self.deadline = deadline or Deadline()
        self._names = [v.name for v in self.variables]
        self._parents: Dict[Tuple[int, FrozenSet[int]], FrozenSet[int]] = {}

    def _name_key(self, node):
        return self._names[node]

    def initial_order(self) -> List[int]:
        canonical = sorted(range(len(self.variables)), key=self._name_key)
        rng = np.random.default_rng(self.seed)
        return [canonical[i] for i in rng.permutation(len(canonical))]

    def parents_given_prefix(self, v: int, prefix: FrozenSet[int]) -> FrozenSet[int]:
        key = (v, prefix)
        found = self._parents.get(key)
        if found is None:
            found = best_parents_given_prefix(v, prefix, self.score, self.knowledge, self._name_key)
            self._parents[key] = found
        return found

    def evaluate(self, order: List[int]) -> float:
        total = 0.0
        for position, v in enumerate(order):
            parents = self.parents_given_prefix(v, frozenset(order[:position]))
            total += self.score(v, tuple(sorted(parents)))
        return total

    def _improves(self, candidate: float, incumbent: float) -> bool:
        return candidate > incumbent + IMPROVEMENT_TOLERANCE * max(1.0, abs(incumbent))

    def dag_for(self, order: List[int]) -> Graph:
        parents = {}
        for position, v in enumerate(order):
            parents[v] = self.parents_given_prefix(v, frozenset(order[:position]))
        return Graph.from_parents(self.variables, parents)

    def run(self) -> BossResult:
        order = self.initial_order()
        best = self.evaluate(order)
        sweeps = 0
        while True:
            order, best, sweeps = self._sweep(order, best, sweeps)
            reduced = backward_equivalence_search(
                dag_to_cpdag(self.dag_for(order)), self.score, self.knowledge, self.deadline
            )
            candidate = topological_order(pdag_to_dag(reduced, key=self._name_key), key=self._name_key)
            value = self.evaluate(candidate)
            if not self._improves(value, best):
                break
            logger.debug("Backward pass improved the score to %.6f", value)
            order, best = candidate, value

        dag = self.dag_for(order)
        logger.info(
            "BOSS finished after %d sweeps with %d edges (score %.4f)",
            sweeps, dag.num_edges, best,
        )
        return BossResult(dag_to_cpdag(dag), dag, order, best, sweeps)

    def _sweep(self, order: List[int], best: float, sweeps: int) -> Tuple[List[int], float, int]:
        improved = True
        while improved:
            improved = False
            sweeps += 1
            for v in list(order):
                rest = [u for u in order if u != v]
                move_order, move_score = order, best
                for position in range(len(rest) + 1):
                    self.deadline.check()
                    candidate = rest[:position] + [v] + rest[position:]
                    if candidate == order:
                        continue
                    value = self.evaluate(candidate)
                    if self._improves(value, move_score):
                        move_order, move_score = candidate, value
                if move_order is not order:
                    order, best = move_order, move_score
                    improved = True
            logger.debug("BOSS sweep %d: score %.6f", sweeps, best)
        return order, best, sweeps


def boss_search(e: EmbeddedData, cfg: ScoreConfig, k: Optional[Knowledge] = None, seed: int = 0,
                cache: Optional[ScoreCache] = None, deadline: Optional[Deadline] = None) -> Graph:
    """
    Run BOSS with the basis-function BIC and return the CPDAG.

    Parameters:
    -----------
    e : EmbeddedData
        Embedded data
    cfg : ScoreConfig
        Penalty discount and ridge
    k : Knowledge, optional
        Background knowledge
    seed : int
        Seed for the initial permutation

    Returns:
    --------
    Graph
        CPDAG of the best-scoring DAG
    """
    if e.num_rows <= e.max_block_width + 2:
        raise ValueError(
            f"Sample size {e.num_rows} is too small for blocks of width {e.max_block_width}"
        )
    score = BasisFunctionBic(e, cfg, cache)
    return Boss(score, k, seed, deadline).run().cpdag
