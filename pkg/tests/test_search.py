"""
Unit tests for BOSS and PC-Max.

Large-sample behaviour is checked against population covariances of linear
SEMs (for BOSS) and against a d-separation oracle (for PC-Max).
"""

import os
import random
import unittest
from collections import Counter

import numpy as np

from bfcausal_toolkit.citest import DSeparationOracle, TestConfig
from bfcausal_toolkit.embedding import BasisSpec, DataTable, embed_dataset, scale_columns
from bfcausal_toolkit.errors import TimeoutExceededError
from bfcausal_toolkit.graph import Graph, GraphKind, Knowledge, dag_to_cpdag, variables_from_names
from bfcausal_toolkit.scoring import BasisFunctionBic, ScoreConfig
from bfcausal_toolkit.search import (
    Boss,
    Deadline,
    PcMax,
    backward_equivalence_search,
    best_parents_given_prefix,
    boss_search,
    orient_colliders_maxp,
    pcmax_search,
    pcmax_skeleton,
)
from tests.fixtures import all_dags, dag, graph, linear_sample, population_data

SLOW_TESTS = os.environ.get("BFCAUSAL_SLOW_TESTS") == "1"

LINEAR = ScoreConfig(1.0, BasisSpec(1))


def embedded_sample(g, num_rows, seed=0, nonlinear=False, truncation=3):
    sample = linear_sample(g, num_rows, seed, nonlinear)
    table = DataTable(variables_from_names(g.names), list(sample.T))
    return table, embed_dataset(scale_columns(table), BasisSpec(truncation))


class RecordingOracle(DSeparationOracle):
    """Oracle that remembers every queried pair and counts the queries."""

    def __init__(self, dag, alpha=0.01):
        super().__init__(dag, alpha)
        self.pairs = set()
        self.pair_calls = Counter()

    def __call__(self, x, y, z):
        self.pairs.add(frozenset((x, y)))
        self.pair_calls[frozenset((x, y))] += 1
        return super().__call__(x, y, z)


class TestParentSelection(unittest.TestCase):
    """Grow-shrink selection within a prefix."""

    @staticmethod
    def score(v, parents):
        return -len(set(parents) ^ {1, 2})

    def test_empty_prefix(self):
        self.assertEqual(best_parents_given_prefix(0, [], self.score), frozenset())

    def test_selects_best_subset(self):
        self.assertEqual(best_parents_given_prefix(0, [1, 2, 3], self.score), frozenset({1, 2}))

    def test_forbidden_parent_never_added(self):
        knowledge = Knowledge(forbidden=frozenset({(1, 0)}))
        self.assertEqual(best_parents_given_prefix(0, [1, 2, 3], self.score, knowledge), frozenset({2}))

    def test_required_parent_kept(self):
        knowledge = Knowledge(required=frozenset({(3, 0)}))
        self.assertEqual(
            best_parents_given_prefix(0, [1, 2, 3], self.score, knowledge), frozenset({1, 2, 3})
        )

    def test_rejects_self_in_prefix(self):
        with self.assertRaises(ValueError):
            best_parents_given_prefix(0, [0, 1], self.score)

    def test_strong_signal_on_data(self):
        g = dag(3, [("A", "C")])
        _, e = embedded_sample(g, 5000, seed=1, nonlinear=True)
        score = BasisFunctionBic(e, ScoreConfig())
        self.assertEqual(best_parents_given_prefix(2, [0, 1], score), frozenset({0}))
        forbidden = Knowledge(forbidden=frozenset({(0, 2)}))
        self.assertEqual(best_parents_given_prefix(2, [0, 1], score, forbidden), frozenset())


class TestBoss(unittest.TestCase):
    """Permutation search with the basis-function BIC."""

    def test_independent_columns_give_empty_graph(self):
        rng = np.random.default_rng(0)
        table = DataTable(variables_from_names(["A", "B", "C"]), [rng.normal(size=500) for _ in range(3)])
        e = embed_dataset(scale_columns(table), BasisSpec(3))
        self.assertEqual(boss_search(e, ScoreConfig(2.0)).num_edges, 0)

    def test_collider_is_oriented(self):
        truth = dag(3, [("A", "B"), ("C", "B")])
        _, e = embedded_sample(truth, 2000, seed=3, nonlinear=True)
        cpdag = boss_search(e, ScoreConfig(1.0), seed=1)
        self.assertEqual(cpdag, dag_to_cpdag(truth))

    def test_recovers_all_three_node_classes(self):
        for index, truth in enumerate(all_dags(3)):
            score = BasisFunctionBic(population_data(truth, seed=index), LINEAR)
            result = Boss(score, seed=index).run()
            self.assertEqual(result.cpdag, dag_to_cpdag(truth), msg=str(truth.directed_edges()))
            self.assertGreaterEqual(result.sweeps, 1)

    def test_recovers_all_four_node_classes(self):
        dags = all_dags(4)
        self.assertEqual(len(dags), 543)
        for index, truth in enumerate(dags):
            score = BasisFunctionBic(population_data(truth, seed=index), LINEAR)
            result = Boss(score, seed=index).run()
            self.assertEqual(result.cpdag, dag_to_cpdag(truth), msg=str(truth.directed_edges()))

    def test_escapes_complete_graph_plateau(self):
        # every order not starting with {A, B} induces a complete DAG of equal score
        truth = dag(4, [("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")])
        score = BasisFunctionBic(population_data(truth, seed=1), LINEAR)
        for seed in range(6):
            result = Boss(score, seed=seed).run()
            self.assertEqual(result.cpdag, dag_to_cpdag(truth), msg=f"seed {seed}")
            self.assertEqual(result.dag.num_edges, 5)

    def test_seed_does_not_change_large_sample_answer(self):
        truth = dag(4, [("A", "B"), ("C", "B"), ("B", "D")])
        score = BasisFunctionBic(population_data(truth, seed=5), LINEAR)
        results = {Boss(score, seed=seed).run().cpdag for seed in range(5)}
        self.assertEqual(results, {dag_to_cpdag(truth)})

    def test_column_order_invariance(self):
        truth = dag(4, [("A", "B"), ("C", "B"), ("B", "D")])
        table, e = embedded_sample(truth, 1000, seed=7, nonlinear=True)
        moved = embed_dataset(scale_columns(table.permuted([3, 1, 0, 2])), BasisSpec(3))
        first = boss_search(e, ScoreConfig(), seed=2)
        second = boss_search(moved, ScoreConfig(), seed=2)
        self.assertEqual(second.aligned_to(first.names), first)

    def test_knowledge_is_respected(self):
        truth = dag(3, [("A", "B"), ("B", "C")])
        score = BasisFunctionBic(population_data(truth, seed=1), LINEAR)
        knowledge = Knowledge.from_tiers([{2}, {1}, {0}])
        result = Boss(score, knowledge, seed=0).run()
        for source, target in result.dag.directed_edges():
            self.assertFalse(knowledge.is_forbidden(source, target))

    def test_sample_size_guard(self):
        e = population_data(dag(2, [("A", "B")]), num_rows=3)
        with self.assertRaises(ValueError):
            boss_search(e, LINEAR)

    def test_deadline(self):
        truth = dag(4, [("A", "B"), ("C", "B"), ("B", "D")])
        e = population_data(truth)
        with self.assertRaises(TimeoutExceededError):
            boss_search(e, LINEAR, deadline=Deadline(1e-9))


class TestBackwardEquivalenceSearch(unittest.TestCase):
    """Greedy deletions over equivalence classes."""

    def setUp(self):
        self.truth = dag(4, [("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")])
        self.score = BasisFunctionBic(population_data(self.truth, seed=2), LINEAR)
        self.complete = Graph.complete(self.truth.variables).copy(kind=GraphKind.CPDAG)

    def test_reduces_complete_graph_to_truth(self):
        reduced = backward_equivalence_search(self.complete, self.score)
        self.assertEqual(reduced, dag_to_cpdag(self.truth))
        self.assertEqual(self.complete.num_edges, 6)

    def test_keeps_true_class(self):
        start = dag_to_cpdag(self.truth)
        self.assertEqual(backward_equivalence_search(start, self.score), start)

    def test_required_edge_never_deleted(self):
        knowledge = Knowledge(required=frozenset({(0, 1)}))
        reduced = backward_equivalence_search(self.complete, self.score, knowledge)
        self.assertTrue(reduced.adjacent(0, 1))

    def test_deadline(self):
        with self.assertRaises(TimeoutExceededError):
            backward_equivalence_search(self.complete, self.score, deadline=Deadline(1e-9))


class TestPcMax(unittest.TestCase):
    """PC-Max with a d-separation oracle and with the LRT."""

    def test_chain_sepset(self):
        truth = dag(3, [("A", "B"), ("B", "C")])
        skeleton, sepsets = pcmax_skeleton(None, TestConfig(), test=DSeparationOracle(truth))
        self.assertEqual(skeleton.pairs(), {(0, 1), (1, 2)})
        self.assertEqual(sepsets.get(0, 2), ((1,), 1.0))
        self.assertIn((2, 0), sepsets)

    def test_collider_orientation(self):
        truth = dag(3, [("A", "B"), ("C", "B")])
        skeleton = graph(3, undirected=[("A", "B"), ("B", "C")])
        oriented = orient_colliders_maxp(skeleton, None, TestConfig(), test=DSeparationOracle(truth))
        self.assertTrue(oriented.is_parent("A", "B"))
        self.assertTrue(oriented.is_parent("C", "B"))

    def test_max_p_sepset_computed_once_per_pair(self):
        truth = dag(4, [("A", "B"), ("C", "B"), ("A", "D"), ("C", "D")])
        skeleton = graph(4, undirected=[("A", "B"), ("B", "C"), ("A", "D"), ("C", "D")])
        oracle = RecordingOracle(truth)
        oriented = orient_colliders_maxp(skeleton, None, TestConfig(), test=oracle)

        # A and C close two triples, each subset of {B, D} is tested once
        self.assertEqual(oracle.pair_calls[frozenset((0, 2))], 4)
        for parent in ("A", "C"):
            for child in ("B", "D"):
                self.assertTrue(oriented.is_parent(parent, child))

    def test_orient_colliders_needs_undirected_skeleton(self):
        truth = dag(3, [("A", "B"), ("C", "B")])
        with self.assertRaises(ValueError):
            orient_colliders_maxp(truth, None, TestConfig(), test=DSeparationOracle(truth))

    def test_oracle_all_four_node_dags(self):
        for truth in all_dags(4):
            found = pcmax_search(None, TestConfig(), test=DSeparationOracle(truth))
            self.assertEqual(found, dag_to_cpdag(truth), msg=str(truth.directed_edges()))

    def test_oracle_five_node_dags(self):
        dags = all_dags(5)
        if not SLOW_TESTS:
            dags = random.Random(0).sample(dags, 300)
        for truth in dags:
            found = pcmax_search(None, TestConfig(), test=DSeparationOracle(truth))
            self.assertEqual(found, dag_to_cpdag(truth), msg=str(truth.directed_edges()))

    def test_threads_match_serial(self):
        truth = dag(5, [("A", "B"), ("C", "B"), ("B", "D"), ("D", "E"), ("A", "E")])
        serial = pcmax_search(None, TestConfig(), test=DSeparationOracle(truth))
        threaded = pcmax_search(None, TestConfig(), test=DSeparationOracle(truth), workers=4)
        self.assertEqual(serial, threaded)

    def test_forbidden_adjacency_never_tested(self):
        truth = dag(3, [("A", "B"), ("B", "C")])
        oracle = RecordingOracle(truth)
        knowledge = Knowledge(forbidden=frozenset({(0, 1), (1, 0)}))
        found = pcmax_search(None, TestConfig(), knowledge, test=oracle)
        self.assertFalse(found.adjacent("A", "B"))
        self.assertNotIn(frozenset((0, 1)), oracle.pairs)

    def test_required_edge_kept_and_oriented(self):
        truth = dag(3, [("A", "B"), ("B", "C")])
        oracle = RecordingOracle(truth)
        knowledge = Knowledge(required=frozenset({(0, 2)}))
        found = pcmax_search(None, TestConfig(), knowledge, test=oracle)
        self.assertTrue(found.is_parent("A", "C"))
        self.assertEqual(found.num_edges, 3)
        self.assertNotIn(frozenset((0, 2)), oracle.pairs)

    def test_tier_knowledge_never_violated(self):
        truth = dag(4, [("A", "B"), ("B", "C"), ("D", "C")])
        knowledge = Knowledge.from_tiers([{0, 3}, {1}, {2}])
        found = pcmax_search(None, TestConfig(), knowledge, test=DSeparationOracle(truth))
        for source, target in found.directed_edges():
            self.assertFalse(knowledge.is_forbidden(source, target))

    def test_lrt_recovers_collider(self):
        truth = dag(3, [("A", "B"), ("C", "B")])
        _, e = embedded_sample(truth, 2000, seed=3, nonlinear=True)
        self.assertEqual(pcmax_search(e, TestConfig(0.001)), dag_to_cpdag(truth))

    def test_invalid_arguments(self):
        oracle = DSeparationOracle(dag(2, [("A", "B")]))
        with self.assertRaises(ValueError):
            PcMax(oracle, max_depth=-1)
        with self.assertRaises(ValueError):
            PcMax(oracle, workers=0)

    def test_deadline(self):
        truth = dag(4, [("A", "B"), ("C", "B"), ("B", "D")])
        with self.assertRaises(TimeoutExceededError):
            pcmax_search(None, TestConfig(), test=DSeparationOracle(truth), deadline=Deadline(1e-9))


if __name__ == "__main__":
    unittest.main()
