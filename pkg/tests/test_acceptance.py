"""
Long-running acceptance checks.

Set BFCAUSAL_SLOW_TESTS=1 to run them; faster versions of most properties
live in the per-module test files.
"""

import os
import time
import unittest

import numpy as np
from scipy import stats

from bfcausal_toolkit.citest import TestConfig, bf_lrt
from bfcausal_toolkit.embedding import BasisSpec, DataTable, embed_dataset, scale_columns
from bfcausal_toolkit.evaluation import compare_graphs
from bfcausal_toolkit.graph import Knowledge, topological_order, variables_from_names
from bfcausal_toolkit.runner import BOSS, PCMAX, RunConfig, search_table
from bfcausal_toolkit.simulation import SimulationSpec, simulate

SLOW_TESTS = os.environ.get("BFCAUSAL_SLOW_TESTS") == "1"


def config(algorithm, penalty=2.0, **kwargs):
    sim = SimulationSpec(nodes=3, edges=2, samples=10)
    if algorithm == BOSS:
        return RunConfig(algorithm=BOSS, penalty_discount=penalty, simulation=sim, **kwargs)
    return RunConfig(algorithm=PCMAX, alpha=0.01, simulation=sim, **kwargs)


@unittest.skipUnless(SLOW_TESTS, "set BFCAUSAL_SLOW_TESTS=1 to run")
class TestNullCalibration(unittest.TestCase):
    """The LRT holds its level on independent uniforms."""

    def test_rejection_rate_and_uniform_p_values(self):
        p_values = []
        for seed in range(500):
            rng = np.random.default_rng(10_000 + seed)
            table = DataTable(variables_from_names(["X", "Y"]),
                              [rng.uniform(size=2000), rng.uniform(size=2000)])
            e = embed_dataset(scale_columns(table), BasisSpec(3))
            p_values.append(bf_lrt(0, 1, [], e, TestConfig(0.05)).p_value)
        p_values = np.array(p_values)
        rate = np.mean(p_values <= 0.05)
        self.assertGreaterEqual(rate, 0.03)
        self.assertLessEqual(rate, 0.08)
        self.assertGreater(stats.kstest(p_values, "uniform").pvalue, 0.01)


@unittest.skipUnless(SLOW_TESTS, "set BFCAUSAL_SLOW_TESTS=1 to run")
class TestRecoveryBands(unittest.TestCase):
    """Seed-averaged BOSS accuracy on additive and CPN data."""

    SEEDS = range(1, 11)

    def mean_metrics(self, spec, penalty):
        reports = []
        for seed in self.SEEDS:
            table, truth = simulate(spec, seed=seed)
            found = search_table(table, config(BOSS, penalty=penalty, seed=seed))
            reports.append(compare_graphs(found, truth))
        return {
            name: float(np.mean([getattr(r, name) or 0.0 for r in reports]))
            for name in ("ap", "ar", "f1adj")
        }

    def test_additive_gaussian_band(self):
        spec = SimulationSpec(nodes=10, edges=10, samples=1000, model="additive", noise="gaussian")
        metrics = self.mean_metrics(spec, penalty=1.0)
        self.assertGreaterEqual(metrics["ap"], 0.90)
        self.assertGreaterEqual(metrics["ar"], 0.75)

    def test_cpn_best_cell_band(self):
        spec = SimulationSpec(nodes=10, edges=10, samples=1000)
        cells = {penalty: self.mean_metrics(spec, penalty) for penalty in (2.0, 4.0, 8.0)}
        best = max(cells.values(), key=lambda metrics: metrics["f1adj"])
        self.assertGreaterEqual(best["ap"], 0.80)
        self.assertGreaterEqual(best["f1adj"], 0.70)


@unittest.skipUnless(SLOW_TESTS, "set BFCAUSAL_SLOW_TESTS=1 to run")
class TestSearchProperties(unittest.TestCase):
    """Timing, tier knowledge and column order on simulated data."""

    def test_twenty_node_runs_finish_in_time(self):
        table, _ = simulate(SimulationSpec(nodes=20, edges=40, samples=1000), seed=1)
        for algorithm in (BOSS, PCMAX):
            start = time.perf_counter()
            search_table(table, config(algorithm))
            self.assertLess(time.perf_counter() - start, 180.0, msg=algorithm)

    def test_tiers_never_violated(self):
        table, truth = simulate(SimulationSpec(nodes=10, edges=12, samples=1000), seed=4)
        order = [truth.name(node) for node in topological_order(truth)]
        tiers = [order[0:3], order[3:6], order[6:8], order[8:10]]
        knowledge = Knowledge.from_tiers([{table.index_of(name) for name in tier} for tier in tiers])
        for algorithm in (BOSS, PCMAX):
            found = search_table(table, config(algorithm), knowledge)
            for source, target in found.directed_edges():
                self.assertFalse(knowledge.is_forbidden(source, target), msg=algorithm)

    def test_column_permutations_give_the_same_graph(self):
        table, _ = simulate(SimulationSpec(nodes=8, edges=8, samples=1000), seed=6)
        rng = np.random.default_rng(0)
        for algorithm in (BOSS, PCMAX):
            reference = search_table(table, config(algorithm))
            for _ in range(5):
                moved = table.permuted([int(i) for i in rng.permutation(table.num_columns)])
                found = search_table(moved, config(algorithm))
                self.assertEqual(found.aligned_to(reference.names), reference, msg=algorithm)


if __name__ == "__main__":
    unittest.main()
