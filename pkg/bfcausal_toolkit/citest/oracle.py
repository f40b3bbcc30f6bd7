"""d-separation oracle with the same interface as the statistical test."""

from typing import Iterable

from ..graph.algorithms import d_separated
from ..graph.core import Graph, GraphKind
from .lrt import TestResult


class DSeparationOracle:
    """
    Answers independence queries by d-separation in a known DAG.

    Independent queries report p = 1, dependent ones p = 0.
    """

    def __init__(self, dag: Graph, alpha: float = 0.01):
        if dag.kind is not GraphKind.DAG:
            raise ValueError("The oracle needs a DAG")
        self.dag = dag
        self.alpha = alpha
        self.calls = 0

    @property
    def variables(self):
        return self.dag.variables

    def __call__(self, x: int, y: int, z: Iterable[int]) -> TestResult:
        self.calls += 1
        if d_separated(self.dag, x, y, z):
            return TestResult(0.0, 1, 1.0, True)
        return TestResult(float("inf"), 1, 0.0, False)
