"""
Basis-function BIC.

Each variable's embedded block is scored column by column: column ``X_j`` is
regressed on all parent columns plus the child's own earlier columns
``X_1..X_{j-1}``, and the penalized Gaussian likelihoods are summed. All
regressions are solved from the shared covariance matrix.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..embedding.embedder import BasisSpec, EmbeddedData
from ..errors import ConfigurationError, SingularSystemError
from ..graph.algorithms import topological_order
from ..graph.core import Graph

logger = logging.getLogger(__name__)

MIN_VARIANCE = 1e-10
AUTO_RIDGE_FACTOR = 1e-8


@dataclass(frozen=True)
class ScoreConfig:
    """
    Parameters:
    -----------
    penalty_discount : float
        Multiplier c on the ``k ln N`` penalty, c > 0
    basis : BasisSpec
        Truncation limit used for embedding
    ridge : float
        Added to the predictor covariance diagonal before solving; 0 means
        plain solve with an automatic ridge only when that fails
    """

    penalty_discount: float = 1.0
    basis: BasisSpec = field(default_factory=BasisSpec)
    ridge: float = 0.0

    def __post_init__(self):
        if not self.penalty_discount > 0:
            raise ConfigurationError(f"Penalty discount must be positive, got {self.penalty_discount}")
        if self.ridge < 0:
            raise ConfigurationError(f"Ridge must be non-negative, got {self.ridge}")


class ScoreCache:
    """Local scores keyed by (child id, sorted parent ids)."""

    def __init__(self):
        self._scores: Dict[Tuple[int, Tuple[int, ...]], float] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(child: int, parents: Iterable[int]):
        return (child, tuple(sorted(parents)))

    def get(self, child, parents) -> Optional[float]:
        value = self._scores.get(self.key(child, parents))
        with self._lock:
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
        return value

    def put(self, child, parents, value: float):
        self._scores[self.key(child, parents)] = value

    def __len__(self):
        return len(self._scores)

    def clear(self):
        self._scores.clear()


def residual_variance(target: int, predictors: Sequence[int], e: EmbeddedData, ridge: float = 0.0) -> float:
    """
    ML residual variance of ``target`` regressed on ``predictors`` with intercept.

    sigma^2 = Var(X) - Cov(X,P) (Cov(P,P) + ridge I)^-1 Cov(P,X), clamped below
    at MIN_VARIANCE.

    Raises:
    -------
    SingularSystemError
        If the system cannot be solved even after the automatic ridge
    """
    predictors = list(predictors)
    if target in predictors:
        raise ValueError("Target column cannot be one of its own predictors")
    cov = e.covariance
    variance = cov[target, target]
    if not predictors:
        return max(float(variance), MIN_VARIANCE)

    system = cov[np.ix_(predictors, predictors)]
    rhs = cov[predictors, target]
    ridges = [ridge] if ridge > 0 else [0.0]
    if ridge == 0:
        ridges.append(AUTO_RIDGE_FACTOR * max(np.trace(system) / len(predictors), MIN_VARIANCE))

    for amount in ridges:
        try:
            factor = cho_factor(system + amount * np.eye(len(predictors)), lower=True, check_finite=False)
        except LinAlgError:
            logger.debug("Cholesky failed with ridge %g on %d predictors", amount, len(predictors))
            continue
        beta = cho_solve(factor, rhs, check_finite=False)
        return max(float(variance - rhs @ beta), MIN_VARIANCE)
    raise SingularSystemError(f"Cannot solve the regression on {len(predictors)} predictor columns")


def component_bic(target: int, predictors: Sequence[int], e: EmbeddedData, cfg: ScoreConfig, n: Optional[int] = None) -> float:
    """
    Penalized likelihood ``2L - c k ln N`` of one embedded column.

    L = -(N/2) log(2 pi sigma^2) + 1 and k = number of predictor columns.
    """
    n = e.num_rows if n is None else n
    k = len(predictors)
    if n < k + 2:
        raise ConfigurationError(f"Sample size {n} is too small for {k} predictor columns")
    sigma2 = residual_variance(target, predictors, e, cfg.ridge)
    likelihood = -(n / 2.0) * math.log(2.0 * math.pi * sigma2) + 1.0
    return 2.0 * likelihood - cfg.penalty_discount * k * math.log(n)


def local_bf_bic(child: int, parents: Iterable[int], e: EmbeddedData, cfg: ScoreConfig) -> float:
    """
    Local score of ``child`` given ``parents``.

    Parent blocks enter in name order so the score does not depend on how
    columns were laid out.

    Parameters:
    -----------
    child : int
        Child variable id
    parents : iterable of int
        Parent variable ids, not containing ``child``
    e : EmbeddedData
        Embedded data
    cfg : ScoreConfig
        Penalty and ridge

    Returns:
    --------
    float
        Sum of component scores over the child's columns
    """
    parents = sorted(set(parents), key=lambda v: e.variables[v].name)
    if child in parents:
        raise ValueError("A variable cannot be its own parent")
    predictors = e.columns_of(parents)
    total = 0.0
    for column in e.block(child):
        total += component_bic(column, predictors, e, cfg)
        predictors.append(column)
    return total


class BasisFunctionBic:
    """
    Cached local score over one embedded dataset.

    Instances are callables ``score(child, parents) -> float``, which is the
    interface the permutation search consumes.
    """

    def __init__(self, e: EmbeddedData, cfg: ScoreConfig = None, cache: ScoreCache = None):
        self.data = e
        self.config = cfg or ScoreConfig()
        self.cache = cache if cache is not None else ScoreCache()

    @property
    def variables(self):
        return self.data.variables

    def local_score(self, child: int, parents: Iterable[int]) -> float:
        parents = tuple(parents)
        cached = self.cache.get(child, parents)
        if cached is not None:
            return cached
        value = local_bf_bic(child, parents, self.data, self.config)
        self.cache.put(child, parents, value)
        return value

    __call__ = local_score

    def score_dag(self, g: Graph) -> float:
        return score_dag(g, self.data, self.config, self.cache)


def score_dag(g: Graph, e: EmbeddedData, cfg: ScoreConfig, cache: Optional[ScoreCache] = None) -> float:
    """
    Total score of a DAG, the sum of local scores of all variables.

    Raises:
    -------
    CyclicGraphError
        If ``g`` has a directed cycle
    """
    if g.names != e.names:
        g = g.aligned_to(e.names)
    order = topological_order(g)
    score = BasisFunctionBic(e, cfg, cache)
    return sum(score.local_score(v, g.parents(v)) for v in order)
