"""
Basis-function likelihood-ratio test of conditional independence.

For every embedded column of X, the null regression uses the Z blocks and the
alternative adds the Y block. Per-column statistics ``N log(s0/s1)`` are
clamped at zero and summed; the p-value uses ``width(X) * width(Y)`` degrees
of freedom.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..embedding.embedder import BasisSpec, EmbeddedData
from ..errors import ConfigurationError, DegenerateVariableError
from ..scoring.bic import residual_variance
from .chi2 import chi_square_survival


@dataclass(frozen=True)
class TestConfig:
    """
    Parameters:
    -----------
    alpha : float
        Significance level, 0 < alpha < 1
    basis : BasisSpec
        Truncation limit used for embedding
    ridge : float
        Ridge added to predictor covariances
    """

    __test__ = False

    alpha: float = 0.01
    basis: BasisSpec = field(default_factory=BasisSpec)
    ridge: float = 0.0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigurationError(f"Alpha must lie in (0, 1), got {self.alpha}")
        if self.ridge < 0:
            raise ConfigurationError(f"Ridge must be non-negative, got {self.ridge}")


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    statistic: float
    dof: int
    p_value: float
    independent: bool


def bf_lrt(x: int, y: int, z: Iterable[int], e: EmbeddedData, cfg: TestConfig, n: Optional[int] = None) -> TestResult:
    """
    Test X independent of Y given Z.

    Parameters:
    -----------
    x, y : int
        Distinct variable ids
    z : iterable of int
        Conditioning variable ids, excluding x and y
    e : EmbeddedData
        Embedded data
    cfg : TestConfig
        Alpha and ridge
    n : int, optional
        Sample size, defaults to the embedded row count

    Returns:
    --------
    TestResult
    """
    z = sorted(set(z), key=lambda v: e.variables[v].name)
    if x == y:
        raise ValueError("bf_lrt needs two distinct variables")
    if x in z or y in z:
        raise ValueError("Tested variables may not be part of the conditioning set")
    n = e.num_rows if n is None else n
    x_columns, y_columns = list(e.block(x)), list(e.block(y))
    if not x_columns or not y_columns:
        raise DegenerateVariableError("Tested variables must have at least one embedded column")

    null_predictors = e.columns_of(z)
    alternative_predictors = null_predictors + y_columns
    statistic = 0.0
    for column in x_columns:
        null_var = residual_variance(column, null_predictors, e, cfg.ridge)
        alt_var = residual_variance(column, alternative_predictors, e, cfg.ridge)
        statistic += max(0.0, n * math.log(null_var / alt_var))

    dof = len(x_columns) * len(y_columns)
    p_value = chi_square_survival(statistic, dof)
    return TestResult(statistic, dof, p_value, p_value > cfg.alpha)


class BasisFunctionLrt:
    """
    Conditional independence test bound to one embedded dataset.

    Instances are callables ``test(x, y, z) -> TestResult``; PC-Max only uses
    this interface plus ``variables`` and ``alpha``.
    """

    def __init__(self, e: EmbeddedData, cfg: TestConfig = None):
        self.data = e
        self.config = cfg or TestConfig()

    @property
    def variables(self):
        return self.data.variables

    @property
    def alpha(self) -> float:
        return self.config.alpha

    def __call__(self, x: int, y: int, z: Iterable[int]) -> TestResult:
        return bf_lrt(x, y, z, self.data, self.config)
