"""
Basis-function embedding of a mixed dataset.

Continuous variables become blocks of Legendre columns ``P_1..P_p`` of the
scaled values. Categorical variables become ``c - 1`` indicator columns, one
per category except the highest code. The covariance and means over all
embedded columns are computed once and shared by every score and test.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from ..errors import ConstantColumnError, DegenerateCategoryError
from .legendre import legendre_basis
from .table import DataTable

logger = logging.getLogger(__name__)

SCALE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BasisSpec:
    """Number of Legendre terms kept per continuous variable."""

    truncation_limit: int = 3

    def __post_init__(self):
        if int(self.truncation_limit) != self.truncation_limit or self.truncation_limit < 1:
            raise ValueError(f"Truncation limit must be an integer >= 1, got {self.truncation_limit}")


def scale_columns(t: DataTable) -> DataTable:
    """
    Map every continuous column affinely onto [-1, 1] (min to -1, max to +1).

    Categorical columns are returned untouched.

    Raises:
    -------
    ConstantColumnError
        If a continuous column has min == max
    """
    scaled = []
    for variable, column in zip(t.variables, t.columns):
        if variable.is_categorical:
            scaled.append(column)
            continue
        low, high = column.min(), column.max()
        if not high > low:
            raise ConstantColumnError(f"Continuous column {variable.name!r} is constant")
        values = 2.0 * (column - low) / (high - low) - 1.0
        # exact endpoints regardless of rounding in the affine map
        values[column == low] = -1.0
        values[column == high] = 1.0
        scaled.append(values)
    return t.with_columns(scaled)


@dataclass(frozen=True)
class EmbeddedData:
    """
    Embedded design matrix with its covariance.

    Parameters:
    -----------
    variables : tuple of Variable
        Source variables, ids match ``blocks`` keys
    blocks : dict
        Variable id -> ``range`` of column indices in ``matrix``
    matrix : numpy.ndarray
        N x M design matrix (may be empty when built from a covariance)
    covariance : numpy.ndarray
        M x M covariance with denominator N
    column_means : numpy.ndarray
        Length-M vector of column means
    num_rows : int
        Sample size N
    """

    variables: tuple
    blocks: Dict[int, range]
    matrix: np.ndarray = field(repr=False)
    covariance: np.ndarray = field(repr=False)
    column_means: np.ndarray = field(repr=False)
    num_rows: int = 0

    @classmethod
    def from_covariance(cls, variables, covariance, num_rows: int) -> "EmbeddedData":
        """
        Wrap a covariance matrix with one column per variable.

        Used to score population covariances and pre-computed summaries.
        """
        covariance = np.array(covariance, dtype=np.float64)
        size = len(variables)
        if covariance.shape != (size, size):
            raise ValueError(f"Covariance must be {size}x{size}, got {covariance.shape}")
        if not np.array_equal(covariance, covariance.T):
            raise ValueError("Covariance must be symmetric")
        covariance.setflags(write=False)
        means = np.zeros(size)
        means.setflags(write=False)
        matrix = np.empty((0, size))
        matrix.setflags(write=False)
        blocks = {v.id: range(v.id, v.id + 1) for v in variables}
        return cls(tuple(variables), blocks, matrix, covariance, means, int(num_rows))

    @property
    def num_columns(self) -> int:
        return self.covariance.shape[0]

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def block(self, variable: int) -> range:
        return self.blocks[variable]

    def width(self, variable: int) -> int:
        return len(self.blocks[variable])

    def columns_of(self, variables: Sequence[int]) -> List[int]:
        """Concatenated block columns of ``variables`` in the order given."""
        columns = []
        for variable in variables:
            columns.extend(self.blocks[variable])
        return columns

    def canonical_order(self) -> List[int]:
        """Variable ids sorted by name, independent of column order."""
        return sorted(range(len(self.variables)), key=lambda i: self.variables[i].name)

    @property
    def max_block_width(self) -> int:
        return max(len(block) for block in self.blocks.values())


def _indicator_block(name: str, codes: np.ndarray, num_categories: int) -> np.ndarray:
    observed = np.unique(codes)
    if observed.size < 2 or observed.size != num_categories:
        missing = sorted(set(range(num_categories)) - set(observed.tolist()))
        raise DegenerateCategoryError(
            f"Categorical variable {name!r} does not observe categories {missing}"
        )
    return np.stack(
        [(codes == category).astype(np.float64) for category in range(num_categories - 1)],
        axis=1,
    )


def _covariance(centered: np.ndarray) -> np.ndarray:
    # pairwise dot products so an entry only depends on its two columns
    n, m = centered.shape
    columns = [np.ascontiguousarray(centered[:, j]) for j in range(m)]
    cov = np.empty((m, m), dtype=np.float64)
    for i in range(m):
        for j in range(i, m):
            cov[i, j] = np.dot(columns[i], columns[j]) / n
            cov[j, i] = cov[i, j]
    return cov


def embed_dataset(t: DataTable, spec: BasisSpec = BasisSpec()) -> EmbeddedData:
    """
    Embed a scaled DataTable.

    Parameters:
    -----------
    t : DataTable
        Table whose continuous columns already lie in [-1, 1]
    spec : BasisSpec
        Truncation limit p

    Returns:
    --------
    EmbeddedData
    """
    blocks: Dict[int, range] = {}
    pieces = []
    start = 0
    for variable, column in zip(t.variables, t.columns):
        if variable.is_categorical:
            piece = _indicator_block(variable.name, column, variable.num_categories)
        else:
            low, high = column.min(), column.max()
            if not high > low:
                raise ConstantColumnError(f"Continuous column {variable.name!r} is constant")
            if low < -1.0 - SCALE_TOLERANCE or high > 1.0 + SCALE_TOLERANCE:
                raise ValueError(
                    f"Column {variable.name!r} is outside [-1, 1]; call scale_columns first"
                )
            piece = legendre_basis(column, spec.truncation_limit)
        blocks[variable.id] = range(start, start + piece.shape[1])
        start += piece.shape[1]
        pieces.append(piece)

    matrix = np.hstack(pieces)
    means = matrix.mean(axis=0)
    covariance = _covariance(matrix - means)
    for array in (matrix, means, covariance):
        array.setflags(write=False)

    logger.debug(
        "Embedded %d variables into %d columns (p=%d, N=%d)",
        t.num_columns, matrix.shape[1], spec.truncation_limit, t.num_rows,
    )
    return EmbeddedData(tuple(t.variables), blocks, matrix, covariance, means, t.num_rows)
