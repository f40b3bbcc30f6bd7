"""Immutable column store of mixed continuous/categorical observations."""

from typing import List, Sequence

import numpy as np
import pandas as pd

from ..errors import DegenerateCategoryError, UnknownVariableError
from ..graph.core import Variable


class DataTable:
    """
    Column store with one read-only numpy array per variable.

    Continuous columns are float64; categorical columns hold int64 codes
    ``0..c-1`` where ``c`` is the variable's ``num_categories``.

    Parameters:
    -----------
    variables : sequence of Variable
        Variables with dense ids matching column positions
    columns : sequence of array-like
        One column per variable, all of the same length N >= 1
    """

    def __init__(self, variables: Sequence[Variable], columns: Sequence):
        variables = tuple(variables)
        if len(variables) != len(columns):
            raise ValueError(f"{len(variables)} variables but {len(columns)} columns")
        for position, variable in enumerate(variables):
            if variable.id != position:
                raise ValueError(f"Variable {variable.name!r} has id {variable.id}, expected {position}")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("Variable names must be unique")

        stored = []
        num_rows = None
        for variable, values in zip(variables, columns):
            if variable.is_categorical:
                column = np.asarray(values)
                if column.size and not np.all(np.equal(np.mod(column, 1), 0)):
                    raise ValueError(f"Categorical column {variable.name!r} has non-integer codes")
                column = column.astype(np.int64)
                if column.size and (column.min() < 0 or column.max() >= variable.num_categories):
                    raise DegenerateCategoryError(
                        f"Codes of {variable.name!r} fall outside 0..{variable.num_categories - 1}"
                    )
            else:
                column = np.array(values, dtype=np.float64)
                if not np.all(np.isfinite(column)):
                    raise ValueError(f"Continuous column {variable.name!r} has non-finite values")
            if column.ndim != 1:
                raise ValueError(f"Column {variable.name!r} must be one-dimensional")
            if num_rows is None:
                num_rows = column.shape[0]
            elif column.shape[0] != num_rows:
                raise ValueError("All columns must have the same length")
            column = column.copy()
            column.setflags(write=False)
            stored.append(column)

        if not variables or not num_rows:
            raise ValueError("A DataTable needs at least one column and one row")
        self._variables = variables
        self._columns = tuple(stored)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def variables(self):
        return self._variables

    @property
    def names(self) -> List[str]:
        return [v.name for v in self._variables]

    @property
    def num_rows(self) -> int:
        return self._columns[0].shape[0]

    @property
    def num_columns(self) -> int:
        return len(self._columns)

    @property
    def shape(self):
        return (self.num_rows, self.num_columns)

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise UnknownVariableError(f"Unknown variable {name!r}")
        return self._index[name]

    def column(self, ref) -> np.ndarray:
        position = self.index_of(ref) if isinstance(ref, str) else ref
        if not 0 <= position < len(self._columns):
            raise UnknownVariableError(f"Unknown column {ref!r}")
        return self._columns[position]

    @property
    def columns(self):
        return self._columns

    def with_columns(self, columns) -> "DataTable":
        """Same variables, new values (used by scaling)."""
        return DataTable(self._variables, columns)

    def select(self, names: Sequence[str]) -> "DataTable":
        """Keep the named columns, in the given order, with ids renumbered."""
        positions = [self.index_of(name) for name in names]
        return self.permuted(positions)

    def drop(self, names: Sequence[str]) -> "DataTable":
        for name in names:
            self.index_of(name)
        excluded = set(names)
        return self.select([n for n in self.names if n not in excluded])

    def permuted(self, order: Sequence[int]) -> "DataTable":
        """New table whose column ``i`` is this table's column ``order[i]``."""
        variables = [self._variables[old].with_id(new) for new, old in enumerate(order)]
        return DataTable(variables, [self._columns[old] for old in order])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({v.name: col for v, col in zip(self._variables, self._columns)})

    def equals(self, other: "DataTable") -> bool:
        return (
            self._variables == other._variables
            and all(np.array_equal(a, b) for a, b in zip(self._columns, other._columns))
        )

    def __repr__(self):
        categorical = sum(v.is_categorical for v in self._variables)
        return (
            f"DataTable(rows={self.num_rows}, columns={self.num_columns}, "
            f"categorical={categorical})"
        )
