"""
CSV and knowledge-file input, CSV output.

Knowledge files list numbered tiers, one per line, plus optional explicit
edges::

    # comment
    1 Region Day Month
    2 RH Rain Temperature Ws
    3* FFMC DMC DC
    4 Fire
    forbid FWI Rain
    require Temperature FFMC

A ``*`` after the tier number forbids edges between members of that tier.
"""

import logging
import os
import re
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from .embedding.table import DataTable
from .errors import (
    DuplicateTierMembershipError,
    MissingValuesError,
    ParseError,
    RaggedRowsError,
    UnknownVariableError,
)
from .graph.core import Variable
from .graph.knowledge import Knowledge

logger = logging.getLogger(__name__)

MAX_CATEGORICAL_LEVELS = 5
FLOAT_FORMAT = "%.17g"

_INTEGER = re.compile(r"^[+-]?\d+$")
_TIER = re.compile(r"^(\d+)(\*?)$")


def _column_variable(position: int, name: str, raw: pd.Series):
    cells = raw.str.strip()
    if cells.map(lambda cell: bool(_INTEGER.match(cell))).all():
        integers = cells.astype(np.int64)
        levels = np.unique(integers)
        if 2 <= levels.size <= MAX_CATEGORICAL_LEVELS:
            codes = np.searchsorted(levels, integers.to_numpy())
            return Variable.categorical(position, name, int(levels.size)), codes
        return Variable.continuous(position, name), integers.to_numpy(dtype=np.float64)
    try:
        values = pd.to_numeric(cells, errors="raise").to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"Column {name!r} contains non-numeric values") from exc
    return Variable.continuous(position, name), values


def load_csv(path) -> DataTable:
    """
    Read a comma-separated file with a header row.

    Integer columns with at most five distinct levels become categorical
    (levels recoded to 0..c-1 in sorted order); every other numeric column is
    continuous.

    Raises:
    -------
    RaggedRowsError
        If a row has a different number of fields than the header
    MissingValuesError
        If a cell is empty
    ParseError
        For missing files, empty files or non-numeric cells
    """
    if not os.path.exists(path):
        raise ParseError(f"Data file not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, na_filter=False,
                            skipinitialspace=True, encoding="utf-8")
    except pd.errors.EmptyDataError as exc:
        raise ParseError(f"{path} is empty") from exc
    except pd.errors.ParserError as exc:
        raise RaggedRowsError(f"{path}: {exc}") from exc

    if frame.empty:
        raise ParseError(f"{path} has a header but no rows")
    if frame.isna().any().any():
        row = int(frame.isna().any(axis=1).to_numpy().argmax()) + 2
        raise RaggedRowsError(f"{path}: line {row} has fewer fields than the header")
    blank = frame.apply(lambda column: column.str.strip() == "")
    if blank.any().any():
        row = int(blank.any(axis=1).to_numpy().argmax()) + 2
        raise MissingValuesError(f"{path}: line {row} has an empty cell")

    variables, columns = [], []
    for position, name in enumerate(frame.columns):
        variable, values = _column_variable(position, str(name).strip(), frame[name])
        variables.append(variable)
        columns.append(values)
    table = DataTable(variables, columns)
    logger.info("Loaded %s: %d rows, %d columns", path, table.num_rows, table.num_columns)
    return table


def write_csv(table: DataTable, path):
    """Write a table with categorical codes as integers and floats to 17 significant digits."""
    directory = os.path.dirname(str(path))
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    table.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def parse_knowledge_text(text: str, names: Sequence[str], ignore: Sequence[str] = ()) -> Knowledge:
    ignored = set(ignore)
    index: Dict[str, int] = {name: i for i, name in enumerate(names)}

    def lookup(name, number):
        if name in ignored:
            return None
        if name not in index:
            raise UnknownVariableError(f"Line {number}: unknown variable {name!r}")
        return index[name]

    tiers: Dict[int, List[int]] = {}
    within = set()
    forbidden, required = set(), set()
    owner: Dict[int, int] = {}

    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        keyword = head.lower()
        if keyword in ("forbid", "require"):
            if len(rest) != 2:
                raise ParseError(f"Line {number}: expected '{keyword} A B'")
            pair = (lookup(rest[0], number), lookup(rest[1], number))
            if None in pair:
                continue
            (forbidden if keyword == "forbid" else required).add(pair)
            continue
        match = _TIER.match(head)
        if not match:
            raise ParseError(f"Line {number}: cannot parse {line!r}")
        tier = int(match.group(1))
        if match.group(2):
            within.add(tier)
        for name in rest:
            node = lookup(name, number)
            if node is None:
                continue
            if node in owner and owner[node] != tier:
                raise DuplicateTierMembershipError(
                    f"Line {number}: {name!r} is already in tier {owner[node]}"
                )
            owner[node] = tier
            members = tiers.setdefault(tier, [])
            if node not in members:
                members.append(node)

    numbers = sorted(tiers)
    return Knowledge(
        tuple(frozenset(tiers[n]) for n in numbers),
        frozenset(forbidden),
        frozenset(required),
        frozenset(numbers.index(n) for n in within if n in tiers),
    )


def parse_knowledge(path, names: Sequence[str], ignore: Sequence[str] = ()) -> Knowledge:
    """
    Read a knowledge file against the given variable names.

    Names listed in ``ignore`` (variables excluded from the analysis) are
    skipped wherever they appear.

    Raises:
    -------
    UnknownVariableError
        If the file names a variable not in ``names``
    DuplicateTierMembershipError
        If a variable is listed in two tiers
    """
    if not os.path.exists(path):
        raise ParseError(f"Knowledge file not found: {path}")
    with open(path, "r", encoding="utf-8") as handle:
        return parse_knowledge_text(handle.read(), names, ignore)
