"""Exception hierarchy for the toolkit.

Errors caused by invalid input also derive from ``ValueError`` so callers that
only catch ``ValueError`` keep working.
"""


class CausalToolkitError(Exception):
    """Root of every error raised by this package."""


# graph
class CyclicGraphError(CausalToolkitError, ValueError):
    """A graph that must be acyclic contains a directed cycle."""


class UnknownVariableError(CausalToolkitError, KeyError, ValueError):
    """A variable id or name is not part of the graph or dataset."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown variable"


class InvalidEdgeError(CausalToolkitError, ValueError):
    """Self loops, duplicate pairs and bidirected edges are rejected."""


class ConflictingOrientationError(CausalToolkitError):
    """Orientation rules forced both directions of one edge."""


# embedding
class NegativeIndexError(CausalToolkitError, ValueError):
    """Legendre index must be non-negative."""


class ConstantColumnError(CausalToolkitError, ValueError):
    """A continuous column has min == max and cannot be scaled."""


class DegenerateCategoryError(CausalToolkitError, ValueError):
    """A categorical column does not observe every declared category."""


class DegenerateVariableError(CausalToolkitError, ValueError):
    """A variable contributes no embedded columns."""


# scoring / testing
class SingularSystemError(CausalToolkitError, ArithmeticError):
    """A regression system stays singular after regularization."""


class InvalidDofError(CausalToolkitError, ValueError):
    """Chi-square degrees of freedom must be >= 1."""


# simulation
class TooManyEdgesError(CausalToolkitError, ValueError):
    """Requested more edges than a DAG on the given nodes can hold."""


class InvalidShapeError(CausalToolkitError, ValueError):
    """Distribution shape parameters must be positive."""


# evaluation
class VariableMismatchError(CausalToolkitError, ValueError):
    """Compared graphs are defined over different variables."""


# input files
class ParseError(CausalToolkitError, ValueError):
    """A data, graph or knowledge file could not be parsed."""


class RaggedRowsError(ParseError):
    """CSV rows have differing numbers of fields."""


class MissingValuesError(ParseError):
    """CSV contains empty cells."""


class DuplicateTierMembershipError(ParseError):
    """A variable is listed in more than one knowledge tier."""


# running
class ConfigurationError(CausalToolkitError, ValueError):
    """Inconsistent run or search configuration."""


class TimeoutExceededError(CausalToolkitError):
    """A search ran past its configured time limit."""
