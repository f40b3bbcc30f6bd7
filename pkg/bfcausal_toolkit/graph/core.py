"""Variables, edges and the mixed graph used as DAG, skeleton or CPDAG."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from ..errors import CyclicGraphError, InvalidEdgeError, UnknownVariableError


class VariableKind(Enum):
    CONTINUOUS = "continuous"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class Variable:
    """
    A measured variable.

    Parameters:
    -----------
    id : int
        Dense index 0..V-1, also the column position inside a DataTable
    name : str
        Display name, unique within a graph
    kind : VariableKind
        Continuous or categorical
    num_categories : int, optional
        Number of categories, required (>= 2) for categorical variables
    """

    id: int
    name: str
    kind: VariableKind = VariableKind.CONTINUOUS
    num_categories: Optional[int] = None

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"Variable id must be non-negative, got {self.id}")
        if self.kind is VariableKind.CATEGORICAL:
            if self.num_categories is None or self.num_categories < 2:
                raise ValueError(
                    f"Categorical variable {self.name!r} needs at least 2 categories"
                )
        elif self.num_categories is not None:
            raise ValueError(f"Continuous variable {self.name!r} cannot declare categories")

    @classmethod
    def continuous(cls, id, name):
        return cls(id, name)

    @classmethod
    def categorical(cls, id, name, num_categories):
        return cls(id, name, VariableKind.CATEGORICAL, num_categories)

    @property
    def is_categorical(self):
        return self.kind is VariableKind.CATEGORICAL

    def with_id(self, new_id):
        return Variable(new_id, self.name, self.kind, self.num_categories)


class Mark(Enum):
    TAIL = "-"
    ARROW = ">"


@dataclass(frozen=True)
class Edge:
    """
    Edge between ``a`` and ``b`` with an endpoint mark at each end.

    Tail-Arrow encodes a directed edge, Tail-Tail an undirected one.
    Arrow-Arrow (bidirected) is rejected.
    """

    a: int
    b: int
    mark_a: Mark = Mark.TAIL
    mark_b: Mark = Mark.ARROW

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidEdgeError(f"Self loop on variable {self.a} is not allowed")
        if self.mark_a is Mark.ARROW and self.mark_b is Mark.ARROW:
            raise InvalidEdgeError(f"Bidirected edge {self.a} <-> {self.b} is not supported")

    @classmethod
    def directed(cls, source, target):
        return cls(source, target, Mark.TAIL, Mark.ARROW)

    @classmethod
    def undirected(cls, a, b):
        lo, hi = min(a, b), max(a, b)
        return cls(lo, hi, Mark.TAIL, Mark.TAIL)

    @property
    def pair(self):
        """Unordered pair key ``(min, max)``."""
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)

    @property
    def is_directed(self):
        return self.mark_a is not self.mark_b

    @property
    def is_undirected(self):
        return self.mark_a is Mark.TAIL and self.mark_b is Mark.TAIL

    @property
    def source(self):
        if not self.is_directed:
            raise InvalidEdgeError("Undirected edge has no source")
        return self.a if self.mark_b is Mark.ARROW else self.b

    @property
    def target(self):
        if not self.is_directed:
            raise InvalidEdgeError("Undirected edge has no target")
        return self.b if self.mark_b is Mark.ARROW else self.a

    def mark_at(self, node):
        if node == self.a:
            return self.mark_a
        if node == self.b:
            return self.mark_b
        raise UnknownVariableError(f"Variable {node} is not an endpoint of {self}")

    def other(self, node):
        if node == self.a:
            return self.b
        if node == self.b:
            return self.a
        raise UnknownVariableError(f"Variable {node} is not an endpoint of {self}")

    def normalized(self):
        """Directed edges as source->target, undirected edges as (min, max)."""
        if self.is_directed:
            return Edge.directed(self.source, self.target)
        return Edge.undirected(self.a, self.b)


class GraphKind(Enum):
    DAG = "dag"
    CPDAG = "cpdag"
    SKELETON = "skeleton"


NodeRef = Union[int, str]


class Graph:
    """
    Node set with at most one marked edge per unordered pair.

    Queries are read-only. The mutators (``add_*``, ``remove_edge``,
    ``orient``) are meant for a locally owned copy inside a search step;
    use :meth:`copy` before changing a graph someone else holds.
    """

    def __init__(self, variables, edges=(), kind=GraphKind.CPDAG, validate=True):
        self._variables = tuple(variables)
        for position, variable in enumerate(self._variables):
            if variable.id != position:
                raise ValueError(
                    f"Variable ids must be dense 0..V-1 in order, found id {variable.id} "
                    f"at position {position}"
                )
        self._by_name = {}
        for variable in self._variables:
            if variable.name in self._by_name:
                raise ValueError(f"Duplicate variable name {variable.name!r}")
            self._by_name[variable.name] = variable.id
        self._edges: Dict[Tuple[int, int], Edge] = {}
        self._adjacent: List[Set[int]] = [set() for _ in self._variables]
        self.kind = GraphKind(kind)
        for edge in edges:
            self.add_edge(edge)
        if validate:
            self.validate()

    # construction helpers

    @classmethod
    def empty(cls, variables, kind=GraphKind.CPDAG):
        return cls(variables, (), kind)

    @classmethod
    def complete(cls, variables):
        variables = tuple(variables)
        edges = [
            Edge.undirected(i, j)
            for i in range(len(variables))
            for j in range(i + 1, len(variables))
        ]
        return cls(variables, edges, GraphKind.SKELETON)

    @classmethod
    def from_parents(cls, variables, parents):
        """Build a DAG from a mapping child -> iterable of parents."""
        edges = [Edge.directed(p, child) for child, ps in parents.items() for p in ps]
        return cls(variables, edges, GraphKind.DAG)

    def copy(self, kind=None):
        clone = Graph(self._variables, (), kind or self.kind, validate=False)
        clone._edges = dict(self._edges)
        clone._adjacent = [set(a) for a in self._adjacent]
        return clone

    # variables

    @property
    def variables(self):
        return self._variables

    @property
    def names(self):
        return [v.name for v in self._variables]

    @property
    def num_variables(self):
        return len(self._variables)

    def __len__(self):
        return len(self._variables)

    def node_id(self, ref: NodeRef) -> int:
        if isinstance(ref, str):
            if ref not in self._by_name:
                raise UnknownVariableError(f"Unknown variable {ref!r}")
            return self._by_name[ref]
        if not 0 <= ref < len(self._variables):
            raise UnknownVariableError(f"Unknown variable id {ref}")
        return ref

    def variable(self, ref: NodeRef) -> Variable:
        return self._variables[self.node_id(ref)]

    def name(self, node: int) -> str:
        return self._variables[self.node_id(node)].name

    # edges

    def add_edge(self, edge: Edge):
        self.node_id(edge.a)
        self.node_id(edge.b)
        if edge.pair in self._edges:
            raise InvalidEdgeError(
                f"Edge between {self.name(edge.a)} and {self.name(edge.b)} already exists"
            )
        self._edges[edge.pair] = edge.normalized()
        self._adjacent[edge.a].add(edge.b)
        self._adjacent[edge.b].add(edge.a)

    def add_directed(self, source, target):
        self.add_edge(Edge.directed(self.node_id(source), self.node_id(target)))

    def add_undirected(self, a, b):
        self.add_edge(Edge.undirected(self.node_id(a), self.node_id(b)))

    def remove_edge(self, a, b):
        a, b = self.node_id(a), self.node_id(b)
        pair = (min(a, b), max(a, b))
        if pair not in self._edges:
            raise InvalidEdgeError(f"No edge between {self.name(a)} and {self.name(b)}")
        del self._edges[pair]
        self._adjacent[a].discard(b)
        self._adjacent[b].discard(a)

    def orient(self, source, target):
        """Replace the existing edge between the two nodes by ``source -> target``."""
        source, target = self.node_id(source), self.node_id(target)
        pair = (min(source, target), max(source, target))
        if pair not in self._edges:
            raise InvalidEdgeError(
                f"No edge between {self.name(source)} and {self.name(target)} to orient"
            )
        self._edges[pair] = Edge.directed(source, target)

    def unorient(self, a, b):
        a, b = self.node_id(a), self.node_id(b)
        pair = (min(a, b), max(a, b))
        if pair not in self._edges:
            raise InvalidEdgeError(f"No edge between {self.name(a)} and {self.name(b)}")
        self._edges[pair] = Edge.undirected(a, b)

    def edge(self, a, b) -> Optional[Edge]:
        a, b = self.node_id(a), self.node_id(b)
        return self._edges.get((min(a, b), max(a, b)))

    def edges(self) -> List[Edge]:
        return [self._edges[pair] for pair in sorted(self._edges)]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges())

    @property
    def num_edges(self):
        return len(self._edges)

    def pairs(self):
        return set(self._edges)

    def adjacent(self, a, b) -> bool:
        return self.node_id(b) in self._adjacent[self.node_id(a)]

    def neighbors(self, node) -> Set[int]:
        return set(self._adjacent[self.node_id(node)])

    def is_parent(self, source, target) -> bool:
        """True if the graph contains ``source -> target``."""
        edge = self.edge(source, target)
        return edge is not None and edge.is_directed and edge.source == self.node_id(source)

    def is_undirected(self, a, b) -> bool:
        edge = self.edge(a, b)
        return edge is not None and edge.is_undirected

    def parents(self, node) -> Set[int]:
        node = self.node_id(node)
        return {n for n in self._adjacent[node] if self.is_parent(n, node)}

    def children(self, node) -> Set[int]:
        node = self.node_id(node)
        return {n for n in self._adjacent[node] if self.is_parent(node, n)}

    def undirected_neighbors(self, node) -> Set[int]:
        node = self.node_id(node)
        return {n for n in self._adjacent[node] if self.is_undirected(node, n)}

    def directed_edges(self) -> List[Tuple[int, int]]:
        return [(e.source, e.target) for e in self.edges() if e.is_directed]

    def undirected_edges(self) -> List[Tuple[int, int]]:
        return [e.pair for e in self.edges() if e.is_undirected]

    @property
    def is_fully_directed(self):
        return all(e.is_directed for e in self._edges.values())

    # derived views

    def to_networkx(self) -> nx.DiGraph:
        """Directed part of the graph as a networkx DiGraph over variable ids."""
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(len(self._variables)))
        digraph.add_edges_from(self.directed_edges())
        return digraph

    def has_directed_cycle(self) -> bool:
        return not nx.is_directed_acyclic_graph(self.to_networkx())

    def has_directed_path(self, source, target) -> bool:
        return nx.has_path(self.to_networkx(), self.node_id(source), self.node_id(target))

    def skeleton(self) -> "Graph":
        return Graph(
            self._variables,
            [Edge.undirected(a, b) for a, b in self._edges],
            GraphKind.SKELETON,
        )

    def validate(self):
        if self.kind is GraphKind.DAG:
            if not self.is_fully_directed:
                raise InvalidEdgeError("A DAG may only contain directed edges")
            if self.has_directed_cycle():
                raise CyclicGraphError("Graph declared as DAG contains a directed cycle")
        elif self.kind is GraphKind.CPDAG:
            if self.has_directed_cycle():
                raise CyclicGraphError("CPDAG contains a directed cycle among its directed edges")
        elif self.kind is GraphKind.SKELETON and self.directed_edges():
            raise InvalidEdgeError("A skeleton may only contain undirected edges")
        return self

    # comparison

    def same_variables(self, other: "Graph") -> bool:
        return self.names == other.names

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.names == other.names and self._edges == other._edges

    def __hash__(self):
        return hash((tuple(self.names), frozenset(self._edges.items())))

    def relabeled(self, order: Sequence[int]) -> "Graph":
        """
        Reorder variables so that new id ``i`` is old variable ``order[i]``.

        Edges follow their endpoints, names are preserved.
        """
        position = {old: new for new, old in enumerate(order)}
        variables = [self._variables[old].with_id(new) for new, old in enumerate(order)]
        edges = []
        for edge in self._edges.values():
            if edge.is_directed:
                edges.append(Edge.directed(position[edge.source], position[edge.target]))
            else:
                edges.append(Edge.undirected(position[edge.a], position[edge.b]))
        return Graph(variables, edges, self.kind, validate=False)

    def aligned_to(self, names: Iterable[str]) -> "Graph":
        """Relabel this graph so its variable order follows ``names``."""
        return self.relabeled([self.node_id(name) for name in names])

    def __repr__(self):
        return f"Graph(kind={self.kind.value}, variables={len(self)}, edges={self.num_edges})"


def variables_from_names(names):
    """Continuous variables with dense ids for the given names."""
    return [Variable.continuous(i, name) for i, name in enumerate(names)]
