"""Graph types, d-separation, CPDAG conversion, Meek rules and knowledge."""

from .core import Edge, Graph, GraphKind, Mark, Variable, VariableKind, variables_from_names
from .algorithms import d_separated, topological_order, unshielded_colliders, unshielded_triples
from .cpdag import apply_meek_rules, dag_to_cpdag, pdag_to_dag
from .knowledge import Knowledge
from .text import emit_graph, parse_graph, read_graph, write_graph

__all__ = [
    'Edge', 'Graph', 'GraphKind', 'Mark', 'Variable', 'VariableKind', 'variables_from_names',
    'd_separated', 'topological_order', 'unshielded_colliders', 'unshielded_triples',
    'apply_meek_rules', 'dag_to_cpdag', 'pdag_to_dag', 'Knowledge',
    'emit_graph', 'parse_graph', 'read_graph', 'write_graph',
]
