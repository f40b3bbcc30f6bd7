"""
Plain-text graph format.

    Nodes: X,Y,Z
    X --> Y
    Y --- Z

One ``Nodes:`` line lists every variable, then one line per edge. Directed
edges are written source first. Edges are emitted in (min id, max id) order
so that emit/parse round-trips exactly.
"""

import os

from ..errors import ParseError
from .core import Edge, Graph, GraphKind, variables_from_names

DIRECTED = "-->"
UNDIRECTED = "---"
NODES_PREFIX = "Nodes:"


def emit_graph(g: Graph) -> str:
    for name in g.names:
        if "," in name or name != name.strip() or not name:
            raise ParseError(f"Variable name {name!r} cannot be written in the graph format")
    lines = [f"{NODES_PREFIX} {','.join(g.names)}"]
    for edge in g.edges():
        if edge.is_directed:
            lines.append(f"{g.name(edge.source)} {DIRECTED} {g.name(edge.target)}")
        else:
            lines.append(f"{g.name(edge.a)} {UNDIRECTED} {g.name(edge.b)}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str, variables=None, kind=None) -> Graph:
    """
    Parse the text format back into a Graph.

    Parameters:
    -----------
    text : str
        Graph text
    variables : sequence of Variable, optional
        Variables to attach (kinds, categories); names must match the Nodes line
    kind : GraphKind, optional
        Kind hint. When omitted: CPDAG if any edge is undirected, else DAG.

    Returns:
    --------
    Graph
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or not lines[0].startswith(NODES_PREFIX):
        raise ParseError("Graph text must start with a 'Nodes:' line")
    node_field = lines[0][len(NODES_PREFIX):].strip()
    names = [name.strip() for name in node_field.split(",")] if node_field else []

    if variables is None:
        variables = variables_from_names(names)
    elif [v.name for v in variables] != names:
        raise ParseError("Nodes line does not match the supplied variables")

    graph = Graph(variables, (), GraphKind.SKELETON, validate=False)
    for number, line in enumerate(lines[1:], start=2):
        if f" {DIRECTED} " in line:
            left, right = line.split(f" {DIRECTED} ", 1)
            make = Edge.directed
        elif f" {UNDIRECTED} " in line:
            left, right = line.split(f" {UNDIRECTED} ", 1)
            make = Edge.undirected
        else:
            raise ParseError(f"Line {number}: cannot parse edge {line!r}")
        try:
            graph.add_edge(make(graph.node_id(left.strip()), graph.node_id(right.strip())))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"Line {number}: {exc}") from exc

    if kind is None:
        kind = GraphKind.CPDAG if graph.undirected_edges() else GraphKind.DAG
    graph.kind = GraphKind(kind)
    return graph.validate()


def write_graph(g: Graph, path):
    directory = os.path.dirname(str(path))
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(emit_graph(g))


def read_graph(path, variables=None, kind=None) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph(handle.read(), variables, kind)
