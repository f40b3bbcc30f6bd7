"""
Unit tests for the graph package: graph types, d-separation, CPDAGs,
Meek rules, knowledge and the text format.
"""

import os
import random
import tempfile
import unittest
from collections import defaultdict
from itertools import combinations

from bfcausal_toolkit.errors import (
    ConfigurationError,
    ConflictingOrientationError,
    CyclicGraphError,
    DuplicateTierMembershipError,
    InvalidEdgeError,
    ParseError,
    UnknownVariableError,
)
from bfcausal_toolkit.graph import (
    Edge,
    Graph,
    GraphKind,
    Knowledge,
    Mark,
    Variable,
    apply_meek_rules,
    d_separated,
    dag_to_cpdag,
    emit_graph,
    parse_graph,
    pdag_to_dag,
    read_graph,
    topological_order,
    unshielded_colliders,
    variables_from_names,
    write_graph,
)
from tests.fixtures import all_dags, dag, equivalence_key, graph, names


class TestGraphCore(unittest.TestCase):
    """Variables, edges and graph mutation."""

    def test_edge_rejects_self_loop(self):
        with self.assertRaises(InvalidEdgeError):
            Edge.directed(1, 1)

    def test_edge_rejects_arrow_arrow(self):
        with self.assertRaises(InvalidEdgeError):
            Edge(0, 1, Mark.ARROW, Mark.ARROW)

    def test_directed_edge_endpoints(self):
        edge = Edge.directed(2, 0)
        self.assertEqual(edge.source, 2)
        self.assertEqual(edge.target, 0)
        self.assertEqual(edge.pair, (0, 2))
        self.assertIs(edge.mark_at(0), Mark.ARROW)
        self.assertIs(edge.mark_at(2), Mark.TAIL)

    def test_categorical_variable_needs_categories(self):
        with self.assertRaises(ValueError):
            Variable.categorical(0, "X", 1)
        self.assertTrue(Variable.categorical(0, "X", 3).is_categorical)

    def test_cyclic_dag_rejected(self):
        with self.assertRaises(CyclicGraphError):
            dag(3, [("A", "B"), ("B", "C"), ("C", "A")])

    def test_duplicate_edge_rejected(self):
        g = dag(2, [("A", "B")])
        with self.assertRaises(InvalidEdgeError):
            g.add_directed("B", "A")

    def test_unknown_variable(self):
        g = dag(2, [("A", "B")])
        with self.assertRaises(UnknownVariableError):
            g.node_id("Z")

    def test_parents_children_neighbors(self):
        g = graph(4, directed=[("A", "B"), ("C", "B")], undirected=[("B", "D")])
        b = g.node_id("B")
        self.assertEqual(g.parents(b), {0, 2})
        self.assertEqual(g.children(0), {1})
        self.assertEqual(g.undirected_neighbors(b), {3})
        self.assertEqual(g.neighbors(b), {0, 2, 3})

    def test_relabeled_preserves_structure(self):
        g = dag(3, [("A", "B"), ("B", "C")])
        moved = g.relabeled([2, 0, 1])
        self.assertEqual(moved.names, ["C", "A", "B"])
        self.assertTrue(moved.is_parent("A", "B"))
        self.assertTrue(moved.is_parent("B", "C"))
        self.assertEqual(moved.aligned_to(g.names), g)

    def test_topological_order(self):
        g = dag(4, [("D", "A"), ("A", "B"), ("C", "B")])
        order = topological_order(g)
        position = {node: i for i, node in enumerate(order)}
        for source, target in g.directed_edges():
            self.assertLess(position[source], position[target])

    def test_topological_order_puts_parents_first(self):
        for g in all_dags(4):
            for key in (None, lambda node: -node):
                position = {node: i for i, node in enumerate(topological_order(g, key=key))}
                self.assertEqual(sorted(position), [0, 1, 2, 3])
                for source, target in g.directed_edges():
                    self.assertLess(position[source], position[target])

    def test_topological_order_key_breaks_ties(self):
        g = dag(3, [])
        self.assertEqual(topological_order(g), [0, 1, 2])
        self.assertEqual(topological_order(g, key=lambda node: -node), [2, 1, 0])


class TestDSeparation(unittest.TestCase):
    """d-separation queries on small DAGs."""

    def test_chain(self):
        g = dag(3, [("A", "B"), ("B", "C")])
        self.assertFalse(d_separated(g, 0, 2, []))
        self.assertTrue(d_separated(g, 0, 2, [1]))

    def test_fork(self):
        g = dag(3, [("B", "A"), ("B", "C")])
        self.assertFalse(d_separated(g, 0, 2, []))
        self.assertTrue(d_separated(g, 0, 2, [1]))

    def test_collider_and_descendant(self):
        g = dag(4, [("A", "B"), ("C", "B"), ("B", "D")])
        self.assertTrue(d_separated(g, 0, 2, []))
        self.assertFalse(d_separated(g, 0, 2, [1]))
        self.assertFalse(d_separated(g, 0, 2, [3]))

    def test_rejects_conditioning_on_endpoint(self):
        g = dag(2, [("A", "B")])
        with self.assertRaises(ValueError):
            d_separated(g, 0, 1, [0])

    @staticmethod
    def random_dag(n, seed):
        rng = random.Random(seed)
        order = list(range(n))
        rng.shuffle(order)
        edges = [Edge.directed(order[i], order[j])
                 for i, j in combinations(range(n), 2) if rng.random() < 0.5]
        return Graph(variables_from_names(names(n)), edges, GraphKind.DAG)

    @staticmethod
    def has_open_path(g, x, y, cond):
        """Enumerate simple paths and test each for blocking."""
        def descendants(node):
            found, stack = set(), [node]
            while stack:
                for child in g.children(stack.pop()):
                    if child not in found:
                        found.add(child)
                        stack.append(child)
            return found

        def open_path(path):
            for prev, mid, nxt in zip(path, path[1:], path[2:]):
                collider = g.is_parent(prev, mid) and g.is_parent(nxt, mid)
                if collider and not ({mid} | descendants(mid)) & cond:
                    return False
                if not collider and mid in cond:
                    return False
            return True

        def walk(path):
            if path[-1] == y:
                return open_path(path)
            return any(walk(path + [n]) for n in sorted(g.neighbors(path[-1])) if n not in path)

        return walk([x])

    def test_matches_path_enumeration(self):
        for seed in range(30):
            g = self.random_dag(5, seed)
            for x, y in combinations(range(5), 2):
                others = [n for n in range(5) if n not in (x, y)]
                for size in range(len(others) + 1):
                    for cond in combinations(others, size):
                        expected = not self.has_open_path(g, x, y, set(cond))
                        self.assertEqual(d_separated(g, x, y, cond), expected,
                                         msg=f"{g.directed_edges()} {x} {y} {cond}")

    def test_symmetric(self):
        for seed in range(10):
            g = self.random_dag(5, seed)
            for x, y in combinations(range(5), 2):
                for z in range(5):
                    cond = [] if z in (x, y) else [z]
                    self.assertEqual(d_separated(g, x, y, cond), d_separated(g, y, x, cond))


class TestCpdag(unittest.TestCase):
    """DAG to CPDAG conversion and Meek closure."""

    def test_chain_is_fully_undirected(self):
        cpdag = dag_to_cpdag(dag(3, [("A", "B"), ("B", "C")]))
        self.assertEqual(len(cpdag.undirected_edges()), 2)
        self.assertEqual(cpdag.directed_edges(), [])

    def test_collider_is_compelled(self):
        cpdag = dag_to_cpdag(dag(3, [("A", "B"), ("C", "B")]))
        self.assertTrue(cpdag.is_parent("A", "B"))
        self.assertTrue(cpdag.is_parent("C", "B"))

    def test_collider_propagates_downstream(self):
        cpdag = dag_to_cpdag(dag(4, [("A", "B"), ("C", "B"), ("B", "D")]))
        self.assertTrue(cpdag.is_parent("B", "D"))

    def test_all_four_node_dags(self):
        """CPDAG edges are directed exactly when every DAG in the class agrees."""
        classes = defaultdict(list)
        for g in all_dags(4):
            classes[equivalence_key(g)].append(g)
        self.assertEqual(sum(len(members) for members in classes.values()), 543)

        seen = {}
        for key, members in classes.items():
            cpdags = {dag_to_cpdag(member) for member in members}
            self.assertEqual(len(cpdags), 1)
            cpdag = cpdags.pop()
            self.assertNotIn(cpdag, seen.values())
            seen[key] = cpdag
            for a, b in cpdag.pairs():
                orientations = {m.is_parent(a, b) for m in members}
                self.assertEqual(cpdag.edge(a, b).is_directed, len(orientations) == 1)
            self.assertEqual(unshielded_colliders(cpdag), unshielded_colliders(members[0]))

    def test_meek_rule_one(self):
        g = graph(3, directed=[("A", "B")], undirected=[("B", "C")])
        closed = apply_meek_rules(g)
        self.assertTrue(closed.is_parent("B", "C"))

    def test_meek_rule_two(self):
        g = graph(3, directed=[("A", "B"), ("B", "C")], undirected=[("A", "C")])
        self.assertTrue(apply_meek_rules(g).is_parent("A", "C"))

    def test_meek_rule_three(self):
        g = graph(
            4,
            directed=[("B", "D"), ("C", "D")],
            undirected=[("A", "B"), ("A", "C"), ("A", "D")],
        )
        self.assertTrue(apply_meek_rules(g).is_parent("A", "D"))

    def test_meek_respects_forbidden(self):
        g = graph(3, directed=[("A", "B")], undirected=[("B", "C")])
        knowledge = Knowledge(forbidden=frozenset({(1, 2)}))
        self.assertTrue(apply_meek_rules(g, knowledge).is_undirected("B", "C"))

    def test_meek_conflict(self):
        g = graph(4, directed=[("A", "B"), ("D", "C")], undirected=[("B", "C")])
        with self.assertRaises(ConflictingOrientationError):
            apply_meek_rules(g)
        relaxed = apply_meek_rules(g, strict=False)
        self.assertTrue(relaxed.is_undirected("B", "C"))

    def test_meek_closure_is_idempotent(self):
        for g in all_dags(4):
            cpdag = dag_to_cpdag(g)
            self.assertEqual(apply_meek_rules(cpdag), cpdag)

    def test_extension_stays_in_class(self):
        for g in all_dags(4):
            extension = pdag_to_dag(dag_to_cpdag(g))
            self.assertIs(extension.kind, GraphKind.DAG)
            self.assertEqual(equivalence_key(extension), equivalence_key(g))

    def test_extension_keeps_directed_edges(self):
        g = graph(4, directed=[("A", "B"), ("C", "B")], undirected=[("B", "D")])
        extension = pdag_to_dag(g)
        self.assertEqual(set(extension.directed_edges()), {(0, 1), (2, 1), (1, 3)})

    def test_extension_impossible(self):
        # any orientation of the square creates a new collider or a cycle
        g = graph(4, undirected=[("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")])
        with self.assertRaises(CyclicGraphError):
            pdag_to_dag(g)

    def test_meek_does_not_modify_input(self):
        g = graph(3, directed=[("A", "B")], undirected=[("B", "C")])
        apply_meek_rules(g)
        self.assertTrue(g.is_undirected("B", "C"))


class TestKnowledge(unittest.TestCase):
    """Tiered background knowledge."""

    def test_tiers_forbid_backwards_edges(self):
        knowledge = Knowledge.from_tiers([{0}, {1, 2}, {3}])
        self.assertTrue(knowledge.is_forbidden(3, 0))
        self.assertTrue(knowledge.is_forbidden(1, 0))
        self.assertFalse(knowledge.is_forbidden(0, 3))
        self.assertFalse(knowledge.is_forbidden(1, 2))

    def test_forbidden_within_tier(self):
        knowledge = Knowledge(tiers=(frozenset({0, 1}), frozenset({2})), forbidden_within=frozenset({0}))
        self.assertTrue(knowledge.adjacency_forbidden(0, 1))

    def test_duplicate_membership(self):
        with self.assertRaises(DuplicateTierMembershipError):
            Knowledge.from_tiers([{0, 1}, {1}])

    def test_required_and_forbidden_clash(self):
        with self.assertRaises(ConfigurationError):
            Knowledge.from_tiers([{0}, {1}], required=[(1, 0)])

    def test_relabeled(self):
        knowledge = Knowledge.from_tiers([{0}, {1}])
        moved = knowledge.relabeled({0: 1, 1: 0})
        self.assertTrue(moved.is_forbidden(0, 1))


class TestGraphText(unittest.TestCase):
    """The plain-text graph format."""

    def test_emit_format(self):
        g = graph(3, directed=[("A", "B")], undirected=[("B", "C")])
        self.assertEqual(emit_graph(g), "Nodes: A,B,C\nA --> B\nB --- C\n")

    def test_round_trip(self):
        for g in [
            graph(4, directed=[("A", "B"), ("C", "B")], undirected=[("C", "D")]),
            dag(3, [("C", "A"), ("A", "B")]),
            Graph(variables_from_names(["x1", "x2"]), (), GraphKind.CPDAG),
        ]:
            parsed = parse_graph(emit_graph(g))
            self.assertEqual(parsed, g)

    def test_kind_inference(self):
        self.assertIs(parse_graph("Nodes: A,B\nA --> B\n").kind, GraphKind.DAG)
        self.assertIs(parse_graph("Nodes: A,B\nA --- B\n").kind, GraphKind.CPDAG)

    def test_parse_errors(self):
        with self.assertRaises(ParseError):
            parse_graph("A --> B\n")
        with self.assertRaises(ParseError):
            parse_graph("Nodes: A,B\nA <-> B\n")
        with self.assertRaises(ParseError):
            parse_graph("Nodes: A,B\nA --> Q\n")

    def test_file_round_trip(self):
        g = dag(3, [("A", "B"), ("A", "C")])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "nested", "graph.txt")
            write_graph(g, path)
            self.assertEqual(read_graph(path), g)


if __name__ == "__main__":
    unittest.main()
