"""
Graph comparison metrics.

Adjacency precision/recall (AP, AR) count unordered pairs. Arrowhead
precision/recall (AHP, AHR) count arrow endpoints; AHPC and AHRC restrict the
arrowhead counts to pairs adjacent in both graphs. A metric with a zero
denominator is undefined (None) and is left out of the F1 aggregates.
"""

import json
from dataclasses import asdict, dataclass
from statistics import harmonic_mean
from typing import Iterable, List, Optional, Set, Tuple

from ..errors import VariableMismatchError
from ..graph.core import Graph, GraphKind, Mark
from ..graph.cpdag import dag_to_cpdag

UNDEFINED = "—"

METRIC_NAMES = ("ap", "ar", "ahp", "ahr", "ahpc", "ahrc", "f1adj", "f1all", "shd", "elapsed")


@dataclass
class MetricsReport:
    ap: Optional[float] = None
    ar: Optional[float] = None
    ahp: Optional[float] = None
    ahr: Optional[float] = None
    ahpc: Optional[float] = None
    ahrc: Optional[float] = None
    f1adj: Optional[float] = None
    f1all: Optional[float] = None
    shd: int = 0
    elapsed: float = 0.0

    def to_dict(self):
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def format_row(self) -> List[str]:
        cells = []
        for name in METRIC_NAMES:
            value = getattr(self, name)
            if value is None:
                cells.append(UNDEFINED)
            elif name == "shd":
                cells.append(str(value))
            elif name == "elapsed":
                cells.append(f"{value:.2f}")
            else:
                cells.append(f"{value:.3f}")
        return cells


def format_table(reports: Iterable[MetricsReport], labels: Optional[Iterable[str]] = None) -> str:
    """Fixed-width table with one row per report."""
    reports = list(reports)
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(len(reports))]
    header = ["run"] + [name.upper() if name != "elapsed" else "Elapsed" for name in METRIC_NAMES]
    rows = [header] + [[label] + report.format_row() for label, report in zip(labels, reports)]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    return "\n".join(lines)


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None


def _f1(values) -> Optional[float]:
    defined = [v for v in values if v is not None]
    if not defined:
        return None
    if any(v == 0 for v in defined):
        return 0.0
    return harmonic_mean(defined)


def _arrowheads(g: Graph, pairs: Optional[Set[Tuple[int, int]]] = None) -> Set[Tuple[Tuple[int, int], int]]:
    heads = set()
    for edge in g.edges():
        if pairs is not None and edge.pair not in pairs:
            continue
        for node in edge.pair:
            if edge.mark_at(node) is Mark.ARROW:
                heads.add((edge.pair, node))
    return heads


def _aligned(estimated: Graph, truth: Graph) -> Graph:
    if sorted(estimated.names) != sorted(truth.names):
        raise VariableMismatchError("Estimated and true graphs have different variables")
    if truth.names != estimated.names:
        truth = truth.aligned_to(estimated.names)
    return truth


def _status(g: Graph, pair: Tuple[int, int]):
    edge = g.edge(*pair)
    if edge is None:
        return None
    if edge.is_undirected:
        return "---"
    return (edge.source, edge.target)


def shd(estimated: Graph, truth: Graph) -> int:
    """Number of variable pairs whose edge status differs."""
    truth = _aligned(estimated, truth)
    pairs = estimated.pairs() | truth.pairs()
    return sum(1 for pair in pairs if _status(estimated, pair) != _status(truth, pair))


def compare_graphs(estimated: Graph, truth: Graph, elapsed: float = 0.0) -> MetricsReport:
    """
    Compare an estimated graph with the truth.

    A DAG given as truth is compared through its CPDAG.

    Parameters:
    -----------
    estimated : Graph
        Search output
    truth : Graph
        True DAG or CPDAG over the same variable names
    elapsed : float
        Wall-clock seconds, copied into the report

    Returns:
    --------
    MetricsReport
    """
    truth = _aligned(estimated, truth)
    if truth.kind is GraphKind.DAG:
        truth = dag_to_cpdag(truth)

    est_pairs, true_pairs = estimated.pairs(), truth.pairs()
    common = est_pairs & true_pairs
    ap = _ratio(len(common), len(est_pairs))
    ar = _ratio(len(common), len(true_pairs))

    est_heads, true_heads = _arrowheads(estimated), _arrowheads(truth)
    ahp = _ratio(len(est_heads & true_heads), len(est_heads))
    ahr = _ratio(len(est_heads & true_heads), len(true_heads))

    est_common, true_common = _arrowheads(estimated, common), _arrowheads(truth, common)
    ahpc = _ratio(len(est_common & true_common), len(est_common))
    ahrc = _ratio(len(est_common & true_common), len(true_common))

    return MetricsReport(
        ap=ap, ar=ar, ahp=ahp, ahr=ahr, ahpc=ahpc, ahrc=ahrc,
        f1adj=_f1((ap, ar)) if ap is not None and ar is not None else None,
        f1all=_f1((ap, ar, ahp, ahr)),
        shd=shd(estimated, truth),
        elapsed=elapsed,
    )
