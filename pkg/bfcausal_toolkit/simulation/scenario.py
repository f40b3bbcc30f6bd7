"""Named simulation settings shared by the CLI and the benchmark grid."""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigurationError
from .additive import PNL_TRANSFORMS, additive_sem_generate
from .cpn import CpnSpec, cpn_generate
from .graphs import random_dag
from .noise import BETA, GAUSSIAN, NoiseSpec

CONTINUOUS = "continuous"
MIXED = "mixed"
MODELS = ("cpn", "additive")
DEFAULT_MIXED_PROB = 0.5

# --sim keys accepted by parse_sim_spec, with their field names
_KEYS = {
    "nodes": "nodes",
    "edges": "edges",
    "n": "samples",
    "samples": "samples",
    "type": "data_type",
    "mprob": "multinomial_prob",
    "model": "model",
    "noise": "noise",
    "pnl": "pnl",
    "shuffle": "shuffle_columns",
}


@dataclass(frozen=True)
class SimulationSpec:
    """
    Parameters:
    -----------
    nodes, edges : int
        Size of the random DAG
    samples : int
        Number of rows N
    data_type : str
        ``"continuous"`` or ``"mixed"``
    multinomial_prob : float, optional
        Probability of a multinomial node for mixed data
    model : str
        ``"cpn"`` or ``"additive"``
    noise : str
        ``"beta"`` (Beta(2,5)) or ``"gaussian"``
    pnl : str, optional
        Output transform for the additive model
    shuffle_columns : bool
        Randomize column order of the generated table
    """

    nodes: int = 10
    edges: int = 10
    samples: int = 1000
    data_type: str = CONTINUOUS
    multinomial_prob: Optional[float] = None
    model: str = "cpn"
    noise: str = BETA
    pnl: Optional[str] = None
    shuffle_columns: bool = True

    def __post_init__(self):
        if self.data_type not in (CONTINUOUS, MIXED):
            raise ConfigurationError(f"Data type must be continuous or mixed, got {self.data_type!r}")
        if self.model not in MODELS:
            raise ConfigurationError(f"Model must be one of {MODELS}, got {self.model!r}")
        if self.noise not in (BETA, GAUSSIAN):
            raise ConfigurationError(f"Noise must be beta or gaussian, got {self.noise!r}")
        if self.pnl is not None and self.pnl not in PNL_TRANSFORMS:
            raise ConfigurationError(f"Unknown transform {self.pnl!r}")
        if self.model == "additive" and self.data_type == MIXED:
            raise ConfigurationError("The additive model only generates continuous data")
        if self.nodes < 1 or self.samples < 1:
            raise ConfigurationError("nodes and samples must be positive")

    @property
    def mixing(self) -> float:
        if self.data_type == CONTINUOUS:
            return 0.0
        return DEFAULT_MIXED_PROB if self.multinomial_prob is None else self.multinomial_prob

    @property
    def label(self) -> str:
        """Nodes and average degree, e.g. ``10:2``."""
        degree = 2 * self.edges / self.nodes
        return f"{self.nodes}:{degree:g}"

    def to_dict(self):
        return asdict(self)


def _coerce(field_name: str, raw: str):
    if field_name in ("nodes", "edges", "samples"):
        return int(raw)
    if field_name == "multinomial_prob":
        return float(raw)
    if field_name == "shuffle_columns":
        return raw.lower() in ("1", "true", "yes")
    return raw


def parse_sim_spec(text: str) -> SimulationSpec:
    """
    Parse ``nodes=10,edges=20,n=1000,type=mixed,mprob=0.2``.

    Raises:
    -------
    ConfigurationError
        On unknown keys or malformed values
    """
    values = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        if "=" not in item:
            raise ConfigurationError(f"Expected key=value in --sim, got {item!r}")
        key, raw = (piece.strip() for piece in item.split("=", 1))
        if key not in _KEYS:
            raise ConfigurationError(f"Unknown --sim key {key!r}; known keys: {sorted(_KEYS)}")
        try:
            values[_KEYS[key]] = _coerce(_KEYS[key], raw)
        except ValueError as exc:
            raise ConfigurationError(f"Bad value for {key!r}: {raw!r}") from exc
    return SimulationSpec(**values)


def simulate(spec: SimulationSpec, seed: int = 0):
    """
    Draw a random DAG and data for it.

    Returns:
    --------
    tuple of (DataTable, Graph)
        Data and the true DAG
    """
    dag = random_dag(spec.nodes, spec.edges, seed)
    noise = NoiseSpec.gaussian() if spec.noise == GAUSSIAN else NoiseSpec.beta()
    if spec.model == "additive":
        table, dag = additive_sem_generate(dag, spec.samples, noise, spec.pnl, seed)
    else:
        cpn = CpnSpec(multinomial_prob=spec.mixing, noise=noise, seed=seed)
        table, dag = cpn_generate(dag, cpn, spec.samples)
    if spec.shuffle_columns:
        order = np.random.default_rng(seed).permutation(table.num_columns)
        table = table.permuted([int(i) for i in order])
    return table, dag
