"""
Causal Perceptron Network.

Every node is driven by its own randomly initialised multilayer perceptron
taking the node's parents plus one noise input. Continuous nodes use the
single network output; multinomial nodes sample a category from the softmax
of their logits.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..embedding.table import DataTable
from ..graph.algorithms import topological_order
from ..graph.core import Graph, GraphKind, Variable
from .noise import NoiseSpec

logger = logging.getLogger(__name__)

MIN_CATEGORIES = 2
MAX_CATEGORIES = 5
CATEGORY_ATTEMPTS = 10


@dataclass(frozen=True)
class CpnSpec:
    """
    Parameters:
    -----------
    hidden_layers : int
        Number of hidden layers
    hidden_width : int
        Neurons per hidden layer
    input_scale : float
        Multiplier applied to every network input
    leaky_slope : float
        Negative-side slope of the leaky rectifier
    multinomial_prob : float
        Probability that a node is multinomial
    noise : NoiseSpec
        Distribution of the noise input
    seed : int
        Seed for network weights and noise
    """

    hidden_layers: int = 5
    hidden_width: int = 50
    input_scale: float = 5.0
    leaky_slope: float = 0.01
    multinomial_prob: float = 0.0
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    seed: int = 0

    def __post_init__(self):
        if self.hidden_layers < 1 or self.hidden_width < 1:
            raise ValueError("Hidden layers and width must be at least 1")
        if not 0 <= self.multinomial_prob <= 1:
            raise ValueError(f"multinomial_prob must lie in [0, 1], got {self.multinomial_prob}")


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    weights = np.exp(shifted)
    return weights / weights.sum(axis=-1, keepdims=True)


def sample_categories(logits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One category per row by inverse-CDF sampling of the softmax."""
    cumulative = np.cumsum(softmax(logits), axis=1)
    draws = rng.random((logits.shape[0], 1))
    codes = (draws > cumulative).sum(axis=1)
    return np.minimum(codes, logits.shape[1] - 1)


@dataclass
class MlpNetwork:
    """Random MLP with leaky-rectifier hidden layers and a linear output."""

    layers: List[Tuple[np.ndarray, np.ndarray]]
    leaky_slope: float = 0.01

    @classmethod
    def initialize(cls, input_width: int, output_width: int, spec: CpnSpec,
                   rng: np.random.Generator) -> "MlpNetwork":
        """Kaiming-normal weights, biases uniform in +-1/sqrt(fan_in)."""
        widths = [input_width] + [spec.hidden_width] * spec.hidden_layers + [output_width]
        gain = np.sqrt(2.0 / (1.0 + spec.leaky_slope ** 2))
        layers = []
        for fan_in, fan_out in zip(widths[:-1], widths[1:]):
            weights = rng.normal(0.0, gain / np.sqrt(fan_in), size=(fan_in, fan_out))
            bound = 1.0 / np.sqrt(fan_in)
            bias = rng.uniform(-bound, bound, size=fan_out)
            layers.append((weights, bias))
        return cls(layers, spec.leaky_slope)

    @property
    def input_width(self) -> int:
        return self.layers[0][0].shape[0]

    @property
    def output_width(self) -> int:
        return self.layers[-1][0].shape[1]

    def forward(self, inputs: np.ndarray) -> np.ndarray:
        hidden = inputs
        for weights, bias in self.layers[:-1]:
            hidden = hidden @ weights + bias
            hidden = np.where(hidden > 0, hidden, self.leaky_slope * hidden)
        weights, bias = self.layers[-1]
        return hidden @ weights + bias


def _standardized(column: np.ndarray) -> np.ndarray:
    spread = column.std()
    return (column - column.mean()) / spread if spread > 0 else column - column.mean()


def cpn_generate(g: Graph, spec: CpnSpec, n: int):
    """
    Simulate ``n`` rows from a CPN over the DAG ``g``.

    Continuous parents are standardized over the sample before input scaling,
    categorical parents enter as raw integer codes. Each node draws from its
    own seed stream so results do not depend on how many nodes precede it.

    Parameters:
    -----------
    g : Graph
        Ground-truth DAG
    spec : CpnSpec
        Network and noise settings
    n : int
        Number of rows

    Returns:
    --------
    tuple of (DataTable, Graph)
        Simulated data (variable kinds filled in) and the DAG with the same variables
    """
    if g.kind is not GraphKind.DAG:
        raise ValueError("cpn_generate needs a DAG")
    if n < 1:
        raise ValueError(f"Sample size must be at least 1, got {n}")
    order = topological_order(g)
    streams = np.random.SeedSequence(spec.seed).spawn(g.num_variables)
    values = {}
    variables = {}

    for node in order:
        rng = np.random.default_rng(streams[node])
        parents = sorted(g.parents(node))
        multinomial = rng.random() < spec.multinomial_prob
        inputs = [
            values[p] if variables[p].is_categorical else _standardized(values[p])
            for p in parents
        ]
        name = g.name(node)

        if not multinomial:
            noise = spec.noise.sample(rng, n)
            design = spec.input_scale * np.column_stack(inputs + [noise])
            network = MlpNetwork.initialize(design.shape[1], 1, spec, rng)
            values[node] = network.forward(design)[:, 0]
            variables[node] = Variable.continuous(node, name)
            continue

        num_categories = int(rng.integers(MIN_CATEGORIES, MAX_CATEGORIES + 1))
        for attempt in range(CATEGORY_ATTEMPTS):
            noise = spec.noise.sample(rng, n)
            design = spec.input_scale * np.column_stack(inputs + [noise])
            network = MlpNetwork.initialize(design.shape[1], num_categories, spec, rng)
            codes = sample_categories(network.forward(design), rng)
            observed = np.unique(codes)
            if observed.size >= MIN_CATEGORIES:
                break
            logger.debug("Node %s produced a single category, redrawing (attempt %d)", name, attempt + 1)
        if observed.size < MIN_CATEGORIES:
            logger.warning("Node %s stays continuous, its network never varied the category", name)
            values[node] = network.forward(design)[:, 0]
            variables[node] = Variable.continuous(node, name)
            continue
        # dense codes 0..c-1 over the categories that actually occur
        values[node] = np.searchsorted(observed, codes)
        variables[node] = Variable.categorical(node, name, int(observed.size))

    ordered = [variables[i] for i in range(g.num_variables)]
    table = DataTable(ordered, [values[i] for i in range(g.num_variables)])
    truth = Graph(ordered, g.edges(), GraphKind.DAG)
    return table, truth
