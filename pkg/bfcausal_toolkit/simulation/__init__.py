"""Ground-truthed data generation."""

from .graphs import random_dag
from .noise import NoiseSpec, sample_beta
from .cpn import CpnSpec, MlpNetwork, cpn_generate, softmax
from .additive import EDGE_FUNCTIONS, PNL_TRANSFORMS, additive_sem_generate
from .scenario import SimulationSpec, parse_sim_spec, simulate

__all__ = [
    'random_dag', 'NoiseSpec', 'sample_beta', 'CpnSpec', 'MlpNetwork', 'cpn_generate', 'softmax',
    'EDGE_FUNCTIONS', 'PNL_TRANSFORMS', 'additive_sem_generate',
    'SimulationSpec', 'parse_sim_spec', 'simulate',
]
