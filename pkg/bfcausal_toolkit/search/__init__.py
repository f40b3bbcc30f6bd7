"""Structure searches."""

from .boss import Boss, BossResult, backward_equivalence_search, best_parents_given_prefix, boss_search
from .deadline import Deadline
from .pcmax import PcMax, SepSetMap, orient_colliders_maxp, pcmax_search, pcmax_skeleton

__all__ = [
    'Boss', 'BossResult', 'backward_equivalence_search', 'best_parents_given_prefix', 'boss_search',
    'Deadline',
    'PcMax', 'SepSetMap', 'orient_colliders_maxp', 'pcmax_search', 'pcmax_skeleton',
]
