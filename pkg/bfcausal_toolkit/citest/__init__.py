"""Conditional independence tests."""

from .chi2 import chi_square_survival
from .lrt import BasisFunctionLrt, TestConfig, TestResult, bf_lrt
from .oracle import DSeparationOracle

__all__ = [
    'chi_square_survival', 'BasisFunctionLrt', 'TestConfig', 'TestResult', 'bf_lrt',
    'DSeparationOracle',
]
